#pragma once

#include "myosched/heuristics.hpp"
#include "myosched/resources.hpp"
#include "myosched/workload.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace myosched {

/// Size K of the feasibility-check window. Unbounded names the Original
/// algorithm, which looks at every remaining task.
class WindowSize {
public:
	static WindowSize unbounded() noexcept { return WindowSize(); }
	/// Throws ConfigError for k == 0.
	static WindowSize of(std::size_t k);
	/// "unbounded" or a positive integer.
	static WindowSize parse(const std::string& text);

	bool is_unbounded() const noexcept { return !k_; }
	/// Only meaningful when bounded.
	std::size_t k() const noexcept { return k_.value_or(0); }
	/// N_K = min(k, n_remaining).
	std::size_t considered(std::size_t n_remaining) const noexcept
	{
		return k_ ? std::min(*k_, n_remaining) : n_remaining;
	}
	std::string to_string() const;

	friend bool operator==(const WindowSize&, const WindowSize&) = default;

private:
	WindowSize() = default;
	std::optional<std::size_t> k_;
};

struct ScheduledEntry {
	int task_id = 0;
	Time start = 0;
	Time finish = 0;

	friend bool operator==(const ScheduledEntry&, const ScheduledEntry&) = default;
};

struct BuildCounters {
	std::size_t h_evals = 0;
	std::size_t feas_checks = 0;
	std::size_t backtracks_used = 0;

	friend bool operator==(const BuildCounters&, const BuildCounters&) = default;
};

/// A tentative (task, start) placement used for speculative feasibility tests.
struct Placement {
	int task_id = 0;
	Time start = 0;
};

/// Incremental schedule construction state: the committed partial schedule,
/// the deadline-sorted remaining set and the availability after the prefix.
class SchedulerState {
public:
	SchedulerState(const TaskSet& ts, WindowSize k);

	const TaskSet& tasks() const noexcept { return *ts_; }
	const std::vector<ScheduledEntry>& partial() const noexcept { return partial_; }
	/// Ids sorted by (t_deadline, id).
	const std::vector<int>& remaining() const noexcept { return remaining_; }
	const AvailabilityTable& avail() const noexcept { return avail_.back(); }
	WindowSize k() const noexcept { return k_; }

	BuildCounters counters;

	/// Appends `p` to the partial schedule. `p.start` must not precede the
	/// task's earliest start.
	void commit(const Placement& p);
	/// Undoes the most recent commit and returns its task id.
	int undo();

private:
	const TaskSet* ts_;
	WindowSize k_;
	std::vector<ScheduledEntry> partial_;
	std::vector<int> remaining_;
	std::vector<AvailabilityTable> avail_; // one per prefix length
};

/// First N_K ids of the remaining set. Throws UsageError when it is empty.
std::vector<int> window(const SchedulerState& state);

/// Speculatively places `after` (if given), then checks that the placed task
/// and every task of the resulting window can each still finish by its
/// deadline when started at its earliest start. Leaves the schedule untouched;
/// only state.counters.feas_checks moves, by one per window task tested.
bool strongly_feasible(SchedulerState& state, std::optional<Placement> after);

enum class OnInfeasible { Abort, Backtrack };

struct BuildConfig {
	HeuristicSpec spec;
	WindowSize k = WindowSize::unbounded();
	std::size_t max_backtracks = 0;
	OnInfeasible on_infeasible = OnInfeasible::Abort;

	/// Backtracking with the default budget of 10 * n.
	static BuildConfig with_backtracking(HeuristicSpec spec, WindowSize k, std::size_t n);
	void validate() const;
};

struct BuildResult {
	bool feasible = false;
	/// Full schedule when feasible; the committed prefix at failure otherwise.
	std::vector<ScheduledEntry> schedule;
	BuildCounters counters;

	std::size_t partial_len() const noexcept { return schedule.size(); }

	friend bool operator==(const BuildResult&, const BuildResult&) = default;
};

/// Original (unbounded window) or Myopic heuristic schedule construction
/// with strong-feasibility checks and chronological backtracking.
BuildResult build(const TaskSet& ts, const BuildConfig& cfg);

inline constexpr const char* kScheduleHeader = "# myosched-schedule v1";

/// `task_id,start,finish,t_deadline` rows plus a counters trailer.
void write_schedule_csv(std::ostream& out, const TaskSet& ts, const BuildResult& result);

} // namespace myosched
