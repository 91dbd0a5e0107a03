#pragma once

#include "myosched/heuristics.hpp"
#include "myosched/workload.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace myosched {

/// Scheduling cost charged to the simulated clock per decision:
/// c0 + c1 * N_K, where N_K is the number of window candidates.
struct OverheadModel {
	Time c0 = 1;
	Time c1 = 1;

	Time cost(std::size_t n_k) const noexcept { return c0 + c1 * static_cast<Time>(n_k); }
	void validate() const;

	friend bool operator==(const OverheadModel&, const OverheadModel&) = default;
};

struct SimConfig {
	HeuristicSpec spec;
	std::size_t k = 6;
	OverheadModel overhead;
	std::optional<Time> horizon;

	void validate() const;
};

enum class EventKind { Arrive, Decide, Dispatch, Finish, Discard };

std::string to_string(EventKind kind);
EventKind parse_event_kind(const std::string& name);

/// One trace record. Decide events carry no task (task_id = -1) but record the
/// window size charged for and the overhead paid.
struct TraceEvent {
	Time t = 0;
	EventKind kind = EventKind::Arrive;
	int task_id = -1;
	std::size_t n_k = 0;
	Time cost = 0;

	friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SimOutcome {
	std::size_t completed = 0;
	std::size_t discarded = 0;
	Time makespan = 0;
	Time overhead_total = 0;
	bool truncated = false; ///< stopped at the horizon before draining
	std::vector<TraceEvent> trace;

	friend bool operator==(const SimOutcome&, const SimOutcome&) = default;
};

/// Online non-preemptive execution on one CPU. The scheduler runs whenever
/// the CPU is free; hopeless pending tasks are discarded at each decision.
SimOutcome simulate(const TaskSet& ts, const SimConfig& cfg);

struct Validation {
	bool ok = true;
	std::string violation; ///< first violation found, empty when ok

	explicit operator bool() const noexcept { return ok; }
};

/// Re-walks the trace against the task set: timing and ordering, non-overlap,
/// non-preemption, discard legality and the summary counters.
Validation replay_validate(const TaskSet& ts, const SimOutcome& outcome);

/// JSON lines: one `{t, kind, task_id, ...}` object per event, then a
/// `{"kind":"summary", ...}` object.
void write_trace_jsonl(std::ostream& out, const SimOutcome& outcome);
/// Throws ParseError with the offending line.
SimOutcome read_trace_jsonl(std::istream& in);

/// `completed=.. discarded=.. makespan=.. overhead_total=.. truncated=..`
std::string summary_line(const SimOutcome& outcome);

} // namespace myosched
