#pragma once

#include "myosched/rational.hpp"
#include "myosched/task.hpp"

#include <span>
#include <string>
#include <string_view>

namespace myosched {

/// The six priority functions. The scheduler always extends the schedule
/// with the candidate of smallest value.
enum class HeuristicKind {
	MinDeadline,              ///< t_deadline
	MinProc,                  ///< t_proc
	MinEst,                   ///< est
	MinLaxity,                ///< t_deadline - est - t_proc
	DeadlinePlusWeightedProc, ///< t_deadline + w * t_proc
	DeadlinePlusWeightedEst,  ///< t_deadline + w * est
};

bool is_weighted(HeuristicKind kind) noexcept;

class HeuristicSpec {
public:
	HeuristicSpec() = default;
	/// Weight is forced to 0 for the unweighted kinds; negative weights throw ConfigError.
	HeuristicSpec(HeuristicKind kind, Rational w = Rational(0));

	HeuristicKind kind() const noexcept { return kind_; }
	const Rational& w() const noexcept { return w_; }

	/// `min_d | min_p | min_est | min_laxity | d+w*p:<w> | d+w*est:<w>`
	static HeuristicSpec parse(std::string_view text);
	std::string to_string() const;

	friend bool operator==(const HeuristicSpec&, const HeuristicSpec&) = default;

private:
	HeuristicKind kind_ = HeuristicKind::DeadlinePlusWeightedEst;
	Rational w_{1, 2};
};

/// "d+w*est", "min_d", ... without the weight suffix.
std::string kind_name(HeuristicKind kind);
HeuristicKind parse_kind(std::string_view name);

struct HeuristicValue {
	Rational h;
	int task_id = 0;
	Time est_used = 0;
};

/// Exact H for `task` started at `est`. Requires est >= t_gen.
HeuristicValue eval_h(const Task& task, Time est, const HeuristicSpec& spec);

struct Candidate {
	const Task* task = nullptr;
	Time est = 0;
};

/// Index into `candidates` of the smallest H; ties go to the earlier deadline,
/// then the smaller id. Throws UsageError on an empty list.
std::size_t argmin_index(std::span<const Candidate> candidates, const HeuristicSpec& spec);

/// Task id of the smallest-H candidate (same ordering as argmin_index).
int argmin_h(std::span<const Candidate> candidates, const HeuristicSpec& spec);

} // namespace myosched
