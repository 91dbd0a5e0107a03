#include "myosched/heuristics.hpp"

#include "myosched/errors.hpp"

#include <tuple>

namespace myosched {

bool is_weighted(HeuristicKind kind) noexcept
{
	return kind == HeuristicKind::DeadlinePlusWeightedProc || kind == HeuristicKind::DeadlinePlusWeightedEst;
}

HeuristicSpec::HeuristicSpec(HeuristicKind kind, Rational w) : kind_(kind), w_(is_weighted(kind) ? w : Rational(0))
{
	if (w_ < Rational(0))
		throw ConfigError("heuristic weight must be non-negative, got " + w.to_string());
}

std::string kind_name(HeuristicKind kind)
{
	switch (kind) {
	case HeuristicKind::MinDeadline:
		return "min_d";
	case HeuristicKind::MinProc:
		return "min_p";
	case HeuristicKind::MinEst:
		return "min_est";
	case HeuristicKind::MinLaxity:
		return "min_laxity";
	case HeuristicKind::DeadlinePlusWeightedProc:
		return "d+w*p";
	case HeuristicKind::DeadlinePlusWeightedEst:
		return "d+w*est";
	}
	return "?";
}

HeuristicKind parse_kind(std::string_view name)
{
	for (auto k : {HeuristicKind::MinDeadline, HeuristicKind::MinProc, HeuristicKind::MinEst,
	               HeuristicKind::MinLaxity, HeuristicKind::DeadlinePlusWeightedProc,
	               HeuristicKind::DeadlinePlusWeightedEst})
		if (name == kind_name(k))
			return k;
	throw ConfigError("unknown heuristic '" + std::string(name) +
	                  "' (expected min_d, min_p, min_est, min_laxity, d+w*p:<w> or d+w*est:<w>)");
}

HeuristicSpec HeuristicSpec::parse(std::string_view text)
{
	auto colon = text.find(':');
	HeuristicKind kind = parse_kind(text.substr(0, colon));
	if (is_weighted(kind)) {
		if (colon == std::string_view::npos)
			throw ConfigError("heuristic '" + std::string(text) + "' needs a weight, e.g. d+w*est:0.5");
		return HeuristicSpec(kind, Rational::parse(text.substr(colon + 1)));
	}
	if (colon != std::string_view::npos)
		throw ConfigError("heuristic '" + std::string(text.substr(0, colon)) + "' takes no weight");
	return HeuristicSpec(kind);
}

std::string HeuristicSpec::to_string() const
{
	return is_weighted(kind_) ? kind_name(kind_) + ":" + w_.to_string() : kind_name(kind_);
}

HeuristicValue eval_h(const Task& task, Time est, const HeuristicSpec& spec)
{
	Rational h;
	switch (spec.kind()) {
	case HeuristicKind::MinDeadline:
		h = Rational(task.t_deadline);
		break;
	case HeuristicKind::MinProc:
		h = Rational(task.t_proc);
		break;
	case HeuristicKind::MinEst:
		h = Rational(est);
		break;
	case HeuristicKind::MinLaxity:
		h = Rational(task.t_deadline - est - task.t_proc);
		break;
	case HeuristicKind::DeadlinePlusWeightedProc:
		h = Rational(task.t_deadline) + spec.w() * Rational(task.t_proc);
		break;
	case HeuristicKind::DeadlinePlusWeightedEst:
		h = Rational(task.t_deadline) + spec.w() * Rational(est);
		break;
	}
	return {h, task.id, est};
}

std::size_t argmin_index(std::span<const Candidate> candidates, const HeuristicSpec& spec)
{
	if (candidates.empty())
		throw UsageError("argmin_h: empty candidate list");
	std::size_t best = 0;
	HeuristicValue best_v = eval_h(*candidates[0].task, candidates[0].est, spec);
	for (std::size_t i = 1; i < candidates.size(); ++i) {
		const Task& t = *candidates[i].task;
		HeuristicValue v = eval_h(t, candidates[i].est, spec);
		const Task& b = *candidates[best].task;
		if (std::tie(v.h, t.t_deadline, t.id) < std::tie(best_v.h, b.t_deadline, b.id)) {
			best = i;
			best_v = v;
		}
	}
	return best;
}

int argmin_h(std::span<const Candidate> candidates, const HeuristicSpec& spec)
{
	return candidates[argmin_index(candidates, spec)].task->id;
}

} // namespace myosched
