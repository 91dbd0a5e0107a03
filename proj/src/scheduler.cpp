#include "myosched/scheduler.hpp"

#include "myosched/errors.hpp"

#include <algorithm>
#include <ostream>

namespace myosched {

WindowSize WindowSize::of(std::size_t k)
{
	if (k == 0)
		throw ConfigError("window size must be >= 1");
	WindowSize w;
	w.k_ = k;
	return w;
}

WindowSize WindowSize::parse(const std::string& text)
{
	if (text == "unbounded")
		return unbounded();
	std::size_t pos = 0;
	unsigned long long v = 0;
	try {
		v = std::stoull(text, &pos);
	} catch (const std::exception&) {
		pos = 0;
	}
	if (pos == 0 || pos != text.size() || text.front() == '-')
		throw ConfigError("window size must be a positive integer or 'unbounded', got '" + text + "'");
	return of(static_cast<std::size_t>(v));
}

std::string WindowSize::to_string() const
{
	return k_ ? std::to_string(*k_) : "unbounded";
}

SchedulerState::SchedulerState(const TaskSet& ts, WindowSize k) : ts_(&ts), k_(k)
{
	remaining_.reserve(ts.size());
	for (const Task& t : ts.tasks())
		remaining_.push_back(t.id);
	std::sort(remaining_.begin(), remaining_.end(), [&ts](int a, int b) {
		return std::pair(ts[a].t_deadline, a) < std::pair(ts[b].t_deadline, b);
	});
	avail_.emplace_back(ts.resource_count());
	partial_.reserve(ts.size());
	avail_.reserve(ts.size() + 1);
}

void SchedulerState::commit(const Placement& p)
{
	auto it = std::find(remaining_.begin(), remaining_.end(), p.task_id);
	if (it == remaining_.end())
		throw SchedulingLogicError("commit of task " + std::to_string(p.task_id) + " which is not remaining");
	const Task& t = (*ts_)[p.task_id];
	avail_.push_back(myosched::commit(t, p.start, avail_.back()));
	remaining_.erase(it);
	partial_.push_back({p.task_id, p.start, p.start + t.t_proc});
}

int SchedulerState::undo()
{
	if (partial_.empty())
		throw SchedulingLogicError("undo on an empty partial schedule");
	int id = partial_.back().task_id;
	partial_.pop_back();
	avail_.pop_back();
	const TaskSet& ts = *ts_;
	auto key = std::pair(ts[id].t_deadline, id);
	auto pos = std::lower_bound(remaining_.begin(), remaining_.end(), key,
	                            [&ts](int a, const std::pair<Time, int>& k) { return std::pair(ts[a].t_deadline, a) < k; });
	remaining_.insert(pos, id);
	return id;
}

std::vector<int> window(const SchedulerState& state)
{
	const auto& rem = state.remaining();
	if (rem.empty())
		throw UsageError("window: no remaining tasks");
	auto n_k = state.k().considered(rem.size());
	return {rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(n_k)};
}

bool strongly_feasible(SchedulerState& state, std::optional<Placement> after)
{
	const TaskSet& ts = state.tasks();
	const auto& rem = state.remaining();
	const AvailabilityTable* avail = &state.avail();
	AvailabilityTable speculative;

	if (after) {
		const Task& t = ts[after->task_id];
		// the placed task's own deadline is the commit check, not a window test
		if (after->start < earliest_start(t, *avail) || after->start + t.t_proc > t.t_deadline)
			return false;
		speculative = commit(t, after->start, *avail);
		avail = &speculative;
	}

	// window of the speculative state: remaining minus the placed task
	std::size_t n_rem = rem.size() - (after ? 1 : 0);
	std::size_t n_k = state.k().considered(n_rem);
	std::size_t tested = 0;
	for (std::size_t i = 0; i < rem.size() && tested < n_k; ++i) {
		if (after && rem[i] == after->task_id)
			continue;
		const Task& t = ts[rem[i]];
		++tested;
		++state.counters.feas_checks;
		if (earliest_start(t, *avail) + t.t_proc > t.t_deadline)
			return false;
	}
	return true;
}

BuildConfig BuildConfig::with_backtracking(HeuristicSpec spec, WindowSize k, std::size_t n)
{
	return {spec, k, 10 * n, OnInfeasible::Backtrack};
}

void BuildConfig::validate() const
{
	if (on_infeasible == OnInfeasible::Abort && max_backtracks != 0)
		throw ConfigError("max_backtracks must be 0 when on_infeasible = abort");
}

BuildResult build(const TaskSet& ts, const BuildConfig& cfg)
{
	cfg.validate();
	SchedulerState state(ts, cfg.k);
	// forbidden[d]: choices already undone at step d under the current prefix
	std::vector<std::vector<int>> forbidden(ts.size() + 1);
	std::vector<Candidate> cands;

	while (!state.remaining().empty()) {
		const std::size_t depth = state.partial().size();
		cands.clear();
		for (int id : window(state)) {
			const auto& f = forbidden[depth];
			if (std::find(f.begin(), f.end(), id) == f.end())
				cands.push_back({&ts[id], earliest_start(ts[id], state.avail())});
		}

		if (!cands.empty()) {
			state.counters.h_evals += cands.size();
			const Candidate& best = cands[argmin_index(cands, cfg.spec)];
			Placement p{best.task->id, best.est};
			if (strongly_feasible(state, p)) {
				state.commit(p);
				forbidden[depth + 1].clear();
				continue;
			}
		}

		if (cfg.on_infeasible == OnInfeasible::Abort || depth == 0 ||
		    state.counters.backtracks_used >= cfg.max_backtracks)
			return {false, state.partial(), state.counters};

		int undone = state.undo();
		forbidden[depth - 1].push_back(undone);
		++state.counters.backtracks_used;
	}
	return {true, state.partial(), state.counters};
}

void write_schedule_csv(std::ostream& out, const TaskSet& ts, const BuildResult& result)
{
	out << kScheduleHeader << '\n';
	out << "task_id,start,finish,t_deadline\n";
	for (const auto& e : result.schedule)
		out << e.task_id << ',' << e.start << ',' << e.finish << ',' << ts[e.task_id].t_deadline << '\n';
	out << "# h_evals=" << result.counters.h_evals << ",feas_checks=" << result.counters.feas_checks
	    << ",backtracks=" << result.counters.backtracks_used
	    << ",outcome=" << (result.feasible ? "feasible" : "infeasible");
	if (!result.feasible)
		out << ",partial_len=" << result.partial_len();
	out << '\n';
}

} // namespace myosched
