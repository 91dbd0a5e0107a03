#include "myosched/simulation.hpp"

#include "myosched/errors.hpp"
#include "myosched/resources.hpp"

#include <algorithm>
#include <set>

namespace myosched {

void OverheadModel::validate() const
{
	if (c0 < 0 || c1 < 0)
		throw ConfigError("overhead coefficients must be >= 0");
}

void SimConfig::validate() const
{
	if (k < 1)
		throw ConfigError("simulation window size must be >= 1");
	overhead.validate();
	if (horizon && *horizon < 0)
		throw ConfigError("horizon must be >= 0");
}

std::string to_string(EventKind kind)
{
	switch (kind) {
	case EventKind::Arrive:
		return "arrive";
	case EventKind::Decide:
		return "decide";
	case EventKind::Dispatch:
		return "dispatch";
	case EventKind::Finish:
		return "finish";
	case EventKind::Discard:
		return "discard";
	}
	return "?";
}

EventKind parse_event_kind(const std::string& name)
{
	for (auto k : {EventKind::Arrive, EventKind::Decide, EventKind::Dispatch, EventKind::Finish, EventKind::Discard})
		if (to_string(k) == name)
			return k;
	throw ConfigError("unknown event kind '" + name + "'");
}

namespace {

class OnlineRun {
public:
	OnlineRun(const TaskSet& ts, const SimConfig& cfg) : ts_(ts), cfg_(cfg), avail_(ts.resource_count()) {}

	SimOutcome run()
	{
		const std::size_t n = ts_.size();
		for (;;) {
			admit(clock_);
			if (cfg_.horizon && clock_ >= *cfg_.horizon) {
				out_.truncated = next_ < n || !pending_.empty();
				break;
			}
			discard_hopeless();
			if (pending_.empty()) {
				if (next_ == n)
					break;
				clock_ = std::max(clock_, ts_[static_cast<int>(next_)].t_gen);
				continue;
			}

			const std::size_t n_k = std::min(cfg_.k, pending_.size());
			const Time cost = cfg_.overhead.cost(n_k);
			out_.trace.push_back({clock_, EventKind::Decide, -1, n_k, cost});
			out_.overhead_total += cost;
			clock_ += cost;
			// arrivals during the decision become pending but the window stays
			// capped at the N_K that was paid for
			admit(clock_);
			discard_hopeless();
			if (pending_.empty())
				continue;

			candidates_.clear();
			for (auto it = pending_.begin(); it != pending_.end() && candidates_.size() < n_k; ++it) {
				const Task& t = ts_[it->second];
				candidates_.push_back({&t, std::max(clock_, earliest_start(t, avail_))});
			}
			const Candidate& best = candidates_[argmin_index(candidates_, cfg_.spec)];
			dispatch(*best.task, best.est);
		}
		return std::move(out_);
	}

private:
	void admit(Time upto)
	{
		while (next_ < ts_.size() && ts_[static_cast<int>(next_)].t_gen <= upto) {
			const Task& t = ts_[static_cast<int>(next_)];
			out_.trace.push_back({t.t_gen, EventKind::Arrive, t.id, 0, 0});
			pending_.emplace(t.t_deadline, t.id);
			++next_;
		}
	}

	void discard_hopeless()
	{
		for (auto it = pending_.begin(); it != pending_.end();) {
			const Task& t = ts_[it->second];
			if (std::max(clock_, earliest_start(t, avail_)) + t.t_proc > t.t_deadline) {
				out_.trace.push_back({clock_, EventKind::Discard, t.id, 0, 0});
				++out_.discarded;
				it = pending_.erase(it);
			} else {
				++it;
			}
		}
	}

	void dispatch(const Task& t, Time start)
	{
		pending_.erase({t.t_deadline, t.id});
		out_.trace.push_back({start, EventKind::Dispatch, t.id, 0, 0});
		avail_ = commit(t, start, std::move(avail_));
		const Time finish = start + t.t_proc;
		admit(finish);
		out_.trace.push_back({finish, EventKind::Finish, t.id, 0, 0});
		if (finish <= t.t_deadline)
			++out_.completed;
		out_.makespan = finish;
		clock_ = finish;
	}

	const TaskSet& ts_;
	const SimConfig& cfg_;
	AvailabilityTable avail_;
	std::set<std::pair<Time, int>> pending_; // (t_deadline, id)
	std::vector<Candidate> candidates_;
	std::size_t next_ = 0;
	Time clock_ = 0;
	SimOutcome out_;
};

} // namespace

SimOutcome simulate(const TaskSet& ts, const SimConfig& cfg)
{
	cfg.validate();
	return OnlineRun(ts, cfg).run();
}

Validation replay_validate(const TaskSet& ts, const SimOutcome& outcome)
{
	auto fail = [](std::string msg) { return Validation{false, std::move(msg)}; };
	const std::size_t n = ts.size();

	enum class Phase { Unseen, Pending, Running, Done, Dropped };
	std::vector<Phase> phase(n, Phase::Unseen);
	std::vector<Time> started(n, 0);

	Time prev_t = 0;
	Time busy_until = 0;
	int running = -1;
	bool decided = false;
	std::size_t completed = 0, discarded = 0;
	Time makespan = 0, overhead = 0;

	for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
		const TraceEvent& e = outcome.trace[i];
		const std::string at = "event " + std::to_string(i) + " (" + to_string(e.kind) + " t=" + std::to_string(e.t) + ")";
		if (e.t < prev_t)
			return fail(at + ": time goes backwards");
		prev_t = e.t;

		if (e.kind == EventKind::Decide) {
			if (e.task_id != -1)
				return fail(at + ": decide event carries a task id");
			if (running != -1)
				return fail(at + ": decision while task " + std::to_string(running) + " is running");
			if (e.n_k == 0)
				return fail(at + ": decision with an empty window");
			overhead += e.cost;
			decided = true;
			busy_until = e.t + e.cost;
			continue;
		}
		if (e.task_id < 0 || static_cast<std::size_t>(e.task_id) >= n)
			return fail(at + ": unknown task id " + std::to_string(e.task_id));
		const Task& t = ts[e.task_id];
		Phase& ph = phase[static_cast<std::size_t>(e.task_id)];

		switch (e.kind) {
		case EventKind::Arrive:
			if (ph != Phase::Unseen)
				return fail(at + ": task " + std::to_string(t.id) + " arrives twice");
			if (e.t != t.t_gen)
				return fail(at + ": arrival of task " + std::to_string(t.id) + " differs from t_gen");
			ph = Phase::Pending;
			break;
		case EventKind::Dispatch:
			if (ph != Phase::Pending)
				return fail(at + ": task " + std::to_string(t.id) + " dispatched while not pending");
			if (running != -1)
				return fail(at + ": overlaps running task " + std::to_string(running));
			if (!decided)
				return fail(at + ": dispatch without a scheduling decision");
			if (e.t < busy_until)
				return fail(at + ": dispatched during scheduling overhead");
			running = t.id;
			decided = false;
			started[static_cast<std::size_t>(t.id)] = e.t;
			ph = Phase::Running;
			break;
		case EventKind::Finish:
			if (ph != Phase::Running || running != t.id)
				return fail(at + ": task " + std::to_string(t.id) + " finishes without running");
			if (e.t != started[static_cast<std::size_t>(t.id)] + t.t_proc)
				return fail(at + ": task " + std::to_string(t.id) + " did not run exactly t_proc (preempted?)");
			running = -1;
			busy_until = e.t;
			makespan = e.t;
			if (e.t <= t.t_deadline)
				++completed;
			ph = Phase::Done;
			break;
		case EventKind::Discard:
			if (ph != Phase::Pending)
				return fail(at + ": task " + std::to_string(t.id) + " discarded while not pending");
			if (running != -1)
				return fail(at + ": discard while task " + std::to_string(running) + " is running");
			if (e.t + t.t_proc <= t.t_deadline)
				return fail(at + ": task " + std::to_string(t.id) + " could still meet its deadline");
			++discarded;
			ph = Phase::Dropped;
			break;
		case EventKind::Decide:
			break;
		}
	}

	if (running != -1)
		return fail("trace ends with task " + std::to_string(running) + " still running");
	if (completed != outcome.completed)
		return fail("summary completed=" + std::to_string(outcome.completed) + " but trace shows " + std::to_string(completed));
	if (discarded != outcome.discarded)
		return fail("summary discarded=" + std::to_string(outcome.discarded) + " but trace shows " + std::to_string(discarded));
	if (makespan != outcome.makespan)
		return fail("summary makespan=" + std::to_string(outcome.makespan) + " but trace shows " + std::to_string(makespan));
	if (overhead != outcome.overhead_total)
		return fail("summary overhead_total=" + std::to_string(outcome.overhead_total) + " but trace shows " +
		            std::to_string(overhead));
	if (!outcome.truncated) {
		std::size_t done = 0;
		for (auto ph : phase)
			done += (ph == Phase::Done || ph == Phase::Dropped) ? 1 : 0;
		if (done != n || completed + discarded != n)
			return fail("untruncated run leaves " + std::to_string(n - done) + " tasks unresolved");
	}
	return {};
}

std::string summary_line(const SimOutcome& o)
{
	return "completed=" + std::to_string(o.completed) + " discarded=" + std::to_string(o.discarded) +
	       " makespan=" + std::to_string(o.makespan) + " overhead_total=" + std::to_string(o.overhead_total) +
	       " truncated=" + (o.truncated ? "1" : "0");
}

} // namespace myosched
