#include "doctest.h"

#include "myosched/errors.hpp"
#include "myosched/heuristics.hpp"

#include "oracles.hpp"

#include <random>

using namespace myosched;

TEST_CASE("[heuristics] eval_h formulas") {
	Task t{3, 0, 10, 110, {}};
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::DeadlinePlusWeightedEst, Rational(1, 2))).h == Rational(120));
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::DeadlinePlusWeightedEst, Rational(0))).h == Rational(110));
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::MinDeadline)).h == Rational(110));
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::MinProc)).h == Rational(10));
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::MinEst)).h == Rational(20));
	CHECK(eval_h(t, 20, HeuristicSpec(HeuristicKind::DeadlinePlusWeightedProc, Rational(1))).h == Rational(120));

	Task lax{0, 0, 30, 100, {}};
	auto v = eval_h(lax, 10, HeuristicSpec(HeuristicKind::MinLaxity));
	CHECK(v.h == Rational(60));
	CHECK(v.task_id == 0);
	CHECK(v.est_used == 10);
	// infeasible candidates evaluate to negative laxity, not an error
	CHECK(eval_h(lax, 80, HeuristicSpec(HeuristicKind::MinLaxity)).h == Rational(-10));
}

TEST_CASE("[heuristics] spec strings") {
	CHECK(HeuristicSpec::parse("d+w*est:0.5") == HeuristicSpec(HeuristicKind::DeadlinePlusWeightedEst, Rational(1, 2)));
	CHECK(HeuristicSpec::parse("d+w*p:1") == HeuristicSpec(HeuristicKind::DeadlinePlusWeightedProc, Rational(1)));
	CHECK(HeuristicSpec::parse("min_laxity").kind() == HeuristicKind::MinLaxity);
	for (const char* s : {"min_d", "min_p", "min_est", "min_laxity", "d+w*p:0.25", "d+w*est:1"})
		CHECK(HeuristicSpec::parse(s).to_string() == s);
	CHECK_THROWS_AS(HeuristicSpec::parse("d+w*est"), ConfigError);
	CHECK_THROWS_AS(HeuristicSpec::parse("min_d:0.5"), ConfigError);
	CHECK_THROWS_AS(HeuristicSpec::parse("edf"), ConfigError);
	CHECK_THROWS_AS(HeuristicSpec::parse("d+w*est:-1"), ConfigError);
	// unweighted kinds store w = 0
	CHECK(HeuristicSpec(HeuristicKind::MinProc, Rational(3)).w() == Rational(0));
}

TEST_CASE("[heuristics] argmin tie-breaking") {
	Task a{4, 0, 5, 50, {}};
	Task b{2, 0, 5, 50, {}};
	std::vector<Candidate> one{{&a, 0}};
	CHECK(argmin_h(one, HeuristicSpec(HeuristicKind::MinProc)) == 4);

	std::vector<Candidate> tie{{&a, 0}, {&b, 0}};
	CHECK(argmin_h(tie, HeuristicSpec(HeuristicKind::MinProc)) == 2);

	// equal h, earlier deadline wins before id
	Task c{0, 0, 5, 60, {}};
	Task d{9, 0, 10, 55, {}};
	std::vector<Candidate> dl{{&c, 0}, {&d, 0}};
	CHECK(argmin_h(dl, HeuristicSpec(HeuristicKind::MinEst)) == 9);

	CHECK_THROWS_AS(argmin_h(std::vector<Candidate>{}, HeuristicSpec()), UsageError);
}

namespace {

struct RandomCandidates {
	std::vector<Task> tasks;
	std::vector<Candidate> cands;
};

RandomCandidates random_candidates(std::mt19937_64& rng, std::size_t n)
{
	RandomCandidates rc;
	rc.tasks.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		Task& t = rc.tasks[i];
		t.id = static_cast<int>(rng() % 1000);
		t.t_gen = static_cast<Time>(rng() % 50);
		t.t_proc = 1 + static_cast<Time>(rng() % 20);
		t.t_deadline = t.t_gen + t.t_proc + static_cast<Time>(rng() % 40);
	}
	for (const Task& t : rc.tasks)
		rc.cands.push_back({&t, t.t_gen + static_cast<Time>(rng() % 30)});
	return rc;
}

} // namespace

TEST_CASE("[heuristics] argmin equals an exhaustive scan") {
	std::mt19937_64 rng(11);
	const HeuristicKind kinds[] = {HeuristicKind::MinDeadline, HeuristicKind::MinProc, HeuristicKind::MinEst,
	                               HeuristicKind::MinLaxity, HeuristicKind::DeadlinePlusWeightedProc,
	                               HeuristicKind::DeadlinePlusWeightedEst};
	for (int trial = 0; trial < 2000; ++trial) {
		auto rc = random_candidates(rng, trial % 3 == 0 ? 6 : 1 + rng() % 12);
		std::vector<std::pair<const Task*, Time>> plain;
		for (const auto& c : rc.cands)
			plain.push_back({c.task, c.est});
		const int k = static_cast<int>(rng() % 6);
		const Rational w = k >= 4 ? Rational(static_cast<std::int64_t>(rng() % 4), 2) : Rational(0);
		HeuristicSpec spec(kinds[k], w);
		CHECK(argmin_h(rc.cands, spec) == oracle::scan_argmin(plain, k, spec.w().num(), spec.w().den()));
	}
}

TEST_CASE("[heuristics] w = 0 degenerates to earliest deadline") {
	std::mt19937_64 rng(12);
	const HeuristicSpec zero(HeuristicKind::DeadlinePlusWeightedEst, Rational(0));
	const HeuristicSpec edf(HeuristicKind::MinDeadline);
	for (int trial = 0; trial < 2000; ++trial) {
		auto rc = random_candidates(rng, 1 + rng() % 10);
		CHECK(argmin_h(rc.cands, zero) == argmin_h(rc.cands, edf));
		for (const auto& c : rc.cands)
			CHECK(eval_h(*c.task, c.est, zero).h == eval_h(*c.task, c.est, edf).h);
	}
}

TEST_CASE("[heuristics] deadline shift moves h and keeps argmin") {
	std::mt19937_64 rng(13);
	for (int trial = 0; trial < 1000; ++trial) {
		const HeuristicSpec spec(HeuristicKind::DeadlinePlusWeightedEst, Rational(static_cast<std::int64_t>(rng() % 3), 2));
		auto rc = random_candidates(rng, 1 + rng() % 10);
		const Time shift = static_cast<Time>(rng() % 100);
		auto shifted = rc;
		shifted.cands.clear();
		for (auto& t : shifted.tasks)
			t.t_deadline += shift;
		for (std::size_t i = 0; i < shifted.tasks.size(); ++i)
			shifted.cands.push_back({&shifted.tasks[i], rc.cands[i].est});
		CHECK(argmin_h(rc.cands, spec) == argmin_h(shifted.cands, spec));
		for (std::size_t i = 0; i < rc.cands.size(); ++i)
			CHECK(eval_h(*shifted.cands[i].task, shifted.cands[i].est, spec).h ==
			      eval_h(*rc.cands[i].task, rc.cands[i].est, spec).h + Rational(shift));
	}
}
