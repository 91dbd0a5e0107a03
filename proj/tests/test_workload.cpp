#include "doctest.h"

#include "myosched/errors.hpp"
#include "myosched/workload.hpp"

#include <filesystem>
#include <random>
#include <sstream>

using namespace myosched;

namespace {

std::string serialize(const TaskSet& ts)
{
	std::ostringstream out;
	write_workload(out, ts);
	return out.str();
}

TaskSet parse(const std::string& text)
{
	std::istringstream in(text);
	return read_workload(in);
}

} // namespace

TEST_CASE("[workload] short-task workload parameters") {
	WorkloadParams p;
	p.n = 200;
	p.proc_range = {10, 11};
	p.laxity = 100;
	auto ts = generate(p, 42);
	REQUIRE(ts.size() == 200);
	for (const Task& t : ts.tasks()) {
		CHECK((t.t_proc == 10 || t.t_proc == 11));
		CHECK(t.t_deadline - t.t_gen - t.t_proc == 100);
	}
}

TEST_CASE("[workload] single zero-laxity task") {
	WorkloadParams p;
	p.n = 1;
	p.proc_range = {5, 5};
	p.laxity = 0;
	p.arrival_span = {0, 0};
	for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
		auto ts = generate(p, seed);
		REQUIRE(ts.size() == 1);
		CHECK(ts[0].t_gen == 0);
		CHECK(ts[0].t_proc == 5);
		CHECK(ts[0].t_deadline == 5);
	}
}

TEST_CASE("[workload] generation is deterministic per seed") {
	WorkloadParams p;
	p.n = 500;
	p.proc_range = {20, 21};
	p.laxity = 100;
	CHECK(serialize(generate(p, 99)) == serialize(generate(p, 99)));
	CHECK(serialize(generate(p, 99)) != serialize(generate(p, 100)));
}

TEST_CASE("[workload] generated invariants") {
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 50; ++trial) {
		WorkloadParams p;
		p.n = 1 + rng() % 80;
		p.proc_range.lo = 1 + static_cast<std::int64_t>(rng() % 10);
		p.proc_range.hi = p.proc_range.lo + static_cast<std::int64_t>(rng() % 10);
		p.laxity = static_cast<std::int64_t>(rng() % 50);
		p.arrival_span = {0, static_cast<std::int64_t>(rng() % 6)};
		p.n_resources = static_cast<int>(rng() % 4);
		p.request_prob = 0.4;
		auto ts = generate(p, rng());
		Time prev = 0;
		for (const Task& t : ts.tasks()) {
			CHECK(t.t_gen >= prev);
			CHECK(t.t_deadline - t.t_proc >= t.t_gen);
			CHECK(p.proc_range.contains(t.t_proc));
			CHECK(t.t_gen - prev <= p.arrival_span.hi);
			prev = t.t_gen;
			for (const auto& r : t.requests)
				CHECK(r.resource_id < p.n_resources);
		}
		CHECK(ts[0].t_gen == 0);
	}
}

TEST_CASE("[workload] rejects bad parameters") {
	WorkloadParams p;
	p.n = 0;
	CHECK_THROWS_AS(generate(p, 1), ConfigError);
	p.n = 5;
	p.proc_range = {0, 3};
	CHECK_THROWS_AS(generate(p, 1), ConfigError);
	p.proc_range = {1, 3};
	p.request_prob = 1.5;
	CHECK_THROWS_AS(generate(p, 1), ConfigError);
}

TEST_CASE("[workload] minimal file") {
	auto ts = parse("# myosched-workload v1\n0,0,5,100,-\n");
	REQUIRE(ts.size() == 1);
	CHECK(ts[0].t_proc == 5);
	CHECK(ts[0].t_deadline == 100);
	CHECK(ts[0].requests.empty());
	CHECK(ts.seed() == 0);
}

TEST_CASE("[workload] request column") {
	auto ts = parse("# myosched-workload v1\n0,42,10,152,0x;2s\n");
	REQUIRE(ts[0].requests.size() == 2);
	CHECK(ts[0].requests[0] == ResourceRequest{0, AccessMode::Exclusive});
	CHECK(ts[0].requests[1] == ResourceRequest{2, AccessMode::Shared});
	CHECK(ts.resource_count() == 3);
	CHECK(serialize(ts) == "# myosched-workload v1\n0,42,10,152,0x;2s\n");
}

TEST_CASE("[workload] invariant violation names task and field") {
	try {
		parse("# myosched-workload v1\n0,0,5,100,-\n1,10,20,25,-\n");
		FAIL("expected InvariantError");
	} catch (const InvariantError& e) {
		CHECK(e.task_id() == 1);
		CHECK(e.field() == "t_deadline");
	}
}

TEST_CASE("[workload] parse errors carry line numbers") {
	auto line_of = [](const std::string& text) -> std::size_t {
		try {
			parse(text);
		} catch (const ParseError& e) {
			return e.line();
		}
		return 0;
	};
	CHECK(line_of("0,0,5,100,-\n") == 1);
	CHECK(line_of("# myosched-workload v1\n0,0,5,100,-\n1,zz,5,100,-\n") == 3);
	CHECK(line_of("# myosched-workload v1\n0,0,5,100\n") == 2);
	CHECK(line_of("# myosched-workload v1\n0,0,5,100,0q\n") == 2);
	CHECK(line_of("") == 1);
}

TEST_CASE("[workload] ids must be dense and unique") {
	CHECK_THROWS_AS(parse("# myosched-workload v1\n0,0,5,100,-\n2,0,5,100,-\n"), InvariantError);
	CHECK_THROWS_AS(parse("# myosched-workload v1\n0,0,5,100,-\n0,0,5,100,-\n"), InvariantError);
	CHECK_THROWS_AS(parse("# myosched-workload v1\n0,0,5,100,1x;1s\n"), InvariantError);
}

TEST_CASE("[workload] tasks emitted in id order") {
	std::vector<Task> tasks{{1, 3, 2, 20, {}}, {0, 0, 5, 5, {}}};
	TaskSet ts(tasks);
	CHECK(serialize(ts) == "# myosched-workload v1\n0,0,5,5,-\n1,3,2,20,-\n");
}

TEST_CASE("[workload] save/load round trip over random parameters") {
	auto dir = std::filesystem::temp_directory_path() / "myosched_wl_test";
	std::filesystem::create_directories(dir);
	std::mt19937_64 rng(2024);
	for (int i = 0; i < 100; ++i) {
		WorkloadParams p;
		p.n = 1 + rng() % 60;
		p.proc_range.lo = 1 + static_cast<std::int64_t>(rng() % 20);
		p.proc_range.hi = p.proc_range.lo + static_cast<std::int64_t>(rng() % 5);
		p.laxity = static_cast<std::int64_t>(rng() % 120);
		p.arrival_span = {0, static_cast<std::int64_t>(rng() % 5)};
		p.n_resources = static_cast<int>(rng() % 5);
		p.request_prob = static_cast<double>(rng() % 100) / 100.0;
		p.share_prob = static_cast<double>(rng() % 100) / 100.0;
		auto ts = generate(p, rng());
		auto path = dir / "w.csv";
		save_workload(ts, path);
		auto back = load_workload(path);
		CHECK(back.same_tasks(ts));
		CHECK(back.seed() == 0);
		CHECK(back.content_hash() == ts.content_hash());
	}
	std::filesystem::remove_all(dir);
}

TEST_CASE("[workload] ranges") {
	CHECK(IntRange::parse("10..11") == IntRange{10, 11});
	CHECK(IntRange::parse("5") == IntRange{5, 5});
	CHECK_THROWS_AS(IntRange::parse("11..10"), ConfigError);
	CHECK_THROWS_AS(IntRange::parse("a..b"), ConfigError);
}
