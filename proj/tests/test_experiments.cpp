#include "doctest.h"

#include "myosched/errors.hpp"
#include "myosched/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace myosched;

namespace {

std::filesystem::path scratch(const std::string& name)
{
	auto dir = std::filesystem::temp_directory_path() / ("myosched_exp_" + name);
	std::filesystem::remove_all(dir);
	return dir;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& p)
{
	std::ifstream in(p);
	std::vector<std::vector<std::string>> rows;
	std::string line;
	while (std::getline(in, line)) {
		if (line.empty() || line.front() == '#')
			continue;
		std::vector<std::string> cols;
		std::stringstream ss(line);
		std::string c;
		while (std::getline(ss, c, ','))
			cols.push_back(c);
		rows.push_back(cols);
	}
	return rows;
}

} // namespace

TEST_CASE("[experiments] default grid shape") {
	ExperimentGrid g; // defaults carry the published grid
	g.loads = {200, 500, 1000};
	g.proc_ranges = {{10, 11}};
	g.laxity = 100;
	g.ks = {2, 4, 6, 8, 10};
	g.ws = {Rational(1, 2), Rational(1)};
	g.replications = 5;
	auto results = run_grid(g, 4);
	CHECK(results.size() == 30);
	std::size_t runs = 0;
	for (const auto& r : results) {
		CHECK(r.error.empty());
		runs += r.per_rep.size();
	}
	CHECK(runs == 150);
}

TEST_CASE("[experiments] single cell") {
	ExperimentGrid g;
	g.loads = {50};
	g.ks = {4};
	g.ws = {Rational(1)};
	g.replications = 1;
	auto results = run_grid(g);
	REQUIRE(results.size() == 1);
	const auto& r = results[0];
	REQUIRE(r.per_rep.size() == 1);
	CHECK(r.mean_completed == static_cast<double>(r.per_rep[0].completed));
	CHECK(r.min_completed == r.per_rep[0].completed);
	CHECK(r.max_completed == r.per_rep[0].completed);
}

TEST_CASE("[experiments] deterministic and thread-count independent") {
	ExperimentGrid g;
	g.loads = {100, 200};
	g.proc_ranges = {{5, 6}, {20, 21}};
	g.replications = 3;
	auto a = run_grid(g, 1);
	auto b = run_grid(g, 1);
	auto c = run_grid(g, 8);
	CHECK(a == b);
	CHECK(a == c);
}

TEST_CASE("[experiments] paired seeds isolate k and w") {
	ExperimentGrid g;
	g.loads = {120};
	g.replications = 4;
	auto results = run_grid(g);
	for (std::size_t rep = 0; rep < g.replications; ++rep) {
		std::set<std::uint64_t> hashes;
		for (const auto& r : results)
			hashes.insert(r.per_rep[rep].taskset_hash);
		CHECK(hashes.size() == 1);
	}

	g.independent_seeds = true;
	auto indep = run_grid(g);
	std::set<std::uint64_t> hashes;
	for (const auto& r : indep)
		hashes.insert(r.per_rep[0].taskset_hash);
	CHECK(hashes.size() == indep.size());
}

TEST_CASE("[experiments] aggregation recomputable") {
	ExperimentGrid g;
	g.loads = {150};
	g.replications = 5;
	for (const auto& r : run_grid(g)) {
		std::size_t sum = 0, lo = SIZE_MAX, hi = 0;
		for (const auto& rep : r.per_rep) {
			sum += rep.completed;
			lo = std::min(lo, rep.completed);
			hi = std::max(hi, rep.completed);
		}
		CHECK(r.mean_completed == doctest::Approx(static_cast<double>(sum) / 5.0));
		CHECK(r.min_completed == lo);
		CHECK(r.max_completed == hi);
		CHECK(static_cast<double>(lo) <= r.mean_completed);
		CHECK(r.mean_completed <= static_cast<double>(hi));
	}
}

TEST_CASE("[experiments] grid validation") {
	ExperimentGrid g;
	g.ks = {1, 2};
	CHECK_THROWS_AS(run_grid(g), ConfigError);
	g.allow_k1 = true;
	CHECK_NOTHROW(g.validate());
	g.replications = 0;
	CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("[experiments] grid JSON") {
	auto g = parse_grid_json(R"({"loads":[200,500],"proc_ranges":["10..11",[20,21]],"laxity":100,
		"ks":[2,4],"ws":[0.5,1.0],"replications":5,"base_seed":7,"overhead":{"c0":4,"c1":1}})");
	CHECK(g.loads == std::vector<std::size_t>{200, 500});
	CHECK(g.proc_ranges == std::vector<IntRange>{{10, 11}, {20, 21}});
	CHECK(g.ws == std::vector<Rational>{Rational(1, 2), Rational(1)});
	CHECK(g.overhead == OverheadModel{4, 1});
	CHECK(g.spec_kind == HeuristicKind::DeadlinePlusWeightedEst);
	CHECK(g.base_seed == 7);

	auto again = parse_grid_json(grid_to_json(g));
	CHECK(grid_to_json(again) == grid_to_json(g));

	CHECK_THROWS_AS(parse_grid_json(R"({"loadz":[1]})"), ConfigError);
	CHECK_THROWS_AS(parse_grid_json(R"({"ks":[1]})"), ConfigError);
	CHECK_THROWS_AS(parse_grid_json("not json"), ConfigError);
}

TEST_CASE("[experiments] figure CSVs") {
	ExperimentGrid g;
	g.loads = {100};
	g.replications = 5;
	auto results = run_grid(g);
	auto dir = scratch("fig");
	auto files = emit_figure_data(results, dir, &g);
	REQUIRE(files.size() == 2); // one per w
	for (const auto& f : files) {
		std::ifstream in(f);
		std::string first;
		std::getline(in, first);
		CHECK(first == kFigureHeader);

		auto rows = read_rows(f);
		REQUIRE(rows.size() == 6); // column header + 5 window sizes
		CHECK(rows[0] == std::vector<std::string>{"k", "rep_1", "rep_2", "rep_3", "rep_4", "rep_5", "mean"});
		for (std::size_t i = 1; i < rows.size(); ++i) {
			REQUIRE(rows[i].size() == 7);
			double sum = 0;
			for (std::size_t c = 1; c <= 5; ++c)
				sum += std::stod(rows[i][c]);
			CHECK(std::stod(rows[i][6]) == doctest::Approx(sum / 5.0).epsilon(1e-9));
		}
	}
	std::filesystem::remove_all(dir);
	CHECK_THROWS_AS(emit_figure_data({}, dir), UsageError);
}
