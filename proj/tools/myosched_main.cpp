// myosched: workload generation, offline schedule construction, online
// simulation, experiment grids and trace validation from the command line.
//
// Exit codes: 0 success, 1 usage/config/IO error, 2 infeasible build or
// invalid trace.

#include "myosched/errors.hpp"
#include "myosched/experiments.hpp"
#include "myosched/scheduler.hpp"
#include "myosched/simulation.hpp"
#include "myosched/workload.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

using namespace myosched;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRejected = 2;

struct GenOptions {
	std::size_t n = 200;
	std::string proc = "10..11";
	std::int64_t laxity = 100;
	std::string arrival = "0..3";
	int resources = 3;
	double request_prob = 0.2;
	double share_prob = 0.5;
	std::uint64_t seed = 1;

	void add_to(CLI::App& app)
	{
		app.add_option("-n,--tasks", n, "Number of tasks")->capture_default_str();
		app.add_option("--proc", proc, "Processing-time range lo..hi")->capture_default_str();
		app.add_option("--laxity", laxity, "t_deadline - t_gen - t_proc for every task")->capture_default_str();
		app.add_option("--arrival", arrival, "Inter-arrival gap range lo..hi")->capture_default_str();
		app.add_option("--resources", resources, "Number of distinct resources")->capture_default_str();
		app.add_option("--request-prob", request_prob, "Probability a task requests each resource")
		    ->capture_default_str();
		app.add_option("--share-prob", share_prob, "Probability a request is shared")->capture_default_str();
		app.add_option("--seed", seed, "PRNG seed (" + std::string(kGeneratorName) + ")")->capture_default_str();
	}

	WorkloadParams params() const
	{
		WorkloadParams p;
		p.n = n;
		p.proc_range = IntRange::parse(proc);
		p.laxity = laxity;
		p.arrival_span = IntRange::parse(arrival);
		p.n_resources = resources;
		p.request_prob = request_prob;
		p.share_prob = share_prob;
		return p;
	}
};

/// Workload from a file when given, generated from the options otherwise.
TaskSet obtain_workload(const std::string& path, const GenOptions& gen)
{
	if (!path.empty())
		return load_workload(path);
	return generate(gen.params(), gen.seed);
}

template<class Fn>
void with_output(const std::string& path, Fn&& fn)
{
	if (path.empty() || path == "-") {
		fn(std::cout);
		return;
	}
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot write " + path);
	fn(out);
	if (!out)
		throw IoError("write failed for " + path);
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Myopic and Original heuristic real-time scheduling toolkit"};
	app.require_subcommand(1, 1);

	// gen
	auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random workload file");
	GenOptions gen_opts;
	gen_opts.add_to(*gen_cmd);
	std::string gen_out;
	gen_cmd->add_option("-o,--out", gen_out, "Workload file to write (stdout if omitted)");

	// build
	auto* build_cmd = app.add_subcommand("build", "Build an offline schedule (Original or Myopic)");
	GenOptions build_gen;
	build_gen.add_to(*build_cmd);
	std::string build_in, build_out, build_k = "unbounded", build_h = "d+w*est:0.5";
	std::optional<std::size_t> build_bt;
	bool build_abort = false;
	build_cmd->add_option("workload", build_in, "Workload file (generated from the options if omitted)");
	build_cmd->add_option("--k", build_k, "Window size: positive integer or 'unbounded' (Original)")
	    ->capture_default_str();
	build_cmd->add_option("--heuristic", build_h, "min_d | min_p | min_est | min_laxity | d+w*p:<w> | d+w*est:<w>")
	    ->capture_default_str();
	build_cmd->add_option("--max-backtracks", build_bt, "Backtrack budget (default 10*n)");
	build_cmd->add_flag("--abort", build_abort, "Abort on the first strong-feasibility failure");
	build_cmd->add_option("-o,--out", build_out, "Schedule CSV to write (stdout if omitted)");

	// sim
	auto* sim_cmd = app.add_subcommand("sim", "Simulate online non-preemptive execution");
	GenOptions sim_gen;
	sim_gen.add_to(*sim_cmd);
	std::string sim_in, sim_trace, sim_h = "d+w*est:0.5";
	std::size_t sim_k = 6;
	Time sim_c0 = 1, sim_c1 = 1;
	std::optional<Time> sim_horizon;
	sim_cmd->add_option("workload", sim_in, "Workload file (generated from the options if omitted)");
	sim_cmd->add_option("--k", sim_k, "Window size")->capture_default_str()->check(CLI::PositiveNumber);
	sim_cmd->add_option("--heuristic", sim_h, "Heuristic spec")->capture_default_str();
	sim_cmd->add_option("--c0", sim_c0, "Fixed overhead per scheduling decision")->capture_default_str();
	sim_cmd->add_option("--c1", sim_c1, "Overhead per window candidate")->capture_default_str();
	sim_cmd->add_option("--horizon", sim_horizon, "Stop the clock at this time");
	sim_cmd->add_option("--trace", sim_trace, "Trace JSONL file to write");

	// grid
	auto* grid_cmd = app.add_subcommand("grid", "Run an experiment grid and emit figure CSVs");
	std::string grid_cfg, grid_dir;
	std::optional<std::uint64_t> grid_seed;
	unsigned grid_threads = 1;
	bool grid_indep = false;
	grid_cmd->add_option("--config", grid_cfg, "Grid config JSON")->required();
	grid_cmd->add_option("--out", grid_dir, "Output directory")->required();
	grid_cmd->add_option("--seed", grid_seed, "Override base_seed from the config");
	grid_cmd->add_option("--threads", grid_threads, "Worker threads")->capture_default_str();
	grid_cmd->add_flag("--independent-seeds", grid_indep, "Re-randomize workloads per (k, w)");

	// validate
	auto* val_cmd = app.add_subcommand("validate", "Check a simulation trace against its workload");
	std::string val_workload, val_trace;
	val_cmd->add_option("--workload", val_workload, "Workload file")->required();
	val_cmd->add_option("--trace", val_trace, "Trace JSONL file")->required();
	std::uint64_t val_seed = 0;
	val_cmd->add_option("--seed", val_seed, "Accepted for uniformity; validation is deterministic");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? kExitOk : kExitUsage;
	}

	try {
		if (*gen_cmd) {
			TaskSet ts = generate(gen_opts.params(), gen_opts.seed);
			with_output(gen_out, [&](std::ostream& out) { write_workload(out, ts); });
			std::cerr << "generated " << ts.size() << " tasks, seed=" << ts.seed() << '\n';
			return kExitOk;
		}

		if (*build_cmd) {
			TaskSet ts = obtain_workload(build_in, build_gen);
			BuildConfig cfg;
			cfg.spec = HeuristicSpec::parse(build_h);
			cfg.k = WindowSize::parse(build_k);
			if (build_abort) {
				if (build_bt && *build_bt != 0)
					throw ConfigError("--abort cannot be combined with a non-zero --max-backtracks");
				cfg.on_infeasible = OnInfeasible::Abort;
				cfg.max_backtracks = 0;
			} else {
				cfg.on_infeasible = OnInfeasible::Backtrack;
				cfg.max_backtracks = build_bt.value_or(10 * ts.size());
			}
			BuildResult r = build(ts, cfg);
			with_output(build_out, [&](std::ostream& out) { write_schedule_csv(out, ts, r); });
			if (!build_out.empty() && build_out != "-")
				std::cout << "outcome=" << (r.feasible ? "feasible" : "infeasible") << " scheduled=" << r.partial_len()
				          << " h_evals=" << r.counters.h_evals << " feas_checks=" << r.counters.feas_checks
				          << " backtracks=" << r.counters.backtracks_used << '\n';
			return r.feasible ? kExitOk : kExitRejected;
		}

		if (*sim_cmd) {
			TaskSet ts = obtain_workload(sim_in, sim_gen);
			SimConfig cfg;
			cfg.spec = HeuristicSpec::parse(sim_h);
			cfg.k = sim_k;
			cfg.overhead = {sim_c0, sim_c1};
			cfg.horizon = sim_horizon;
			SimOutcome o = simulate(ts, cfg);
			if (!sim_trace.empty())
				with_output(sim_trace, [&](std::ostream& out) { write_trace_jsonl(out, o); });
			std::cout << summary_line(o) << '\n';
			return kExitOk;
		}

		if (*grid_cmd) {
			ExperimentGrid grid = load_grid(grid_cfg);
			if (grid_seed)
				grid.base_seed = *grid_seed;
			if (grid_indep)
				grid.independent_seeds = true;
			auto results = run_grid(grid, grid_threads == 0 ? std::thread::hardware_concurrency() : grid_threads);
			auto files = emit_figure_data(results, grid_dir, &grid);
			std::ofstream manifest(std::filesystem::path(grid_dir) / "grid.json", std::ios::binary);
			manifest << grid_to_json(grid) << '\n';
			std::size_t failed = 0;
			for (const auto& r : results)
				if (!r.error.empty()) {
					++failed;
					std::cerr << "cell n=" << r.condition.n << " k=" << r.condition.k << " failed: " << r.error << '\n';
				}
			std::cout << "conditions=" << results.size() << " runs=" << results.size() * grid.replications
			          << " files=" << files.size() << " failed=" << failed << '\n';
			return kExitOk;
		}

		if (*val_cmd) {
			TaskSet ts = load_workload(val_workload);
			std::ifstream in(val_trace);
			if (!in)
				throw IoError("cannot open trace " + val_trace);
			SimOutcome o;
			try {
				o = read_trace_jsonl(in);
			} catch (const ParseError& e) {
				std::cout << "valid=0\n";
				std::cerr << "trace parse error: " << e.what() << '\n';
				return kExitRejected;
			}
			Validation v = replay_validate(ts, o);
			std::cout << "valid=" << (v.ok ? 1 : 0) << '\n';
			if (!v.ok) {
				std::cerr << "violation: " << v.violation << '\n';
				return kExitRejected;
			}
			return kExitOk;
		}
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitUsage;
	}
	return kExitUsage;
}
