#pragma once

#include "myosched/heuristics.hpp"
#include "myosched/simulation.hpp"
#include "myosched/workload.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace myosched {

/// Cross product of loads, processing-time ranges, window sizes and weights,
/// each cell replicated with its own workload seed.
struct ExperimentGrid {
	std::vector<std::size_t> loads{200, 500, 1000};
	std::vector<IntRange> proc_ranges{{10, 11}};
	std::int64_t laxity = 100;
	std::vector<std::size_t> ks{2, 4, 6, 8, 10};
	std::vector<Rational> ws{Rational(1, 2), Rational(1)};
	HeuristicKind spec_kind = HeuristicKind::DeadlinePlusWeightedEst;
	std::size_t replications = 5;
	std::uint64_t base_seed = 1;
	OverheadModel overhead;

	// workload shape beyond the varied parameters
	IntRange arrival_span{0, 3};
	int n_resources = 3;
	double request_prob = 0.0;
	double share_prob = 0.5;

	/// Re-randomize workloads per (k, w) instead of pairing them.
	bool independent_seeds = false;
	/// Window size 1 is rejected unless this is set.
	bool allow_k1 = false;

	void validate() const;
	WorkloadParams workload(std::size_t n, IntRange proc) const;
};

/// JSON with field names as in ExperimentGrid. Missing fields keep defaults;
/// proc ranges may be written "10..11" or [10, 11].
ExperimentGrid parse_grid_json(std::string_view text);
ExperimentGrid load_grid(const std::filesystem::path& path);
std::string grid_to_json(const ExperimentGrid& grid);

struct ConditionKey {
	std::size_t n = 0;
	IntRange proc_range;
	std::size_t k = 0;
	Rational w;

	friend auto operator<=>(const ConditionKey&, const ConditionKey&) = default;
	friend bool operator==(const ConditionKey&, const ConditionKey&) = default;
};

struct RunSummary {
	std::uint64_t seed = 0;
	std::uint64_t taskset_hash = 0;
	std::size_t completed = 0;
	std::size_t discarded = 0;
	Time makespan = 0;
	Time overhead_total = 0;

	friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct ConditionResult {
	ConditionKey condition;
	std::vector<RunSummary> per_rep;
	double mean_completed = 0.0;
	std::size_t min_completed = 0;
	std::size_t max_completed = 0;
	std::string error; ///< non-empty when the cell failed

	friend bool operator==(const ConditionResult&, const ConditionResult&) = default;
};

/// Workload seed of replication `rep` in a (n, proc) row. With paired seeds
/// (the default) k and w do not enter the hash.
std::uint64_t workload_seed(const ExperimentGrid& grid, std::size_t n, IntRange proc, std::size_t rep,
                            std::size_t k, const Rational& w);

/// Runs every cell; `threads` > 1 spreads cells over worker threads. Output is
/// sorted by condition and independent of the thread count.
std::vector<ConditionResult> run_grid(const ExperimentGrid& grid, unsigned threads = 1);

inline constexpr const char* kFigureHeader = "# myosched-figure v1";

/// One CSV per (n, proc_range, w) group with rows `k,rep_1..rep_R,mean`.
/// Returns the written paths in order. Throws UsageError on empty input.
std::vector<std::filesystem::path> emit_figure_data(const std::vector<ConditionResult>& results,
                                                    const std::filesystem::path& dir,
                                                    const ExperimentGrid* grid = nullptr);

/// Fixed six-decimal rendering used for the mean column.
std::string format_mean(double v);

} // namespace myosched
