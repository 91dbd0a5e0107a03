#pragma once

#include "myosched/task.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace myosched {

/// Inclusive integer range, written `lo..hi` on the command line and in files.
struct IntRange {
	std::int64_t lo = 0;
	std::int64_t hi = 0;

	static IntRange parse(const std::string& text);
	std::string to_string() const;
	bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }

	friend auto operator<=>(const IntRange&, const IntRange&) = default;
};

/// An immutable, id-ordered collection of tasks. Ids are dense: 0..n-1.
class TaskSet {
public:
	TaskSet() = default;
	/// Sorts by id and validates every task plus id density.
	explicit TaskSet(std::vector<Task> tasks, std::uint64_t seed = 0);

	std::span<const Task> tasks() const noexcept { return tasks_; }
	const Task& operator[](int id) const { return tasks_.at(static_cast<std::size_t>(id)); }
	std::size_t size() const noexcept { return tasks_.size(); }
	bool empty() const noexcept { return tasks_.empty(); }
	std::uint64_t seed() const noexcept { return seed_; }

	/// One past the largest resource id referenced by any task.
	int resource_count() const noexcept { return resource_count_; }

	/// Stable 64-bit digest of the task contents (seed excluded).
	std::uint64_t content_hash() const noexcept;

	/// Equality of the tasks only; the seed is provenance, not content.
	bool same_tasks(const TaskSet& other) const { return tasks_ == other.tasks_; }

private:
	std::vector<Task> tasks_;
	std::uint64_t seed_ = 0;
	int resource_count_ = 0;
};

struct WorkloadParams {
	std::size_t n = 200;
	IntRange proc_range{10, 11};
	std::int64_t laxity = 100;
	IntRange arrival_span{0, 3};
	int n_resources = 3;
	double request_prob = 0.2;
	double share_prob = 0.5;

	/// Throws ConfigError.
	void validate() const;
};

/// Name of the pseudo-random generator behind generate(); recorded in result
/// metadata so runs can be compared per seed.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Seeded random task set. A pure function of (params, seed).
TaskSet generate(const WorkloadParams& params, std::uint64_t seed);

inline constexpr const char* kWorkloadHeader = "# myosched-workload v1";

TaskSet read_workload(std::istream& in);
void write_workload(std::ostream& out, const TaskSet& ts);

TaskSet load_workload(const std::filesystem::path& path);
void save_workload(const TaskSet& ts, const std::filesystem::path& path);

} // namespace myosched
