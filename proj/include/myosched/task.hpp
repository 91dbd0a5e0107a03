#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace myosched {

/// Simulated time. The whole toolkit runs on an integer clock.
using Time = std::int64_t;

enum class AccessMode { Shared, Exclusive };

struct ResourceRequest {
	int resource_id = 0;
	AccessMode mode = AccessMode::Exclusive;

	friend auto operator<=>(const ResourceRequest&, const ResourceRequest&) = default;
};

/// One aperiodic, non-preemptive job.
///
/// The earliest start time is not stored here: it depends on what has already
/// been committed and is computed by earliest_start() in resources.hpp.
struct Task {
	int id = 0;
	Time t_gen = 0;      ///< arrival (generation) time
	Time t_proc = 1;     ///< worst-case processing time, used as the actual run length
	Time t_deadline = 1; ///< absolute deadline
	std::vector<ResourceRequest> requests;

	/// Slack measured from arrival: t_deadline - t_gen - t_proc.
	Time static_laxity() const noexcept { return t_deadline - t_gen - t_proc; }

	friend bool operator==(const Task&, const Task&) = default;
};

/// Throws InvariantError naming the task id and field on the first violation.
/// `n_resources` < 0 skips the resource-range check.
void validate_task(const Task& task, int n_resources = -1);

} // namespace myosched
