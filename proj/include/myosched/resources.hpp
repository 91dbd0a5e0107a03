#pragma once

#include "myosched/task.hpp"

#include <vector>

namespace myosched {

/// Earliest times a resource can next be granted in each mode.
struct ResourceSlot {
	Time free_at_exclusive = 0;
	Time free_at_shared = 0;

	friend bool operator==(const ResourceSlot&, const ResourceSlot&) = default;
};

/// Availability of the single CPU and every resource given a committed
/// schedule prefix. A plain value: commit() returns a new table, so
/// speculative copies are free of aliasing.
struct AvailabilityTable {
	std::vector<ResourceSlot> resources;
	Time cpu_free_at = 0;

	AvailabilityTable() = default;
	explicit AvailabilityTable(int n_resources) : resources(static_cast<std::size_t>(n_resources)) {}

	/// free_at_shared <= free_at_exclusive everywhere and no negative times.
	bool consistent() const noexcept;

	friend bool operator==(const AvailabilityTable&, const AvailabilityTable&) = default;
};

/// max(t_gen, cpu_free_at, free time of every requested resource in the
/// requested mode). Throws ConfigError for an unknown resource id.
Time earliest_start(const Task& task, const AvailabilityTable& avail);

/// Table after running `task` from `start` to `start + t_proc`.
/// Throws SchedulingLogicError if start < earliest_start(task, avail).
AvailabilityTable commit(const Task& task, Time start, AvailabilityTable avail);

} // namespace myosched
