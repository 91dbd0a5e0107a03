#include "myosched/resources.hpp"

#include "myosched/errors.hpp"

#include <algorithm>

namespace myosched {

bool AvailabilityTable::consistent() const noexcept
{
	if (cpu_free_at < 0)
		return false;
	return std::all_of(resources.begin(), resources.end(), [](const ResourceSlot& s) {
		return s.free_at_shared >= 0 && s.free_at_shared <= s.free_at_exclusive;
	});
}

namespace {

const ResourceSlot& slot_for(const Task& task, const ResourceRequest& req, const AvailabilityTable& avail)
{
	if (req.resource_id < 0 || static_cast<std::size_t>(req.resource_id) >= avail.resources.size())
		throw ConfigError("task " + std::to_string(task.id) + " requests unknown resource " +
		                  std::to_string(req.resource_id) + " (table has " +
		                  std::to_string(avail.resources.size()) + ")");
	return avail.resources[static_cast<std::size_t>(req.resource_id)];
}

} // namespace

Time earliest_start(const Task& task, const AvailabilityTable& avail)
{
	Time est = std::max(task.t_gen, avail.cpu_free_at);
	for (const auto& req : task.requests) {
		const ResourceSlot& s = slot_for(task, req, avail);
		est = std::max(est, req.mode == AccessMode::Exclusive ? s.free_at_exclusive : s.free_at_shared);
	}
	return est;
}

AvailabilityTable commit(const Task& task, Time start, AvailabilityTable avail)
{
	if (start < earliest_start(task, avail))
		throw SchedulingLogicError("commit of task " + std::to_string(task.id) + " at " + std::to_string(start) +
		                           " precedes its earliest start");
	const Time end = start + task.t_proc;
	avail.cpu_free_at = end;
	for (const auto& req : task.requests) {
		ResourceSlot& s = avail.resources[static_cast<std::size_t>(req.resource_id)];
		if (req.mode == AccessMode::Exclusive) {
			s.free_at_exclusive = end;
			s.free_at_shared = end;
		} else {
			// concurrent shared grants stay possible; exclusive waits for this one
			s.free_at_exclusive = std::max(s.free_at_exclusive, end);
		}
	}
	return avail;
}

} // namespace myosched
