#include "myosched/workload.hpp"

#include "myosched/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace myosched {

void validate_task(const Task& task, int n_resources)
{
	if (task.t_gen < 0)
		throw InvariantError(task.id, "t_gen", "must be >= 0, got " + std::to_string(task.t_gen));
	if (task.t_proc < 1)
		throw InvariantError(task.id, "t_proc", "must be >= 1, got " + std::to_string(task.t_proc));
	if (task.t_deadline < task.t_gen + task.t_proc)
		throw InvariantError(task.id, "t_deadline",
		                     "must be >= t_gen + t_proc = " + std::to_string(task.t_gen + task.t_proc) +
		                         ", got " + std::to_string(task.t_deadline));
	for (std::size_t i = 0; i < task.requests.size(); ++i) {
		int r = task.requests[i].resource_id;
		if (r < 0 || (n_resources >= 0 && r >= n_resources))
			throw InvariantError(task.id, "requests", "resource id " + std::to_string(r) + " out of range");
		for (std::size_t j = 0; j < i; ++j)
			if (task.requests[j].resource_id == r)
				throw InvariantError(task.id, "requests", "resource " + std::to_string(r) + " listed twice");
	}
}

IntRange IntRange::parse(const std::string& text)
{
	auto sep = text.find("..");
	auto to_int = [&](std::string_view s) {
		std::int64_t v = 0;
		auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (s.empty() || ec != std::errc() || p != s.data() + s.size())
			throw ConfigError("bad range '" + text + "', expected lo..hi");
		return v;
	};
	std::string_view sv = text;
	IntRange r;
	if (sep == std::string::npos) {
		r.lo = r.hi = to_int(sv);
	} else {
		r.lo = to_int(sv.substr(0, sep));
		r.hi = to_int(sv.substr(sep + 2));
	}
	if (r.lo > r.hi)
		throw ConfigError("bad range '" + text + "': lo > hi");
	return r;
}

std::string IntRange::to_string() const
{
	return std::to_string(lo) + ".." + std::to_string(hi);
}

TaskSet::TaskSet(std::vector<Task> tasks, std::uint64_t seed) : tasks_(std::move(tasks)), seed_(seed)
{
	std::sort(tasks_.begin(), tasks_.end(), [](const Task& a, const Task& b) { return a.id < b.id; });
	for (std::size_t i = 0; i < tasks_.size(); ++i) {
		const Task& t = tasks_[i];
		if (t.id != static_cast<int>(i))
			throw InvariantError(t.id, "id", "ids must be dense 0..n-1; expected " + std::to_string(i));
		validate_task(t);
		for (const auto& r : t.requests)
			resource_count_ = std::max(resource_count_, r.resource_id + 1);
	}
}

std::uint64_t TaskSet::content_hash() const noexcept
{
	std::uint64_t h = 1469598103934665603ULL;
	auto mix = [&h](std::int64_t v) {
		auto u = static_cast<std::uint64_t>(v);
		for (int i = 0; i < 8; ++i) {
			h ^= (u >> (8 * i)) & 0xff;
			h *= 1099511628211ULL;
		}
	};
	mix(static_cast<std::int64_t>(tasks_.size()));
	for (const Task& t : tasks_) {
		mix(t.id);
		mix(t.t_gen);
		mix(t.t_proc);
		mix(t.t_deadline);
		mix(static_cast<std::int64_t>(t.requests.size()));
		for (const auto& r : t.requests)
			mix(r.resource_id * 2 + (r.mode == AccessMode::Shared ? 1 : 0));
	}
	return h;
}

void WorkloadParams::validate() const
{
	if (n == 0)
		throw ConfigError("workload: n must be >= 1");
	if (proc_range.lo < 1 || proc_range.lo > proc_range.hi)
		throw ConfigError("workload: proc_range must satisfy 1 <= lo <= hi, got " + proc_range.to_string());
	if (laxity < 0)
		throw ConfigError("workload: laxity must be >= 0");
	if (arrival_span.lo < 0 || arrival_span.lo > arrival_span.hi)
		throw ConfigError("workload: arrival_span must satisfy 0 <= lo <= hi, got " + arrival_span.to_string());
	if (n_resources < 0)
		throw ConfigError("workload: n_resources must be >= 0");
	if (!(request_prob >= 0.0 && request_prob <= 1.0))
		throw ConfigError("workload: request_prob must be in [0,1]");
	if (!(share_prob >= 0.0 && share_prob <= 1.0))
		throw ConfigError("workload: share_prob must be in [0,1]");
}

namespace {

// Library distributions are implementation-defined; these are not, so a seed
// means the same workload on every platform.
std::int64_t uniform_int(std::mt19937_64& rng, IntRange r)
{
	auto span = static_cast<std::uint64_t>(r.hi - r.lo) + 1;
	if (span == 0)
		return static_cast<std::int64_t>(rng());
	std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
	std::uint64_t x;
	do {
		x = rng();
	} while (x >= limit);
	return r.lo + static_cast<std::int64_t>(x % span);
}

bool bernoulli(std::mt19937_64& rng, double p)
{
	double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
	return u < p;
}

} // namespace

TaskSet generate(const WorkloadParams& params, std::uint64_t seed)
{
	params.validate();
	std::mt19937_64 rng(seed);
	std::vector<Task> tasks;
	tasks.reserve(params.n);
	Time t_gen = 0;
	for (std::size_t i = 0; i < params.n; ++i) {
		Task t;
		t.id = static_cast<int>(i);
		if (i > 0)
			t_gen += uniform_int(rng, params.arrival_span);
		t.t_gen = t_gen;
		t.t_proc = uniform_int(rng, params.proc_range);
		t.t_deadline = t.t_gen + t.t_proc + params.laxity;
		for (int r = 0; r < params.n_resources; ++r) {
			if (!bernoulli(rng, params.request_prob))
				continue;
			auto mode = bernoulli(rng, params.share_prob) ? AccessMode::Shared : AccessMode::Exclusive;
			t.requests.push_back({r, mode});
		}
		tasks.push_back(std::move(t));
	}
	return TaskSet(std::move(tasks), seed);
}

namespace {

std::string trim(std::string_view s)
{
	auto b = s.find_first_not_of(" \t\r");
	if (b == std::string_view::npos)
		return {};
	auto e = s.find_last_not_of(" \t\r");
	return std::string(s.substr(b, e - b + 1));
}

std::int64_t field_int(const std::string& s, std::size_t line, const char* name)
{
	std::int64_t v = 0;
	auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || p != s.data() + s.size())
		throw ParseError(line, std::string("field ") + name + ": expected integer, got '" + s + "'");
	return v;
}

std::vector<ResourceRequest> parse_requests(const std::string& s, std::size_t line)
{
	std::vector<ResourceRequest> out;
	if (s == "-")
		return out;
	std::stringstream ss(s);
	std::string item;
	while (std::getline(ss, item, ';')) {
		item = trim(item);
		if (item.size() < 2)
			throw ParseError(line, "bad resource request '" + item + "'");
		char mode = item.back();
		if (mode != 'x' && mode != 's')
			throw ParseError(line, "resource mode must be 'x' or 's' in '" + item + "'");
		auto id = field_int(item.substr(0, item.size() - 1), line, "requests");
		out.push_back({static_cast<int>(id), mode == 's' ? AccessMode::Shared : AccessMode::Exclusive});
	}
	if (out.empty())
		throw ParseError(line, "empty resource list; use '-'");
	return out;
}

} // namespace

TaskSet read_workload(std::istream& in)
{
	std::string line;
	std::size_t lineno = 0;
	bool header_seen = false;
	std::vector<Task> tasks;
	while (std::getline(in, line)) {
		++lineno;
		std::string row = trim(line);
		if (!header_seen) {
			if (row != kWorkloadHeader)
				throw ParseError(lineno, std::string("missing header '") + kWorkloadHeader + "'");
			header_seen = true;
			continue;
		}
		if (row.empty() || row.front() == '#')
			continue;

		std::vector<std::string> cols;
		std::stringstream ss(row);
		std::string col;
		while (std::getline(ss, col, ','))
			cols.push_back(trim(col));
		if (cols.size() != 5)
			throw ParseError(lineno, "expected 5 columns id,t_gen,t_proc,t_deadline,requests; got " +
			                             std::to_string(cols.size()));
		Task t;
		t.id = static_cast<int>(field_int(cols[0], lineno, "id"));
		t.t_gen = field_int(cols[1], lineno, "t_gen");
		t.t_proc = field_int(cols[2], lineno, "t_proc");
		t.t_deadline = field_int(cols[3], lineno, "t_deadline");
		t.requests = parse_requests(cols[4], lineno);
		validate_task(t);
		tasks.push_back(std::move(t));
	}
	if (!header_seen)
		throw ParseError(lineno + 1, std::string("missing header '") + kWorkloadHeader + "'");
	return TaskSet(std::move(tasks), 0);
}

void write_workload(std::ostream& out, const TaskSet& ts)
{
	out << kWorkloadHeader << '\n';
	for (const Task& t : ts.tasks()) {
		out << t.id << ',' << t.t_gen << ',' << t.t_proc << ',' << t.t_deadline << ',';
		if (t.requests.empty()) {
			out << '-';
		} else {
			for (std::size_t i = 0; i < t.requests.size(); ++i) {
				if (i)
					out << ';';
				out << t.requests[i].resource_id << (t.requests[i].mode == AccessMode::Shared ? 's' : 'x');
			}
		}
		out << '\n';
	}
}

TaskSet load_workload(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw IoError("cannot open workload file " + path.string());
	return read_workload(in);
}

void save_workload(const TaskSet& ts, const std::filesystem::path& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw IoError("cannot write workload file " + path.string());
	write_workload(out, ts);
	if (!out)
		throw IoError("write failed for " + path.string());
}

} // namespace myosched
