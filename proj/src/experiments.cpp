#include "myosched/experiments.hpp"

#include "myosched/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace myosched {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void ExperimentGrid::validate() const
{
	if (loads.empty() || proc_ranges.empty() || ks.empty() || ws.empty())
		throw ConfigError("grid: loads, proc_ranges, ks and ws must be non-empty");
	if (replications < 1)
		throw ConfigError("grid: replications must be >= 1");
	for (auto k : ks) {
		if (k < 1)
			throw ConfigError("grid: window sizes must be >= 1");
		if (k == 1 && !allow_k1)
			throw ConfigError("grid: window size 1 degenerates to EDF; set allow_k1 to include it");
	}
	for (const auto& w : ws)
		if (w < Rational(0))
			throw ConfigError("grid: weights must be non-negative");
	overhead.validate();
	for (auto n : loads)
		for (auto p : proc_ranges)
			workload(n, p).validate();
}

WorkloadParams ExperimentGrid::workload(std::size_t n, IntRange proc) const
{
	WorkloadParams p;
	p.n = n;
	p.proc_range = proc;
	p.laxity = laxity;
	p.arrival_span = arrival_span;
	p.n_resources = n_resources;
	p.request_prob = request_prob;
	p.share_prob = share_prob;
	return p;
}

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v)
{
	return splitmix(h ^ splitmix(v));
}

IntRange range_from_json(const json& j)
{
	if (j.is_string())
		return IntRange::parse(j.get<std::string>());
	if (j.is_array() && j.size() == 2) {
		IntRange r{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
		if (r.lo > r.hi)
			throw ConfigError("grid: range with lo > hi");
		return r;
	}
	throw ConfigError("grid: range must be \"lo..hi\" or [lo, hi]");
}

Rational weight_from_json(const json& j)
{
	if (j.is_string())
		return Rational::parse(j.get<std::string>());
	if (j.is_number_integer())
		return Rational(j.get<std::int64_t>());
	if (j.is_number()) {
		// decimal literals like 0.5 come back exact through %.12g
		std::ostringstream ss;
		ss << std::setprecision(12) << j.get<double>();
		return Rational::parse(ss.str());
	}
	throw ConfigError("grid: weight must be a number or string");
}

} // namespace

ExperimentGrid parse_grid_json(std::string_view text)
{
	ExperimentGrid g;
	try {
		json j = json::parse(text);
		if (!j.is_object())
			throw ConfigError("grid config must be a JSON object");
		static const char* known[] = {"loads", "proc_ranges", "laxity", "ks", "ws", "spec_kind",
		                              "replications", "base_seed", "overhead", "arrival_span", "n_resources",
		                              "request_prob", "share_prob", "independent_seeds", "allow_k1"};
		for (auto it = j.begin(); it != j.end(); ++it)
			if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
				throw ConfigError("grid: unknown field '" + it.key() + "'");

		if (j.contains("loads"))
			g.loads = j["loads"].get<std::vector<std::size_t>>();
		if (j.contains("proc_ranges")) {
			g.proc_ranges.clear();
			for (const auto& r : j["proc_ranges"])
				g.proc_ranges.push_back(range_from_json(r));
		}
		if (j.contains("laxity"))
			g.laxity = j["laxity"].get<std::int64_t>();
		if (j.contains("ks"))
			g.ks = j["ks"].get<std::vector<std::size_t>>();
		if (j.contains("ws")) {
			g.ws.clear();
			for (const auto& w : j["ws"])
				g.ws.push_back(weight_from_json(w));
		}
		if (j.contains("spec_kind"))
			g.spec_kind = parse_kind(j["spec_kind"].get<std::string>());
		if (j.contains("replications"))
			g.replications = j["replications"].get<std::size_t>();
		if (j.contains("base_seed"))
			g.base_seed = j["base_seed"].get<std::uint64_t>();
		if (j.contains("overhead")) {
			const auto& o = j["overhead"];
			g.overhead.c0 = o.value("c0", g.overhead.c0);
			g.overhead.c1 = o.value("c1", g.overhead.c1);
		}
		if (j.contains("arrival_span"))
			g.arrival_span = range_from_json(j["arrival_span"]);
		if (j.contains("n_resources"))
			g.n_resources = j["n_resources"].get<int>();
		if (j.contains("request_prob"))
			g.request_prob = j["request_prob"].get<double>();
		if (j.contains("share_prob"))
			g.share_prob = j["share_prob"].get<double>();
		if (j.contains("independent_seeds"))
			g.independent_seeds = j["independent_seeds"].get<bool>();
		if (j.contains("allow_k1"))
			g.allow_k1 = j["allow_k1"].get<bool>();
	} catch (const json::exception& e) {
		throw ConfigError(std::string("grid config: ") + e.what());
	}
	g.validate();
	return g;
}

ExperimentGrid load_grid(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw IoError("cannot open grid config " + path.string());
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_grid_json(ss.str());
}

std::string grid_to_json(const ExperimentGrid& g)
{
	ojson j;
	j["loads"] = g.loads;
	j["proc_ranges"] = ojson::array();
	for (const auto& r : g.proc_ranges)
		j["proc_ranges"].push_back(r.to_string());
	j["laxity"] = g.laxity;
	j["ks"] = g.ks;
	j["ws"] = ojson::array();
	for (const auto& w : g.ws)
		j["ws"].push_back(w.to_string());
	j["spec_kind"] = kind_name(g.spec_kind);
	j["replications"] = g.replications;
	j["base_seed"] = g.base_seed;
	j["overhead"] = {{"c0", g.overhead.c0}, {"c1", g.overhead.c1}};
	j["arrival_span"] = g.arrival_span.to_string();
	j["n_resources"] = g.n_resources;
	j["request_prob"] = g.request_prob;
	j["share_prob"] = g.share_prob;
	j["independent_seeds"] = g.independent_seeds;
	j["allow_k1"] = g.allow_k1;
	return j.dump(2);
}

std::uint64_t workload_seed(const ExperimentGrid& grid, std::size_t n, IntRange proc, std::size_t rep,
                            std::size_t k, const Rational& w)
{
	std::uint64_t h = splitmix(grid.base_seed);
	h = combine(h, n);
	h = combine(h, static_cast<std::uint64_t>(proc.lo));
	h = combine(h, static_cast<std::uint64_t>(proc.hi));
	h = combine(h, rep);
	if (grid.independent_seeds) {
		h = combine(h, k);
		h = combine(h, static_cast<std::uint64_t>(w.num()));
		h = combine(h, static_cast<std::uint64_t>(w.den()));
	}
	return h;
}

namespace {

ConditionResult run_condition(const ExperimentGrid& grid, const ConditionKey& key)
{
	ConditionResult res;
	res.condition = key;
	try {
		SimConfig cfg;
		cfg.spec = HeuristicSpec(grid.spec_kind, key.w);
		cfg.k = key.k;
		cfg.overhead = grid.overhead;
		const WorkloadParams params = grid.workload(key.n, key.proc_range);
		for (std::size_t r = 0; r < grid.replications; ++r) {
			const auto seed = workload_seed(grid, key.n, key.proc_range, r, key.k, key.w);
			const TaskSet ts = generate(params, seed);
			const SimOutcome o = simulate(ts, cfg);
			res.per_rep.push_back({seed, ts.content_hash(), o.completed, o.discarded, o.makespan, o.overhead_total});
		}
		std::size_t sum = 0;
		res.min_completed = res.per_rep.front().completed;
		res.max_completed = res.per_rep.front().completed;
		for (const auto& r : res.per_rep) {
			sum += r.completed;
			res.min_completed = std::min(res.min_completed, r.completed);
			res.max_completed = std::max(res.max_completed, r.completed);
		}
		res.mean_completed = static_cast<double>(sum) / static_cast<double>(res.per_rep.size());
	} catch (const std::exception& e) {
		res.error = e.what();
	}
	return res;
}

} // namespace

std::vector<ConditionResult> run_grid(const ExperimentGrid& grid, unsigned threads)
{
	grid.validate();
	std::vector<ConditionKey> keys;
	for (auto n : grid.loads)
		for (auto p : grid.proc_ranges)
			for (const auto& w : grid.ws)
				for (auto k : grid.ks)
					keys.push_back({n, p, k, HeuristicSpec(grid.spec_kind, w).w()});
	std::sort(keys.begin(), keys.end());
	keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

	std::vector<ConditionResult> results(keys.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < keys.size(); i = next++)
			results[i] = run_condition(grid, keys[i]);
	};
	threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(keys.size())));
	if (threads == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (unsigned t = 0; t < threads; ++t)
			pool.emplace_back(worker);
	}
	return results;
}

std::string format_mean(double v)
{
	std::ostringstream ss;
	ss << std::fixed << std::setprecision(6) << v;
	return ss.str();
}

std::vector<std::filesystem::path> emit_figure_data(const std::vector<ConditionResult>& results,
                                                    const std::filesystem::path& dir, const ExperimentGrid* grid)
{
	if (results.empty())
		throw UsageError("emit_figure_data: no results");
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if (ec)
		throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

	using GroupKey = std::tuple<std::size_t, IntRange, Rational>;
	std::map<GroupKey, std::vector<const ConditionResult*>> groups;
	for (const auto& r : results)
		groups[{r.condition.n, r.condition.proc_range, r.condition.w}].push_back(&r);

	std::vector<std::filesystem::path> written;
	for (auto& [gk, rows] : groups) {
		std::sort(rows.begin(), rows.end(),
		          [](const ConditionResult* a, const ConditionResult* b) { return a->condition.k < b->condition.k; });
		const auto& [n, proc, w] = gk;
		std::size_t reps = 0;
		for (const auto* r : rows)
			reps = std::max(reps, r->per_rep.size());

		auto path = dir / ("fig_n" + std::to_string(n) + "_p" + std::to_string(proc.lo) + "-" +
		                   std::to_string(proc.hi) + "_w" + w.to_string() + ".csv");
		std::ofstream out(path, std::ios::binary);
		if (!out)
			throw IoError("cannot write " + path.string());
		out << kFigureHeader << '\n';
		out << "# n=" << n << " proc=" << proc.to_string() << " w=" << w.to_string();
		if (grid)
			out << " heuristic=" << kind_name(grid->spec_kind) << " laxity=" << grid->laxity
			    << " c0=" << grid->overhead.c0 << " c1=" << grid->overhead.c1 << " base_seed=" << grid->base_seed
			    << " paired_seeds=" << (grid->independent_seeds ? 0 : 1);
		out << " generator=" << kGeneratorName << '\n';
		out << 'k';
		for (std::size_t i = 1; i <= reps; ++i)
			out << ",rep_" << i;
		out << ",mean\n";
		for (const auto* r : rows) {
			if (!r->error.empty()) {
				out << "# k=" << r->condition.k << " failed: " << r->error << '\n';
				continue;
			}
			out << r->condition.k;
			for (const auto& rep : r->per_rep)
				out << ',' << rep.completed;
			out << ',' << format_mean(r->mean_completed) << '\n';
		}
		if (!out)
			throw IoError("write failed for " + path.string());
		written.push_back(path);
	}
	return written;
}

} // namespace myosched
