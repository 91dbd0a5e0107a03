#include "myosched/errors.hpp"
#include "myosched/simulation.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace myosched {

using ojson = nlohmann::ordered_json;

void write_trace_jsonl(std::ostream& out, const SimOutcome& o)
{
	for (const auto& e : o.trace) {
		ojson j;
		j["t"] = e.t;
		j["kind"] = to_string(e.kind);
		j["task_id"] = e.task_id;
		if (e.kind == EventKind::Decide) {
			j["n_k"] = e.n_k;
			j["cost"] = e.cost;
		}
		out << j.dump() << '\n';
	}
	ojson s;
	s["kind"] = "summary";
	s["completed"] = o.completed;
	s["discarded"] = o.discarded;
	s["makespan"] = o.makespan;
	s["overhead_total"] = o.overhead_total;
	s["truncated"] = o.truncated;
	out << s.dump() << '\n';
}

SimOutcome read_trace_jsonl(std::istream& in)
{
	SimOutcome o;
	bool summary = false;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (line.empty())
			continue;
		if (summary)
			throw ParseError(lineno, "content after summary object");
		try {
			auto j = ojson::parse(line);
			const auto kind = j.at("kind").get<std::string>();
			if (kind == "summary") {
				o.completed = j.at("completed").get<std::size_t>();
				o.discarded = j.at("discarded").get<std::size_t>();
				o.makespan = j.at("makespan").get<Time>();
				o.overhead_total = j.at("overhead_total").get<Time>();
				o.truncated = j.value("truncated", false);
				summary = true;
				continue;
			}
			TraceEvent e;
			e.t = j.at("t").get<Time>();
			e.kind = parse_event_kind(kind);
			e.task_id = j.at("task_id").get<int>();
			if (e.kind == EventKind::Decide) {
				e.n_k = j.at("n_k").get<std::size_t>();
				e.cost = j.at("cost").get<Time>();
			}
			o.trace.push_back(e);
		} catch (const nlohmann::json::exception& ex) {
			throw ParseError(lineno, ex.what());
		} catch (const ConfigError& ex) {
			throw ParseError(lineno, ex.what());
		}
	}
	if (!summary)
		throw ParseError(lineno, "trace has no summary object");
	return o;
}

} // namespace myosched
