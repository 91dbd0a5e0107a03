#include "myosched/errors.hpp"

namespace myosched {

ParseError::ParseError(std::size_t line, const std::string& what)
	: std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

InvariantError::InvariantError(int task_id, const std::string& field, const std::string& what)
	: std::runtime_error("task " + std::to_string(task_id) + ", field " + field + ": " + what),
	  task_id_(task_id), field_(field)
{
}

} // namespace myosched
