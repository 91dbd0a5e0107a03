#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace myosched {

/// Bad parameters or configuration supplied by the caller.
class ConfigError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// API misuse, e.g. asking for the window of an empty remaining set.
class UsageError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
	ParseError(std::size_t line, const std::string& what);
	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

/// A task violates one of its own constraints.
class InvariantError : public std::runtime_error {
public:
	InvariantError(int task_id, const std::string& field, const std::string& what);
	int task_id() const noexcept { return task_id_; }
	const std::string& field() const noexcept { return field_; }

private:
	int task_id_;
	std::string field_;
};

/// Internal consistency failure inside a scheduler. Always a bug.
class SchedulingLogicError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

} // namespace myosched
