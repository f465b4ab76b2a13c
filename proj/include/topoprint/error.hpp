#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topoprint {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed input bytes. `offset` is the byte position where parsing failed.
class ParseError : public Error {
public:
	ParseError(const std::string& what, std::size_t offset)
	    : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
	std::size_t offset() const { return offset_; }

private:
	std::size_t offset_;
};

class UnsupportedFormat : public Error {
public:
	using Error::Error;
};

/// A precondition on parameters was violated.
class ConfigError : public Error {
public:
	using Error::Error;
};

/// A resource budget (simplices, grid cells) would be exceeded.
class BudgetExceeded : public Error {
public:
	BudgetExceeded(const std::string& what, std::size_t requested, std::size_t budget)
	    : Error(what), requested_(requested), budget_(budget) {}
	std::size_t requested() const { return requested_; }
	std::size_t budget() const { return budget_; }

private:
	std::size_t requested_, budget_;
};

/// Geometry that cannot be processed (flat cloud, all-degenerate mesh, ...).
class GeometryError : public Error {
public:
	using Error::Error;
};

/// Bundle or graph failed an integrity check.
class ValidationError : public Error {
public:
	using Error::Error;
};

/// Raised by the pipeline; wraps the failing stage's error.
class StageError : public Error {
public:
	StageError(std::string stage, const std::string& detail)
	    : Error("stage '" + stage + "' failed: " + detail), stage_(std::move(stage)) {}
	const std::string& stage() const { return stage_; }

private:
	std::string stage_;
};

} // namespace topoprint
