#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace diagforge {

// Raised when an evaluation hits a configured step or size cap. This is an
// engineering limit of the host, never a claim about divergence.
class ResourceExhausted : public std::runtime_error {
 public:
  enum class Limit { Steps, Bits, Memory };

  ResourceExhausted(Limit limit, std::uint64_t cap, const std::string& what)
      : std::runtime_error(what), limit_(limit), cap_(cap) {}

  Limit limit() const noexcept { return limit_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  Limit limit_;
  std::uint64_t cap_;
};

// Text could not be parsed. `position` is a byte offset for term sources and
// a 1-based line number for machine files (see `is_line`).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, bool is_line, const std::string& what)
      : std::runtime_error(what), position_(position), is_line_(is_line) {}

  std::size_t position() const noexcept { return position_; }
  bool is_line() const noexcept { return is_line_; }

 private:
  std::size_t position_;
  bool is_line_;
};

// A term constructor was given children whose arities do not fit.
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The head of a space-bounded run tried to leave its region.
class OutOfSpace : public std::runtime_error {
 public:
  OutOfSpace(std::uint64_t step, std::int64_t cell)
      : std::runtime_error("head left the bounded region at step " +
                           std::to_string(step) + " (cell " +
                           std::to_string(cell) + ")"),
        step_(step),
        cell_(cell) {}

  std::uint64_t step() const noexcept { return step_; }
  std::int64_t cell() const noexcept { return cell_; }

 private:
  std::uint64_t step_;
  std::int64_t cell_;
};

// An accelerating machine changed its output square a second time, or wrote
// something other than 1 to it.
class WriteOnceViolation : public std::runtime_error {
 public:
  WriteOnceViolation(std::uint64_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

// A diagonal recipe failed validation (fixed point in k, y0 outside Y, ...).
class JSpecRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was asked to do something its contract forbids for this input.
class PreconditionUnmet : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace diagforge
