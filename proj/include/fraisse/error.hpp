#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fraisse {

enum class ErrorKind {
  invalid_input,
  inconsistent_task,
  precondition,
  too_large,
  budget_exhausted,
  search_exhausted,
  prefix_exhausted,
  bits_unavailable,
};

// Single exception type; the kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::uint64_t> index = std::nullopt)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  ErrorKind kind() const { return kind_; }
  // Bit index for prefix_exhausted.
  std::optional<std::uint64_t> index() const { return index_; }
  std::optional<std::size_t> step() const { return step_; }

  Error at_step(std::size_t step) const {
    Error e(kind_, "chain step " + std::to_string(step) + ": " + what(), index_);
    e.step_ = step;
    return e;
  }

 private:
  ErrorKind kind_;
  std::optional<std::uint64_t> index_;
  std::optional<std::size_t> step_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::inconsistent_task: return "inconsistent_task";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::too_large: return "too_large";
    case ErrorKind::budget_exhausted: return "budget_exhausted";
    case ErrorKind::search_exhausted: return "search_exhausted";
    case ErrorKind::prefix_exhausted: return "prefix_exhausted";
    case ErrorKind::bits_unavailable: return "bits_unavailable";
  }
  return "unknown";
}

inline Error invalid_input(const std::string& what) {
  return Error(ErrorKind::invalid_input, what);
}

}  // namespace fraisse
