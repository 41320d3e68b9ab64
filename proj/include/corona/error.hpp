#pragma once

#include <stdexcept>
#include <string>

namespace corona {

enum class ErrorKind {
  domain,
  ill_conditioned,
  corona_violated,
  solve_failed,
  refinement_exhausted,
  internal,
  config,
};

const char* to_string(ErrorKind kind);

// Every failure in the library surfaces as a CoronaError. `stage` names the
// pipeline step that raised it (empty for leaf operations).
class CoronaError : public std::runtime_error {
 public:
  CoronaError(ErrorKind kind, const std::string& message, std::string stage = {})
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace corona
