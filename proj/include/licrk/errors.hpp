#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace licrk {

enum class Errc {
  invalid_argument,
  domain,
  config,
  singular_matrix,
  no_convergence,
  diverged,
  first_step,
  unsupported,
};

const char* to_string(Errc code);

/// Library-wide exception. The code classifies the failure so callers (the
/// harness in particular) can react to numerical breakdown without string
/// matching. Integration loops attach the index of the failing step.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(Errc code, const std::string& message, std::size_t step)
      : std::runtime_error(message + " (step " + std::to_string(step) + ")"),
        code_(code),
        step_(step) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  Errc code_;
  std::optional<std::size_t> step_;
};

}  // namespace licrk
