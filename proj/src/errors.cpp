#include "licrk/errors.hpp"

namespace licrk {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::domain: return "domain";
    case Errc::config: return "config";
    case Errc::singular_matrix: return "singular_matrix";
    case Errc::no_convergence: return "no_convergence";
    case Errc::diverged: return "diverged";
    case Errc::first_step: return "first_step";
    case Errc::unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace licrk
