#include "corona/error.hpp"

namespace corona {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::ill_conditioned: return "ill-conditioned";
    case ErrorKind::corona_violated: return "corona-violated";
    case ErrorKind::solve_failed: return "solve-failed";
    case ErrorKind::refinement_exhausted: return "refinement-exhausted";
    case ErrorKind::internal: return "internal";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

}  // namespace corona
