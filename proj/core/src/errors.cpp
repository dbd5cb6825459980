#include "panda/errors.hpp"

namespace panda {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::grid: return "grid";
    case ErrorKind::selection_rule: return "selection_rule";
    case ErrorKind::file: return "file";
  }
  return "unknown";
}

}  // namespace panda
