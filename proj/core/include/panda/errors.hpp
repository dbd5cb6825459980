#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace panda {

enum class ErrorKind {
  domain,          // argument outside the mathematical domain of an operation
  convergence,     // iterative solver failed
  configuration,   // inconsistent grids or options
  grid,            // numerical grid cannot resolve the requested quantity
  selection_rule,  // angular-momentum selection rule violated
  file,            // missing or malformed input/output file
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error(ErrorKind::convergence, w) {}
};
struct ConfigurationError : Error {
  explicit ConfigurationError(const std::string& w) : Error(ErrorKind::configuration, w) {}
};
struct GridError : Error {
  explicit GridError(const std::string& w) : Error(ErrorKind::grid, w) {}
};
struct SelectionRuleError : Error {
  explicit SelectionRuleError(const std::string& w) : Error(ErrorKind::selection_rule, w) {}
};
struct FileError : Error {
  explicit FileError(const std::string& w) : Error(ErrorKind::file, w) {}
};

}  // namespace panda
