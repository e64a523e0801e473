#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace olg {

enum class ErrorKind {
  Domain,          // argument outside the function's domain
  Validation,      // malformed parameters or configuration
  Branch,          // operation called on the wrong gamma branch
  Nonexistence,    // requested equilibrium does not exist in this regime
  Inconsistency,   // request contradicts the regime (e.g. welfare of a missing equilibrium)
  InfeasibleCredit,
  Numeric,         // root finder failed to bracket or converge
  Horizon,         // terminal horizon too short (non-positive price on the path)
  Applicability,   // diagnostic window leaves the balanced-growth tail
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace olg
