#pragma once

#include <stdexcept>
#include <string>

namespace freelevy {

enum class ErrorKind {
  Domain,
  Pole,
  Convergence,
  Boundary,
  Inversion,
  Divergence,
  Division,
  Hypothesis,
  NotInfinitelyDivisible,
  Construction,
  Continuation,
  Class,
  Truncation,
  Numeric,
  Parse,
};

const char* error_kind_name(ErrorKind k);

// Every library failure is reported through this one type; `kind` lets
// callers branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::Inversion: return "inversion";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Division: return "division";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::NotInfinitelyDivisible: return "not-infinitely-divisible";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Continuation: return "continuation";
    case ErrorKind::Class: return "class";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace freelevy
