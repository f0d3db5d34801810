#pragma once

#include <stdexcept>
#include <string>

namespace mgraph {

enum class ErrorKind {
  kInvalidSpec,
  kInvalidArgument,
  kOutOfDomain,       // closed form requested outside the hypotheses it is proven under
  kHypothesisNotMet,  // restricted closed form (e.g. the q*k^i diameter form) does not apply
  kResourceLimit,
  kParse,
  kConstructionFailed,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kOutOfDomain: return "out-of-domain";
    case ErrorKind::kHypothesisNotMet: return "hypothesis-not-met";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kConstructionFailed: return "construction-failed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mgraph
