#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdl {

enum class ErrorKind {
  OutOfDomain,
  PoleProximity,
  PoleHit,
  PoleOnContour,
  DivergentParameter,
  NonConvergent,
  QuadratureFailure,
  EvenCyclicOrder,
  GroupMismatch,
  UnsupportedGroup,
  DegeneratePoles,
  UnknownSuite,
  ExtrapolationUnstable,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::PoleOnContour: return "PoleOnContour";
    case ErrorKind::DivergentParameter: return "DivergentParameter";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::EvenCyclicOrder: return "EvenCyclicOrder";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::DegeneratePoles: return "DegeneratePoles";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (the verifier
// and the CLI) can map it to a report record or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qdl
