#pragma once

#include <stdexcept>
#include <string>

namespace graft {

// Every domain failure carries one of these kinds so callers (and the CLI)
// can react without string matching.
enum class ErrorKind {
  NotHyperbolic,
  UnsupportedGenus,
  VertexGrazing,
  NoIntersection,
  TrivialClass,
  ParallelCurves,
  NearTangency,
  TrivialComponent,
  NonPrimitiveComponent,
  NonSimpleComponent,
  CrossingComponents,
  NonPositiveWeight,
  NotTransverse,
  TrivialSmoothingComponent,
  NonSimpleSmoothingComponent,
  PreconditionUnmet,
  NoSolutionFound,
  BudgetExhausted,
  UnknownFormat,
  Io,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorKind::VertexGrazing: return "VertexGrazing";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::TrivialClass: return "TrivialClass";
    case ErrorKind::ParallelCurves: return "ParallelCurves";
    case ErrorKind::NearTangency: return "NearTangency";
    case ErrorKind::TrivialComponent: return "TrivialComponent";
    case ErrorKind::NonPrimitiveComponent: return "NonPrimitiveComponent";
    case ErrorKind::NonSimpleComponent: return "NonSimpleComponent";
    case ErrorKind::CrossingComponents: return "CrossingComponents";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::TrivialSmoothingComponent: return "TrivialSmoothingComponent";
    case ErrorKind::NonSimpleSmoothingComponent: return "NonSimpleSmoothingComponent";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::NoSolutionFound: return "NoSolutionFound";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::UnknownFormat: return "UnknownFormat";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace graft
