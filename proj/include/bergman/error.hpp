#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Failure kinds raised by the library. The category decides the CLI exit
/// status: precondition violations exit with 3, numerical failures with 4.
enum class ErrorKind {
  InvalidArgument,
  PointOutsideDisk,
  DiameterOverflow,
  NoValidEpsilon,
  EmptyGrid,
  GridTooCoarse,
  SingularGram,
  InfeasibleConstraints,
  NonConvergence,
  QuadratureDivergence,
  StencilOutOfDomain,
  PositiveLaplacian,
  DegeneratePair,
  PairTooFar,
  DuplicatePoint,
  MalformedJet,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PointOutsideDisk: return "PointOutsideDisk";
    case ErrorKind::DiameterOverflow: return "DiameterOverflow";
    case ErrorKind::NoValidEpsilon: return "NoValidEpsilon";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::PositiveLaplacian: return "PositiveLaplacian";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::PairTooFar: return "PairTooFar";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::MalformedJet: return "MalformedJet";
  }
  return "Unknown";
}

/// True for failures of the numerics (as opposed to bad input).
inline bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularGram:
    case ErrorKind::NonConvergence:
    case ErrorKind::QuadratureDivergence:
    case ErrorKind::DiameterOverflow:
    case ErrorKind::NoValidEpsilon:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bergman
