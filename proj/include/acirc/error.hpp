#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acirc {

enum class Errc {
  CycleDetected,
  BadArity,
  MultipleSources,
  NonBooleanNNFConstant,
  UnknownNode,
  UnknownVariable,
  IncompleteAssignment,
  InconsistentUnion,
  TooManyVariables,
  ScopeMismatch,
  NotPositive,
  NotSmoothDecomposable,
  NotSmooth,
  NotDecomposable,
  NotWeaklyDecomposable,
  NotDeterministic,
  TermExplosion,
  NegativeConstant,
  PreconditionTermScopesDiffer,
  AmbiguousPolarity,
  BadWeight,
  FlavorMismatch,
  InfeasibleDegree,
  GenerationTimeout,
  UnsupportedClass,
  BadPartition,
  BadMatching,
  RecursionViolated,
  SyntaxError,
  ForwardReference,
  DuplicateId,
  BadArgument,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::BadArity: return "BadArity";
    case Errc::MultipleSources: return "MultipleSources";
    case Errc::NonBooleanNNFConstant: return "NonBooleanNNFConstant";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::InconsistentUnion: return "InconsistentUnion";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::ScopeMismatch: return "ScopeMismatch";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NotSmoothDecomposable: return "NotSmoothDecomposable";
    case Errc::NotSmooth: return "NotSmooth";
    case Errc::NotDecomposable: return "NotDecomposable";
    case Errc::NotWeaklyDecomposable: return "NotWeaklyDecomposable";
    case Errc::NotDeterministic: return "NotDeterministic";
    case Errc::TermExplosion: return "TermExplosion";
    case Errc::NegativeConstant: return "NegativeConstant";
    case Errc::PreconditionTermScopesDiffer: return "PreconditionTermScopesDiffer";
    case Errc::AmbiguousPolarity: return "AmbiguousPolarity";
    case Errc::BadWeight: return "BadWeight";
    case Errc::FlavorMismatch: return "FlavorMismatch";
    case Errc::InfeasibleDegree: return "InfeasibleDegree";
    case Errc::GenerationTimeout: return "GenerationTimeout";
    case Errc::UnsupportedClass: return "UnsupportedClass";
    case Errc::BadPartition: return "BadPartition";
    case Errc::BadMatching: return "BadMatching";
    case Errc::RecursionViolated: return "RecursionViolated";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ForwardReference: return "ForwardReference";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace acirc
