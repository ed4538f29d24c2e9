// Error taxonomy shared by all modules. Every throwing path uses Error with
// a stable ErrorKind so the CLI can map failures to machine-readable
// reports and exit codes without string matching.
#pragma once

#include <stdexcept>
#include <string>

namespace equicov {

enum class ErrorKind {
  NotAPermutation,
  GroupTooLarge,
  MixedGroups,
  IndexOutOfRange,
  EmptySimplex,
  NotAGraph,
  NotASubcomplex,
  NotAHomomorphism,
  NotSimplicial,
  NotRegular,
  MultiEdge,
  NotConnected,
  NotASurface,
  BranchVertexMissing,
  InvalidGeneratingVector,
  SearchBudgetExceeded,
  VerificationFailed,
  NotPrimePowers,
  ParityViolation,
  CaseNotCovered,
  EmptyDegreeList,
  ParseError,
  UnknownCommand,
  Internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::MixedGroups: return "MixedGroups";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptySimplex: return "EmptySimplex";
    case ErrorKind::NotAGraph: return "NotAGraph";
    case ErrorKind::NotASubcomplex: return "NotASubcomplex";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::MultiEdge: return "MultiEdge";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotASurface: return "NotASurface";
    case ErrorKind::BranchVertexMissing: return "BranchVertexMissing";
    case ErrorKind::InvalidGeneratingVector: return "InvalidGeneratingVector";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::NotPrimePowers: return "NotPrimePowers";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::CaseNotCovered: return "CaseNotCovered";
    case ErrorKind::EmptyDegreeList: return "EmptyDegreeList";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// True for errors caused by library bugs rather than caller input; the CLI
// reports these differently (they are never expected in normal operation).
inline bool is_internal_error(ErrorKind k) { return k == ErrorKind::Internal; }

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Assert-style check for invariants of this library itself. A failure here
// is a bug, not a user error.
inline void require_internal(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::Internal, std::string("invariant violated: ") + what);
}

}  // namespace equicov
