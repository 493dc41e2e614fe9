#pragma once

// Shared error type.  Every precondition violation raised by the library
// carries a machine-checkable kind plus a human-readable message; the CLI
// maps kinds onto exit codes (resource guards separate from validation).

#include <stdexcept>
#include <string>

namespace rollmix {

enum class ErrorKind {
  ParseError,              // malformed input document / rational / schema text
  ConfigError,             // inconsistent run configuration
  IoError,                 // file unreadable / unwritable
  NotCovering,             // cover misses at least one state
  EmptyCoverSet,           // cover contains an empty set
  UnknownState,            // reference to an undeclared state
  UnknownAction,           // reference to an undeclared action
  UnknownTerminal,         // reference to an undeclared terminal
  UnknownCoverSet,         // reference to an undeclared cover set
  DuplicateState,          // a state occurs twice in the population
  DuplicateTerminal,       // a terminal label occurs twice in the population
  MissingState,            // a declared state never occurs in the population
  EmptyRollout,            // rollout with no states
  EmptyPopulation,         // population with no rollouts
  IncompatibleTriple,      // crossover op whose set does not contain u and v
  PseudometricViolation,   // symmetry / zero-diagonal / triangle failure
  UnknownSchemaSymbol,     // schema references an unknown set/class/terminal
  TerminalUnreachable,     // payoff solve hit a class that cannot terminate
  MissingPayoff,           // terminal reachable in payoff solve has no payoff
  ClassTooLarge,           // equivalence-class enumeration exceeded its bound
  AllTruncated,            // every Monte Carlo sample hit the height cap
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "parse error";
    case ErrorKind::ConfigError: return "config error";
    case ErrorKind::IoError: return "io error";
    case ErrorKind::NotCovering: return "cover misses states";
    case ErrorKind::EmptyCoverSet: return "empty cover set";
    case ErrorKind::UnknownState: return "unknown state";
    case ErrorKind::UnknownAction: return "unknown action";
    case ErrorKind::UnknownTerminal: return "unknown terminal";
    case ErrorKind::UnknownCoverSet: return "unknown cover set";
    case ErrorKind::DuplicateState: return "duplicate state";
    case ErrorKind::DuplicateTerminal: return "duplicate terminal";
    case ErrorKind::MissingState: return "state missing from population";
    case ErrorKind::EmptyRollout: return "empty rollout";
    case ErrorKind::EmptyPopulation: return "empty population";
    case ErrorKind::IncompatibleTriple: return "incompatible crossover triple";
    case ErrorKind::PseudometricViolation: return "pseudometric violation";
    case ErrorKind::UnknownSchemaSymbol: return "unknown schema symbol";
    case ErrorKind::TerminalUnreachable: return "terminal unreachable";
    case ErrorKind::MissingPayoff: return "missing payoff";
    case ErrorKind::ClassTooLarge: return "class too large";
    case ErrorKind::AllTruncated: return "all samples truncated";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Resource guards get a distinct process exit code (2); everything else
  // that fails maps to exit code 1.
  bool is_resource_guard() const {
    return kind_ == ErrorKind::ClassTooLarge || kind_ == ErrorKind::AllTruncated;
  }

 private:
  ErrorKind kind_;
};

}  // namespace rollmix
