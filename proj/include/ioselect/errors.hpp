#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ioselect {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (JSON instance, cost literal, CLI list).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A system that fails `validate`, or an operation precondition on indices.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exact cost arithmetic left the 64-bit range.
class CostOverflow : public Error {
 public:
  using Error::Error;
};

/// An exhaustive oracle was asked to run beyond its size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// No feasible solution exists. `witness` names what cannot be satisfied.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// The bipartite system graph has no perfect matching. `hall_set` holds left
/// vertex ids whose neighbourhood is strictly smaller than the set itself.
class NoPerfectMatching : public Infeasible {
 public:
  NoPerfectMatching(const std::string& what, std::string witness,
                    std::vector<int> hall_set)
      : Infeasible(what, std::move(witness)), hall_set_(std::move(hall_set)) {}
  const std::vector<int>& hall_set() const noexcept { return hall_set_; }

 private:
  std::vector<int> hall_set_;
};

/// A selection handed to `selection_to_cover` does not make every state
/// accessible in the reduced system.
class InfeasibleSelection : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

/// The random generator exhausted its retry budget.
class GenerationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace ioselect
