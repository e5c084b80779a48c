#pragma once

#include <stdexcept>
#include <string>

namespace qtangent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands drawn from incompatible scalar towers (e.g. Q(zeta_4) and Q(zeta_6)).
class MixedTowerError : public Error {
public:
  using Error::Error;
};

/// Evaluation of a rational function at a pole.
class PoleError : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// Malformed user input: bad group specs, bad permutations, bad JSON.
class InputError : public Error {
public:
  using Error::Error;
};

/// Group enumeration exceeded the configured element cap.
class SizeError : public Error {
public:
  using Error::Error;
};

/// Arguments living on incompatible Hopf algebra sides or ambient spaces.
class SideMismatch : public Error {
public:
  using Error::Error;
};

class DegeneratePairing : public Error {
public:
  using Error::Error;
};

/// A subspace that should be stable under an action is not.
class StabilityError : public Error {
public:
  using Error::Error;
};

/// A construction produced the zero tangent space where a nonzero one was required.
class EmptyTangentError : public Error {
public:
  using Error::Error;
};

/// An internal exact identity failed (character orthogonality, centrality, ...).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace qtangent
