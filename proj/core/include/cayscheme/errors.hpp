#pragma once

#include <stdexcept>
#include <string>

namespace cayscheme {

// Base class for everything this library throws on bad input or an
// internal consistency fault. Verification *failures* (a theorem check
// that does not hold) are report content, not exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The multiplication table is not a group (no identity, missing inverse,
// or an associativity violation; the message names the witness).
class NotAGroupError : public Error {
 public:
  using Error::Error;
};

// semidirect(m, k, a) with a^k != 1 (mod m).
class BadActionError : public Error {
 public:
  using Error::Error;
};

// Requested group order exceeds the configured cap.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A partition block whose elementwise inverse is not itself a block;
// such a partition cannot generate a transpose-closed scheme.
class NotInverseCompatibleError : public Error {
 public:
  using Error::Error;
};

// Some class matrix restricted to an invariant subspace has a
// non-integer eigenvalue; the input partition is not PC-closed.
class NonIntegralSchemeError : public Error {
 public:
  using Error::Error;
};

// A matrix in the family is not diagonalizable mod p; the caller should
// move on to the next admissible prime.
class SplitFailureError : public Error {
 public:
  using Error::Error;
};

// A common eigenspace of the class algebra mod p has dimension > 1.
class NonSimpleSpectrumError : public Error {
 public:
  using Error::Error;
};

// Mod-p multiplicities did not lift to integers summing to n.
class LiftFailureError : public Error {
 public:
  using Error::Error;
};

// The two frame-quotient computations disagree (internal fault).
class FrameQuotientMismatchError : public Error {
 public:
  using Error::Error;
};

// Singular matrix where an invertible one is required.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Malformed input document or descriptor.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cayscheme
