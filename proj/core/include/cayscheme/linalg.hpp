#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cayscheme/matrix.hpp"
#include "cayscheme/polynomial.hpp"

namespace cayscheme {

// Exact dense linear algebra over the rationals and the integers.
//
// char_poly computes det(xI - M) by the trace-of-powers method (Newton's
// identities), exact in either mpq or mpz arithmetic. For integer
// matrices beyond a small dimension the power traces are computed modulo
// a set of 62-bit primes whose product provably exceeds twice the
// largest possible coefficient (a Hadamard-style bound), then lifted by
// CRT; the result is exact, and the tests cross-check it against the
// direct bigint computation.

// Characteristic polynomial of a square rational matrix. The returned
// polynomial is the monic char poly when that is integral (always the
// case for integer matrices and for restrictions of integer matrices to
// invariant rational subspaces); otherwise the primitive integer
// polynomial with the same roots.
IntPoly char_poly(const RatMat& m);
IntPoly char_poly(const IntMat& m);

// Exact rational characteristic polynomial (monic, lowest degree first).
RatPolyCoeffs char_poly_rational(const RatMat& m);

struct IntegerRoots {
  std::vector<std::pair<Int, int>> roots;  // (root, multiplicity), ascending
  IntPoly remainder;                       // no integer roots left
  int total_multiplicity() const {
    int t = 0;
    for (auto& r : roots) t += r.second;
    return t;
  }
};

// All integer roots with multiplicity. Candidates are divisors of the
// constant term of the primitive part, enumerated up to a root bound;
// `bound_hint`, when non-negative, caps the candidate magnitude (use the
// max valency / max degree when the polynomial is a scheme char poly).
IntegerRoots integer_roots(const IntPoly& p, const Int& bound_hint = Int(-1));

// Basis of the right nullspace, derived from the reduced row echelon
// form; empty iff M has full column rank. Deterministic.
std::vector<std::vector<Rat>> nullspace(const RatMat& m);

// Reduced row echelon form; returns rank, m is modified in place. When
// `pivot_cols` is non-null it receives the pivot column indices.
int rref(RatMat& m, std::vector<int>* pivot_cols = nullptr);

Rat det(const RatMat& m);
Int det(const IntMat& m);  // fraction-free (Bareiss)

enum class Parity { kEven, kOdd };

// Parity of det(M) for an integer matrix, by elimination over GF(2).
// Never forms the integer determinant.
Parity det_parity(const IntMat& m);
Parity det_parity_int64(const Mat<int64_t>& m);

// True iff q divides p exactly (rational coefficients allowed in the
// quotient). q must be non-zero.
bool poly_divides(const IntPoly& q, const IntPoly& p);

// Inverse of a square rational matrix; throws SingularMatrixError.
RatMat inverse(const RatMat& m);

// Solves A x = b column-by-column for the matrix X with A X = B, where A
// has full column rank and the system is consistent (B in the column
// space of A). Used to restrict a matrix action to a subspace given in
// basis coordinates. Throws SingularMatrixError on inconsistency.
RatMat solve_in_column_space(const RatMat& a, const RatMat& b);

}  // namespace cayscheme
