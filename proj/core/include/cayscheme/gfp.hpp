#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cayscheme/matrix.hpp"

namespace cayscheme {

// Arithmetic in the prime field GF(p), p < 2^62.
struct Fp {
  uint64_t p;

  explicit Fp(uint64_t prime) : p(prime) {}

  uint64_t reduce_int64(int64_t v) const {
    int64_t m = v % static_cast<int64_t>(p);
    if (m < 0) m += static_cast<int64_t>(p);
    return static_cast<uint64_t>(m);
  }
  uint64_t reduce(const Int& v) const;

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const;  // a != 0
};

using FpMat = Mat<uint64_t>;
using FpPoly = std::vector<uint64_t>;  // lowest degree first, trimmed

// GF(p) polynomial helpers (monic gcd, division, modular exponentiation).
FpPoly fp_poly_trim(FpPoly f);
FpPoly fp_poly_mulmod(const Fp& F, const FpPoly& a, const FpPoly& b, const FpPoly& mod);
FpPoly fp_poly_mod(const Fp& F, FpPoly a, const FpPoly& mod);
FpPoly fp_poly_gcd(const Fp& F, FpPoly a, FpPoly b);  // monic
FpPoly fp_poly_powmod(const Fp& F, FpPoly base, Int e, const FpPoly& mod);

// Characteristic polynomial over GF(p) (Hessenberg reduction), monic.
FpPoly fp_char_poly(const Fp& F, FpMat m);

// Roots in GF(p) with multiplicities, by gcd with x^p - x and
// equal-degree splitting; deterministic for a fixed rng state.
std::vector<std::pair<uint64_t, int>> fp_poly_roots(const Fp& F, const FpPoly& f,
                                                    std::mt19937_64& rng);

// Right nullspace basis over GF(p).
std::vector<std::vector<uint64_t>> fp_nullspace(const Fp& F, FpMat m);

int fp_rank(const Fp& F, FpMat m);
FpMat fp_inverse(const Fp& F, FpMat m);  // throws SingularMatrixError
bool fp_poly_divides(const Fp& F, const FpPoly& q, const FpPoly& p);

// One common eigenspace of a commuting family: a basis (columns) plus
// the scalar by which each family matrix acts on it.
struct FpEigenspace {
  FpMat basis;                       // ambient_dim x dim
  std::vector<uint64_t> eigenvalue;  // one scalar per family matrix
  int dim() const { return basis.cols(); }
};

// Simultaneous eigenspace decomposition of a pairwise-commuting family
// of square matrices over GF(p). Subspace dimensions sum to the ambient
// dimension; every family matrix acts as the recorded scalar on each
// returned subspace. Throws SplitFailureError when some matrix is not
// diagonalizable over GF(p) (the caller should rechoose the prime).
std::vector<FpEigenspace> modp_eigen_split(const std::vector<FpMat>& family,
                                           uint64_t p, uint64_t seed);

}  // namespace cayscheme
