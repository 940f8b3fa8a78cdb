#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayscheme/gfp.hpp"
#include "cayscheme/group.hpp"
#include "cayscheme/rational.hpp"
#include "cayscheme/scheme.hpp"

namespace cayscheme {

// Mod-p spectral theory of the full conjugacy class scheme. The exact
// eigenvalues live in a cyclotomic field; everything needed here
// (multiplicities, frame quotient, quotient checks) is recovered from
// the scheme's image mod primes p = 1 (mod exponent(G)) with p > n^2,
// so that all integer quantities of magnitude <= n^2 lift uniquely.

// Smallest prime p with p = 1 (mod exponent(G)) and p > n^2.
uint64_t choose_prime(const FiniteGroup& g);

// The first `count` such primes, ascending.
std::vector<uint64_t> admissible_primes(const FiniteGroup& g, int count);

// Eigenvalue matrix of the class algebra mod p. Rows are eigenspaces of
// the algebra (the trivial row first, then lexicographically ascending
// as integer tuples), columns are classes. star maps each class to its
// inverse class.
struct ModPEigenmatrix {
  uint64_t p = 0;
  int d = 0;
  FpMat pm;               // (d+1) x (d+1) over GF(p)
  std::vector<int> star;  // column involution

  uint64_t digest() const;  // FNV-1a over p and the entries
};

// Builds the (d+1)x(d+1) intersection matrices L_r and decomposes their
// common eigenspaces over GF(p). Each eigenspace must be 1-dimensional
// (throws NonSimpleSpectrumError otherwise); SplitFailureError signals a
// bad prime and the caller should rechoose.
ModPEigenmatrix conjugacy_eigenmatrix_modp(const AssociationScheme& s,
                                           const IntersectionNumbers& nums,
                                           uint64_t p, uint64_t seed);

// Multiplicities recovered from row orthogonality:
// m_j = n * (sum_r Pm[j][r] * Pm[j][star(r)] / v_r)^-1 in GF(p), lifted
// to the unique integer in (0, n]. Throws LiftFailureError when the
// lifted values do not sum to n.
std::vector<Int> multiplicities_modp(const ModPEigenmatrix& pm,
                                     const std::vector<int>& v, int n);

// n^(d+1) * prod v_j/m_j in exact rational arithmetic. Throws Error
// subclasses when the result is not an integer, or not odd for odd n
// (either would contradict a verified theorem).
Int frame_quotient_conjugacy(const std::vector<int>& v, const std::vector<Int>& m,
                             int n, int d);

// Everything the mod-p analysis of one group produces, for reports.
struct ClassAlgebraReport {
  std::vector<uint64_t> primes;
  uint64_t seed = 0;
  std::vector<std::string> pm_digests;   // per prime, hex
  std::vector<Int> multiplicities;       // ascending (canonical order)
  Int frame_quotient;
  bool frame_quotient_odd = false;
  bool consistent_across_primes = false;
  int class_count = 0;
};

// Runs conjugacy_eigenmatrix_modp + multiplicities_modp over `prime_count`
// admissible primes, checks cross-prime consistency, and computes the
// conjugacy-scheme frame quotient. Per-prime work runs in parallel.
ClassAlgebraReport analyze_class_algebra(const FiniteGroup& g,
                                         const AssociationScheme& conj_scheme,
                                         const IntersectionNumbers& nums,
                                         int prime_count, uint64_t seed);

}  // namespace cayscheme
