#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayscheme/classalg.hpp"
#include "cayscheme/linalg.hpp"
#include "cayscheme/matrix.hpp"
#include "cayscheme/scheme.hpp"

namespace cayscheme {

// Full eigensystem of an integral association scheme.
//
// Index convention (fixed here because it is easy to misread): P has
// rows indexed by eigenspace s and columns by class r, so P(s, r) is the
// eigenvalue of A_r on eigenspace s. Q follows the same convention and
// satisfies PQ = nI. Canonical row order: the trivial (all-ones)
// eigenspace first, remaining rows sorted lexicographically descending.
struct Eigensystem {
  int n = 0;
  int d = 0;
  IntMat P;                    // (d+1) x (d+1), integer entries
  RatMat Q;                    // n * P^-1
  std::vector<int> v;          // valencies
  std::vector<int> m;          // multiplicities, m[s] = dim spaces[s]
  std::vector<RatMat> spaces;  // n x m[s] eigenspace bases

  Mat<int64_t> p64() const;    // P mirrored into int64 (entries <= n)
};

// Computes the eigensystem by iterative common-eigenspace refinement:
// start from the whole space and split every current subspace by each
// class matrix's integer eigenvalues (char poly of the restriction ->
// integer roots -> nullspace). Throws NonIntegralSchemeError when a
// restriction has a non-integer eigenvalue (the partition is not
// PC-closed). The result is independent of the class processing order.
Eigensystem eigensystem_integral(const AssociationScheme& s);

// Q = n * P^-1, exact. Throws SingularMatrixError when det(P) = 0.
RatMat dual_eigenmatrix(const RatMat& p, int n);

struct IdentityReport {
  bool pq_identity = false;        // PQ = nI
  bool dm_identity = false;        // D_m P = Q^T D_v
  bool orthogonality = false;      // P^T D_m P = n D_v
  std::string witness;             // first non-zero deviation

  bool all_pass() const { return pq_identity && dm_identity && orthogonality; }
};

// Checks the three eigenmatrix identities with exact arithmetic; a pass
// requires exactly zero deviation.
IdentityReport verify_identities(const Eigensystem& e);

// n^(d+1) * prod v_j / m_j, asserted integral and equal to det(P^T P).
// Throws FrameQuotientMismatchError if the two computations disagree.
Int frame_quotient(const Eigensystem& e);

// Equitable-quotient verification of a subscheme eigenmatrix.
struct QuotientReport {
  bool equitable = false;        // block row sums constant and equal to
                                 // the subscheme eigenvalues
  bool multiplicities_match = false;  // sum of cell multiplicities
  bool char_poly_divides = false;
  std::vector<int> row_cell;     // parent eigenspace -> subscheme eigenspace
  uint64_t prime = 0;            // 0 for the exact rational check
  std::string witness;

  bool all_pass() const {
    return equitable && multiplicities_match && char_poly_divides;
  }
};

// Exact check: both eigensystems known over the rationals (B a subscheme
// of A with the given certificate).
QuotientReport equitable_quotient_check(const Eigensystem& a_sys,
                                        const Eigensystem& b_sys,
                                        const SubschemeCertificate& cert);

// Mod-p check: A is the full conjugacy class scheme, represented by its
// mod-p eigenmatrix; B's exact eigenmatrix is reduced mod the same p.
QuotientReport equitable_quotient_check_modp(const ModPEigenmatrix& a_modp,
                                             const std::vector<Int>& a_mults,
                                             const Eigensystem& b_sys,
                                             const SubschemeCertificate& cert);

}  // namespace cayscheme
