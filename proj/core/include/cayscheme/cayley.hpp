#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayscheme/group.hpp"
#include "cayscheme/matrix.hpp"
#include "cayscheme/spectra.hpp"

namespace cayscheme {

// Connection set of a Cayley graph: a subset of G \ {identity}. The
// flags are recomputed from the members, never trusted from input.
struct ConnectionSet {
  std::vector<int> members;  // sorted, identity excluded
  bool inverse_closed = false;
  bool conjugacy_closed = false;

  static ConnectionSet from_members(const FiniteGroup& g, std::vector<int> members);
};

// Signed connection set: disjoint fibres of +1 and -1, both
// inverse-closed; normal when both are conjugacy-closed.
struct SignedConnectionSet {
  ConnectionSet plus;
  ConnectionSet minus;

  static SignedConnectionSet from_members(const FiniteGroup& g,
                                          std::vector<int> plus_members,
                                          std::vector<int> minus_members);
};

// n x n 0/1 matrix with entry (g, h) = 1 iff h g^-1 is in the connection
// set; symmetric iff the set is inverse-closed. Throws Error when the
// identity is a member.
Mat<int64_t> cayley_adjacency(const FiniteGroup& g, const ConnectionSet& c);

// adj(plus) - adj(minus).
Mat<int64_t> signed_cayley_adjacency(const FiniteGroup& g, const SignedConnectionSet& c);

// Eigenvalue multiset of a graph (or signed graph) in a scheme.
struct SpectrumReport {
  std::vector<std::pair<int64_t, int>> eigenvalues;  // (value, mult), ascending
  bool has_odd = false;
  std::string source;  // which classes / signs produced it
};

// Spectrum of the union of scheme classes selected by x (0/1 vector over
// classes, x[0] = 0): the entries of P*x with multiplicities m. Cheap;
// no adjacency matrix is formed (see spectrum_adjacency_crosscheck for
// the independent dense-matrix oracle).
SpectrumReport spectrum_via_scheme(const Eigensystem& e, const std::vector<int>& x);

// Same with x a {0,+1,-1} vector: the signed adjacency spectrum.
SpectrumReport signed_spectrum_via_scheme(const Eigensystem& e, const std::vector<int>& x);

// Independent cross-check: the exact characteristic polynomial of the
// dense (signed) adjacency matrix of the selected classes must equal
// prod_s (t - (Px)_s)^(m_s). Returns true on exact agreement.
bool spectrum_adjacency_crosscheck(const FiniteGroup& g, const AssociationScheme& s,
                                   const Eigensystem& e, const std::vector<int>& x);

enum class VerifyStatus { kPassed, kViolation, kInapplicable, kSkipped };

struct VerificationReport {
  VerifyStatus status = VerifyStatus::kPassed;
  std::string check;            // which theorem harness
  std::string group;            // descriptor when known
  int scheme_classes = 0;       // d of the scheme driving the check
  uint64_t cases_checked = 0;
  double elapsed_seconds = 0.0;
  std::string detail;           // human-readable summary / skip reason
  // Violation payload (never expected to fire for in-hypothesis inputs).
  std::optional<std::vector<int>> counterexample_vector;
  std::optional<SpectrumReport> counterexample_spectrum;

  bool passed() const { return status == VerifyStatus::kPassed; }
};

// Every non-empty union of PC classes of an odd-order group has an odd
// eigenvalue. Runs the mod-2 fast path (P is invertible mod 2, so
// P x != 0 mod 2 for x != 0) and confirms with the exact spectrum on all
// 2^k - 1 subsets. Even-order groups report kInapplicable.
VerificationReport verify_odd_eigenvalue(const FiniteGroup& g);

// Signed version: all 3^k - 1 nonzero {0,+1,-1} vectors (k capped).
VerificationReport verify_signed_corollary(const FiniteGroup& g, int class_cap = 16);

// A union of non-identity conjugacy classes yields an integral Cayley
// graph iff it is a union of PC classes; exhaustive over all 2^d - 1
// unions, integrality decided by exact char-poly root exhaustion.
VerificationReport verify_godsil_spiga(const FiniteGroup& g, int class_cap = 20);

}  // namespace cayscheme
