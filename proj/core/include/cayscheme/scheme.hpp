#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayscheme/group.hpp"

namespace cayscheme {

// An association scheme generated by a partition of a group with
// block 0 = {identity}: relation(g, h) = block of h * g^-1. Stored as a
// class-valued relation table rather than d+1 dense 0/1 matrices;
// products for the axiom checks are computed by counting walks per class
// pair.
struct AssociationScheme {
  int n = 0;
  int d = 0;                        // class count minus one
  std::vector<uint16_t> relation;   // n*n class indices
  Partition classes;                // generating partition
  std::vector<int> transpose_map;   // A_r^T = A_{transpose_map[r]}

  int rel(int g, int h) const { return relation[static_cast<size_t>(g) * n + h]; }
};

// Structure constants of the Bose-Mesner algebra: A_r A_s = sum_t
// p[r][s][t] A_t.
struct IntersectionNumbers {
  int d = 0;
  std::vector<int64_t> p;  // (d+1)^3, [r][s][t]

  int64_t at(int r, int s, int t) const {
    int k = d + 1;
    return p[(static_cast<size_t>(r) * k + s) * k + t];
  }
  int64_t& at(int r, int s, int t) {
    int k = d + 1;
    return p[(static_cast<size_t>(r) * k + s) * k + t];
  }
};

// Requires part.blocks[0] == {identity}. Throws
// NotInverseCompatibleError when some block's elementwise inverse is not
// itself a block.
AssociationScheme scheme_from_partition(const FiniteGroup& g, const Partition& part);

struct AxiomReport {
  bool identity_and_sum = false;   // axiom (1): A_0 = I, sum A_r = J
  bool transpose_closed = false;   // axiom (2): A_r^T in the scheme
  bool commutative = false;        // axiom (3): A_r A_s = A_s A_r
  bool closed_products = false;    // axiom (4): A_r A_s in the span
  std::optional<IntersectionNumbers> numbers;  // produced when (4) holds
  std::string witness;             // first failure, human-readable

  bool all_pass() const {
    return identity_and_sum && transpose_closed && commutative && closed_products;
  }
};

// Checks all four axioms by exact integer walk counting; the axiom (4)
// pass doubles as the intersection-number computation. Failures are
// report content, not exceptions. Parallelizes over class pairs.
AxiomReport verify_scheme_axioms(const AssociationScheme& s);

// v_r = |class r|; v_0 = 1; sum v_r = n.
std::vector<int> valencies(const AssociationScheme& s);

// Certificate that B is a subscheme of A: a partition of A's class
// indices into cells with cells[0] = {0} such that each B_r is the sum
// of A_j over j in cells[r].
struct SubschemeCertificate {
  std::vector<std::vector<int>> cells;  // indexed by B class
  std::vector<int> cell_of;             // A class -> B class
};

struct SubschemeResult {
  std::optional<SubschemeCertificate> certificate;
  // On failure: a vertex pair whose A-class crosses two B-classes, or a
  // description of the precondition fault.
  std::string witness;
  bool ok() const { return certificate.has_value(); }
};

SubschemeResult is_subscheme(const AssociationScheme& b, const AssociationScheme& a);

}  // namespace cayscheme
