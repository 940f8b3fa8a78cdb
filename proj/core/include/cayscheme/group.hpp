#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cayscheme {

inline constexpr int kDefaultGroupCap = 2048;

// A finite group on elements 0..n-1 given by its multiplication table.
// The identity is always element 0. Immutable after construction; safe
// to share across threads.
struct FiniteGroup {
  int n = 0;
  std::vector<int> mult;        // n*n, mult[a*n+b] = a*b
  std::vector<int> inv;         // inverses
  std::vector<int> elem_order;  // order of each element
  static constexpr int identity = 0;

  int mul(int a, int b) const { return mult[static_cast<size_t>(a) * n + b]; }
  bool is_abelian() const;
};

// A partition of {0..n-1} into non-empty blocks, ordered by size with
// ties broken by minimum element. block_of and blocks are mutually
// consistent. The partitions produced below always have block 0 =
// {identity}.
struct Partition {
  int n = 0;
  std::vector<int> block_of;
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool operator==(const Partition& o) const {
    return n == o.n && block_of == o.block_of;
  }
};

// Builds a partition from a block-index labelling, renumbering blocks by
// their minimum element.
Partition partition_from_labels(int n, const std::vector<int>& labels);

// Validates a multiplication table (identity, inverses, associativity;
// throws NotAGroupError with the violating triple), relabels the
// identity to index 0, and fills the inverse and order tables.
FiniteGroup group_from_table(const std::vector<std::vector<int>>& table,
                             int cap = kDefaultGroupCap);

// Builds a group from a family descriptor:
//   cyclic(n)
//   direct_product(spec, spec)
//   semidirect(m, k, a)   -- C_m semidirect C_k, generator of C_k acting
//                            by x -> x^a; requires a^k = 1 (mod m)
//   heisenberg(p)         -- upper unitriangular 3x3 matrices over F_p
// Element numbering is lexicographic in the defining tuples.
FiniteGroup group_builtin(const std::string& descriptor,
                          int cap = kDefaultGroupCap);

// Closes the generators (0-indexed images on a common domain) under
// composition and returns the abstract group on the enumerated
// elements. An empty generator list yields the trivial group.
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                    int cap = kDefaultGroupCap);

// Orbits of the conjugation action; block 0 = {identity}.
Partition conjugacy_classes(const FiniteGroup& g);

// g ~ h iff <g> = <h> as sets.
Partition power_classes(const FiniteGroup& g);

// Join (finest common coarsening) of the conjugacy and power partitions,
// via union-find. Each block is simultaneously a union of conjugacy
// classes and a union of power classes; this is asserted at runtime.
Partition pc_classes(const FiniteGroup& g);

// lcm of the element orders.
int exponent(const FiniteGroup& g);

}  // namespace cayscheme
