#pragma once

#include <string>
#include <vector>

namespace cayscheme {

// Deterministic list of builtin group descriptors of each order in
// [lo, hi]: all abelian groups (invariant-factor decompositions), then
// heisenberg(p) when the order is p^3, then the cyclic-by-prime
// semidirect products semidirect(m, k, a) with k a prime divisor, one
// descriptor per order-k subgroup of the units mod m (smallest
// generator). This enumeration is exhaustive for every odd order <= 45;
// above that it samples these families.
std::vector<std::string> enumerate_builtin_groups(int lo, int hi, bool odd_only);

}  // namespace cayscheme
