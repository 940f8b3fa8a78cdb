#include "cayscheme/catalogue.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace cayscheme {

namespace {

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// Integer partitions of e, each sorted descending, in descending
// lexicographic order ([e] first).
std::vector<std::vector<int>> partitions(int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, e, e);
  return out;
}

std::string render_abelian(const std::vector<long>& invariant_factors) {
  if (invariant_factors.size() == 1)
    return "cyclic(" + std::to_string(invariant_factors[0]) + ")";
  std::string tail = "cyclic(" + std::to_string(invariant_factors.back()) + ")";
  for (size_t i = invariant_factors.size() - 1; i-- > 0;)
    tail = "direct_product(cyclic(" + std::to_string(invariant_factors[i]) + ")," + tail + ")";
  return tail;
}

// All abelian groups of order n as invariant-factor chains d_1 | d_2 |
// ... read largest-first, one descriptor each, ordered by the chain
// descending (cyclic(n) first, the fully elementary decomposition last).
std::vector<std::string> abelian_groups(long n) {
  auto factors = factorize(n);
  std::vector<std::vector<std::vector<int>>> per_prime;
  for (auto& [p, e] : factors) per_prime.push_back(partitions(e));

  std::vector<std::vector<long>> chains;
  std::vector<size_t> choice(per_prime.size(), 0);
  for (;;) {
    // Align the chosen partitions part-by-part into invariant factors.
    size_t rows = 0;
    for (size_t i = 0; i < per_prime.size(); ++i)
      rows = std::max(rows, per_prime[i][choice[i]].size());
    std::vector<long> inv(rows, 1);
    for (size_t i = 0; i < per_prime.size(); ++i) {
      const auto& parts = per_prime[i][choice[i]];
      for (size_t j = 0; j < parts.size(); ++j) {
        long pw = 1;
        for (int t = 0; t < parts[j]; ++t) pw *= factors[i].first;
        inv[j] *= pw;
      }
    }
    chains.push_back(std::move(inv));

    size_t i = 0;
    while (i < choice.size() && ++choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  std::sort(chains.begin(), chains.end(), std::greater<>());
  std::vector<std::string> out;
  out.reserve(chains.size());
  for (const auto& inv : chains) out.push_back(render_abelian(inv));
  return out;
}

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Non-abelian semidirect products C_m x| C_k with k prime: one
// descriptor per order-k subgroup of (Z/m)^*, using its smallest
// generator. Distinct subgroups give non-isomorphic groups.
std::vector<std::string> semidirect_groups(long n) {
  std::vector<std::string> out;
  for (long k = 2; k < n; ++k) {
    if (n % k || !is_prime_long(k)) continue;
    long m = n / k;
    if (m < 2) continue;
    std::set<long> seen;  // elements already assigned to a subgroup
    for (long a = 2; a < m; ++a) {
      if (seen.count(a) || std::gcd(a, m) != 1) continue;
      // a of multiplicative order exactly k mod m (k prime: a^k = 1, a != 1)
      long ak = 1;
      for (long i = 0; i < k; ++i) ak = (ak * a) % m;
      if (ak != 1) continue;
      // mark the whole subgroup <a>
      long x = a;
      while (x != 1) {
        seen.insert(x);
        x = (x * a) % m;
      }
      out.push_back("semidirect(" + std::to_string(m) + "," + std::to_string(k) + "," +
                    std::to_string(a) + ")");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::string> enumerate_builtin_groups(int lo, int hi, bool odd_only) {
  std::vector<std::string> out;
  for (int n = std::max(1, lo); n <= hi; ++n) {
    if (odd_only && n % 2 == 0) continue;
    for (auto& d : abelian_groups(n)) out.push_back(d);
    // heisenberg(p) for odd prime p with n = p^3 (for p = 2 it
    // duplicates semidirect(4,2,3), so it is left out)
    {
      long r = std::lround(std::cbrt(static_cast<double>(n)));
      for (long p = std::max<long>(3, r - 1); p <= r + 1; ++p)
        if (p * p * p == n && is_prime_long(p))
          out.push_back("heisenberg(" + std::to_string(p) + ")");
    }
    for (auto& d : semidirect_groups(n)) out.push_back(d);
  }
  return out;
}

}  // namespace cayscheme
