#include "cayscheme/classalg.hpp"

#include <algorithm>

#include "cayscheme/errors.hpp"
#include "cayscheme/parallel.hpp"

namespace cayscheme {

namespace {

bool is_prime_u64(uint64_t v) {
  Int z(static_cast<unsigned long>(v));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

}  // namespace

uint64_t choose_prime(const FiniteGroup& g) {
  return admissible_primes(g, 1)[0];
}

std::vector<uint64_t> admissible_primes(const FiniteGroup& g, int count) {
  // p = 1 (mod exponent) makes GF(p) a splitting field for the class
  // algebra; p > n^2 makes every integer of magnitude <= n^2 lift
  // uniquely from its residue.
  const uint64_t e = static_cast<uint64_t>(exponent(g));
  const uint64_t n2 = static_cast<uint64_t>(g.n) * static_cast<uint64_t>(g.n);
  std::vector<uint64_t> primes;
  uint64_t p = (n2 / e) * e + 1;
  while (p <= n2) p += e;
  if (e == 1 && g.n == 1) p = 2;  // trivial group: smallest prime > 1
  while (static_cast<int>(primes.size()) < count) {
    if (is_prime_u64(p)) primes.push_back(p);
    p += e;
  }
  return primes;
}

uint64_t ModPEigenmatrix::digest() const {
  // FNV-1a over p and the entries.
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(p);
  for (int r = 0; r <= d; ++r)
    for (int c = 0; c <= d; ++c) mix(pm(r, c));
  return h;
}

ModPEigenmatrix conjugacy_eigenmatrix_modp(const AssociationScheme& s,
                                           const IntersectionNumbers& nums,
                                           uint64_t p, uint64_t seed) {
  const int k = s.d + 1;
  Fp F(p);

  // Intersection matrices of the class algebra: multiplication by the
  // class sum K_r sends K_s to sum_t p[r][s][t] K_t, so L_r has
  // (L_r)[t][s] = p[r][s][t].
  std::vector<FpMat> family;
  family.reserve(k);
  for (int r = 0; r < k; ++r) {
    FpMat l(k, k);
    for (int sc = 0; sc < k; ++sc)
      for (int t = 0; t < k; ++t)
        l(t, sc) = F.reduce_int64(nums.at(r, sc, t));
    family.push_back(std::move(l));
  }

  auto spaces = modp_eigen_split(family, p, seed);
  if (static_cast<int>(spaces.size()) != k) {
    for (const auto& sp : spaces)
      if (sp.dim() != 1)
        throw NonSimpleSpectrumError("class algebra has a common eigenspace of dimension " +
                                     std::to_string(sp.dim()));
    throw SplitFailureError("class algebra did not split into d+1 eigenspaces");
  }
  for (const auto& sp : spaces)
    if (sp.dim() != 1)
      throw NonSimpleSpectrumError("class algebra has a common eigenspace of dimension " +
                                   std::to_string(sp.dim()));

  // Rows of Pm are the eigenvalue tuples. L_0 = I, so column 0 is 1.
  const std::vector<int> v = valencies(s);
  std::vector<std::vector<uint64_t>> rows;
  rows.reserve(k);
  for (const auto& sp : spaces) rows.push_back(sp.eigenvalue);
  for (const auto& row : rows)
    if (row[0] != 1) throw Error("conjugacy eigenmatrix: column 0 not normalized");

  // Canonical order: the trivial row (valencies mod p) first, the rest
  // ascending as integer tuples.
  std::vector<uint64_t> trivial(k);
  for (int r = 0; r < k; ++r) trivial[r] = F.reduce_int64(v[r]);
  auto it = std::find(rows.begin(), rows.end(), trivial);
  if (it == rows.end()) throw Error("conjugacy eigenmatrix: trivial row missing");
  std::iter_swap(rows.begin(), it);
  std::sort(rows.begin() + 1, rows.end());

  ModPEigenmatrix out;
  out.p = p;
  out.d = s.d;
  out.pm = FpMat(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) out.pm(r, c) = rows[r][c];
  out.star = s.transpose_map;
  return out;
}

std::vector<Int> multiplicities_modp(const ModPEigenmatrix& pm,
                                     const std::vector<int>& v, int n) {
  const int k = pm.d + 1;
  Fp F(pm.p);
  std::vector<Int> m;
  m.reserve(k);
  Int total = 0;
  for (int j = 0; j < k; ++j) {
    uint64_t acc = 0;
    for (int r = 0; r < k; ++r) {
      uint64_t term = F.mul(pm.pm(j, r), pm.pm(j, pm.star[r]));
      acc = F.add(acc, F.mul(term, F.inv(F.reduce_int64(v[r]))));
    }
    if (acc == 0) throw LiftFailureError("row norm vanished mod p");
    uint64_t mj = F.mul(F.reduce_int64(n), F.inv(acc));
    // Lift to (0, n]; p > n^2 makes this unique.
    if (mj == 0 || mj > static_cast<uint64_t>(n))
      throw LiftFailureError("multiplicity " + std::to_string(mj) +
                             " does not lift into (0, n]");
    m.push_back(Int(static_cast<unsigned long>(mj)));
    total += m.back();
  }
  if (total != n)
    throw LiftFailureError("lifted multiplicities sum to " + total.get_str() +
                           ", expected " + std::to_string(n));
  return m;
}

Int frame_quotient_conjugacy(const std::vector<int>& v, const std::vector<Int>& m,
                             int n, int d) {
  Rat q(1);
  for (int j = 0; j <= d; ++j) q *= make_rat(Int(v[j]), m[j]);
  for (int j = 0; j <= d; ++j) q *= Rat(n);
  if (!is_integer(q))
    throw Error("frame quotient is not an integer: " + to_string(q));
  Int out = q.get_num();
  if (n % 2 == 1 && !is_odd(out))
    throw Error("frame quotient " + out.get_str() + " is even for odd order " +
                std::to_string(n));
  return out;
}

ClassAlgebraReport analyze_class_algebra(const FiniteGroup& g,
                                         const AssociationScheme& conj_scheme,
                                         const IntersectionNumbers& nums,
                                         int prime_count, uint64_t seed) {
  ClassAlgebraReport report;
  report.seed = seed;
  report.class_count = conj_scheme.d + 1;
  const std::vector<int> v = valencies(conj_scheme);

  // Work through a pool of admissible primes; a SplitFailure just moves
  // on to the next one. The kept primes are the first `prime_count`
  // successes in pool order, so the report is deterministic.
  std::vector<uint64_t> pool = admissible_primes(g, prime_count + 8);
  struct PerPrime {
    bool ok = false;
    std::vector<Int> mults;
    std::string digest;
  };
  std::vector<PerPrime> results(pool.size());
  auto try_prime = [&](size_t i) {
    try {
      ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(conj_scheme, nums, pool[i], seed);
      std::vector<Int> m = multiplicities_modp(pm, v, g.n);
      std::sort(m.begin(), m.end());
      char buf[32];
      snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(pm.digest()));
      results[i] = {true, std::move(m), buf};
    } catch (const SplitFailureError&) {
      results[i].ok = false;
    }
  };
  parallel_for(static_cast<size_t>(prime_count), try_prime);
  size_t next_extra = static_cast<size_t>(prime_count);
  auto good_count = [&]() {
    size_t c = 0;
    for (const auto& r : results)
      if (r.ok) ++c;
    return c;
  };
  while (good_count() < static_cast<size_t>(prime_count) && next_extra < pool.size())
    try_prime(next_extra++);
  if (good_count() < static_cast<size_t>(prime_count))
    throw SplitFailureError("no admissible prime split the class algebra");

  std::vector<std::vector<Int>> mults;
  for (size_t i = 0; i < pool.size() && report.primes.size() < static_cast<size_t>(prime_count); ++i) {
    if (!results[i].ok) continue;
    report.primes.push_back(pool[i]);
    report.pm_digests.push_back(results[i].digest);
    mults.push_back(results[i].mults);
  }
  report.multiplicities = mults[0];
  report.consistent_across_primes = true;
  for (const auto& m : mults)
    if (m != mults[0]) report.consistent_across_primes = false;

  report.frame_quotient =
      frame_quotient_conjugacy(v, report.multiplicities, g.n, conj_scheme.d);
  report.frame_quotient_odd = is_odd(report.frame_quotient);
  return report;
}

}  // namespace cayscheme
