#include <doctest.h>

#include <algorithm>

#include "cayscheme/classalg.hpp"
#include "cayscheme/errors.hpp"

using namespace cayscheme;

namespace {

struct ConjData {
  FiniteGroup g;
  AssociationScheme scheme;
  AxiomReport axioms;
};

ConjData conj_data(const std::string& desc) {
  ConjData d;
  d.g = group_builtin(desc);
  d.scheme = scheme_from_partition(d.g, conjugacy_classes(d.g));
  d.axioms = verify_scheme_axioms(d.scheme);
  REQUIRE(d.axioms.all_pass());
  return d;
}

constexpr uint64_t kSeed = 20260801;

}  // namespace

TEST_CASE("prime selection") {
  CHECK(choose_prime(group_builtin("cyclic(3)")) == 13);
  CHECK(choose_prime(group_builtin("semidirect(7,3,2)")) == 463);
  CHECK(choose_prime(group_builtin("trivial")) == 2);
  std::vector<uint64_t> primes = admissible_primes(group_builtin("cyclic(3)"), 3);
  REQUIRE(primes.size() == 3);
  CHECK(primes[0] == 13);
  for (uint64_t p : primes) {
    CHECK(p > 9);
    CHECK(p % 3 == 1);
  }
}

TEST_CASE("mod-p eigenmatrix of Z_3 at p = 13") {
  ConjData d = conj_data("cyclic(3)");
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, 13, kSeed);
  // cube roots of unity mod 13 are {1, 3, 9}
  uint64_t want[3][3] = {{1, 1, 1}, {1, 3, 9}, {1, 9, 3}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(pm.pm(r, c) == want[r][c]);
  CHECK(pm.star == std::vector<int>{0, 2, 1});
}

TEST_CASE("trivial row equals the valencies mod p") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)"}) {
    CAPTURE(desc);
    ConjData d = conj_data(desc);
    uint64_t p = choose_prime(d.g);
    ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, p, kSeed);
    std::vector<int> v = valencies(d.scheme);
    for (int r = 0; r <= pm.d; ++r) {
      CHECK(pm.pm(0, r) == static_cast<uint64_t>(v[r]) % p);
      CHECK(pm.pm(r, 0) == 1);  // column 0 normalized
    }
  }
}

TEST_CASE("multiplicities of abelian groups are all 1") {
  ConjData d = conj_data("cyclic(9)");
  uint64_t p = choose_prime(d.g);
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, p, kSeed);
  std::vector<Int> m = multiplicities_modp(pm, valencies(d.scheme), d.g.n);
  for (const Int& mj : m) CHECK(mj == 1);
}

TEST_CASE("multiplicities of semidirect(7,3,2) are 1,1,1,9,9") {
  ConjData d = conj_data("semidirect(7,3,2)");
  uint64_t p = choose_prime(d.g);
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, p, kSeed);
  std::vector<Int> m = multiplicities_modp(pm, valencies(d.scheme), d.g.n);
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<Int>{1, 1, 1, 9, 9});
}

TEST_CASE("multiplicities of heisenberg(3): nine 1s and two 9s") {
  ConjData d = conj_data("heisenberg(3)");
  uint64_t p = choose_prime(d.g);
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, p, kSeed);
  std::vector<Int> m = multiplicities_modp(pm, valencies(d.scheme), d.g.n);
  std::sort(m.begin(), m.end());
  std::vector<Int> want(9, Int(1));
  want.push_back(9);
  want.push_back(9);
  CHECK(m == want);
}

TEST_CASE("mod-p row orthogonality: Pm Qm = nI") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)",
                           "semidirect(3,2,2)"}) {
    CAPTURE(desc);
    ConjData d = conj_data(desc);
    uint64_t p = choose_prime(d.g);
    Fp f(p);
    ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, p, kSeed);
    std::vector<Int> m = multiplicities_modp(pm, valencies(d.scheme), d.g.n);
    std::vector<int> v = valencies(d.scheme);
    const int k = pm.d + 1;
    // Qm[r][s] = m_s * Pm[s][star(r)] / v_r, transcribing D_m P = Q* D_v
    FpMat qm(k, k);
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s)
        qm(r, s) = f.mul(f.mul(f.reduce(m[s]), pm.pm(s, pm.star[r])),
                         f.inv(f.reduce_int64(v[r])));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        uint64_t acc = 0;
        for (int r = 0; r < k; ++r) acc = f.add(acc, f.mul(pm.pm(a, r), qm(r, b)));
        CHECK(acc == (a == b ? static_cast<uint64_t>(d.g.n) % p : 0));
      }
  }
}

TEST_CASE("conjugacy frame quotients") {
  // abelian: d = n-1, all v = m = 1, quotient n^n
  CHECK(frame_quotient_conjugacy({1, 1, 1}, {Int(1), Int(1), Int(1)}, 3, 2) == Int(27));
  CHECK(frame_quotient_conjugacy({1, 1, 1, 1, 1},
                                 {Int(1), Int(1), Int(1), Int(1), Int(1)}, 5, 4) ==
        Int(3125));
  // order 21: 21^5 * (1*3*3*7*7)/(1*1*1*9*9) = 3^3 * 7^7
  CHECK(frame_quotient_conjugacy({1, 3, 3, 7, 7}, {Int(1), Int(1), Int(1), Int(9), Int(9)},
                                 21, 4) == Int(22235661));
  // S_3 control: integer but even
  CHECK(frame_quotient_conjugacy({1, 2, 3}, {Int(1), Int(1), Int(4)}, 6, 2) == Int(324));
}

TEST_CASE("frame quotient violations are errors") {
  // v/m that are not integral after the product
  CHECK_THROWS_AS(frame_quotient_conjugacy({1, 2}, {Int(1), Int(4)}, 3, 1), Error);
  // odd order with an even quotient
  CHECK_THROWS_AS(frame_quotient_conjugacy({1, 2}, {Int(1), Int(1)}, 3, 1), Error);
}

TEST_CASE("multiplicity lift failures are detected") {
  ConjData d = conj_data("cyclic(3)");
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(d.scheme, *d.axioms.numbers, 13, kSeed);
  pm.pm(1, 1) = 5;  // corrupt an entry; row norms no longer lift to valid m
  CHECK_THROWS_AS(multiplicities_modp(pm, valencies(d.scheme), d.g.n), LiftFailureError);
}

TEST_CASE("class algebra analysis is consistent across primes") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)",
                           "semidirect(9,3,4)", "semidirect(3,2,2)"}) {
    CAPTURE(desc);
    ConjData d = conj_data(desc);
    ClassAlgebraReport r = analyze_class_algebra(d.g, d.scheme, *d.axioms.numbers, 3, kSeed);
    CHECK(r.primes.size() == 3);
    CHECK(r.pm_digests.size() == 3);
    CHECK(r.consistent_across_primes);
    CHECK(r.seed == kSeed);
    Int total = 0;
    for (const Int& m : r.multiplicities) total += m;
    CHECK(total == d.g.n);
    if (d.g.n % 2 == 1) CHECK(r.frame_quotient_odd);
  }
}

TEST_CASE("order-21 class algebra report fixture") {
  ConjData d = conj_data("semidirect(7,3,2)");
  ClassAlgebraReport r = analyze_class_algebra(d.g, d.scheme, *d.axioms.numbers, 3, kSeed);
  CHECK(r.primes == std::vector<uint64_t>{463, 547, 631});
  CHECK(r.frame_quotient == Int(22235661));
  CHECK(r.frame_quotient_odd);
  CHECK(r.multiplicities == std::vector<Int>{1, 1, 1, 9, 9});
}
