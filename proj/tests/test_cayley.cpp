#include <doctest.h>

#include <algorithm>

#include "cayscheme/cayley.hpp"
#include "cayscheme/errors.hpp"
#include "cayscheme/linalg.hpp"
#include "oracles.hpp"

using namespace cayscheme;

namespace {

struct SchemeData {
  FiniteGroup g;
  AssociationScheme scheme;
  Eigensystem eigen;
};

SchemeData pc_data(const std::string& desc) {
  SchemeData d;
  d.g = group_builtin(desc);
  d.scheme = scheme_from_partition(d.g, pc_classes(d.g));
  d.eigen = eigensystem_integral(d.scheme);
  return d;
}

using Spectrum = std::vector<std::pair<int64_t, int>>;

}  // namespace

TEST_CASE("connection set flags are recomputed") {
  FiniteGroup g = group_builtin("semidirect(7,3,2)");
  // the order-7 class of element 3 is conjugacy-closed but not
  // inverse-closed (no non-trivial real classes in odd order)
  Partition conj = conjugacy_classes(g);
  ConnectionSet c7 = ConnectionSet::from_members(g, conj.blocks[3]);
  CHECK(c7.conjugacy_closed);
  CHECK(!c7.inverse_closed);
  // the full order-7 pc block is both
  ConnectionSet pc7 = ConnectionSet::from_members(g, pc_classes(g).blocks[1]);
  CHECK(pc7.conjugacy_closed);
  CHECK(pc7.inverse_closed);
  CHECK_THROWS_AS(ConnectionSet::from_members(g, {0, 1}), Error);
}

TEST_CASE("cayley adjacency matrices") {
  FiniteGroup z3 = group_builtin("cyclic(3)");
  Mat<int64_t> complete = cayley_adjacency(z3, ConnectionSet::from_members(z3, {1, 2}));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(complete(r, c) == (r == c ? 0 : 1));

  FiniteGroup z4 = group_builtin("cyclic(4)");
  Mat<int64_t> cycle = cayley_adjacency(z4, ConnectionSet::from_members(z4, {1, 3}));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(cycle(r, c) == (((c - r + 4) % 4 == 1 || (c - r + 4) % 4 == 3) ? 1 : 0));

  Mat<int64_t> empty = cayley_adjacency(z4, ConnectionSet::from_members(z4, {}));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(empty(r, c) == 0);
}

TEST_CASE("spectrum via scheme: complete graph on 3 vertices") {
  SchemeData d = pc_data("cyclic(3)");
  SpectrumReport r = spectrum_via_scheme(d.eigen, {0, 1});
  CHECK(r.eigenvalues == Spectrum{{-1, 2}, {2, 1}});
  CHECK(r.has_odd);
}

TEST_CASE("spectrum via scheme: 3 disjoint K_7") {
  SchemeData d = pc_data("semidirect(7,3,2)");
  SpectrumReport r = spectrum_via_scheme(d.eigen, {0, 1, 0});
  CHECK(r.eigenvalues == Spectrum{{-1, 18}, {6, 3}});
  CHECK(r.has_odd);
}

TEST_CASE("empty class subset gives the zero spectrum") {
  SchemeData d = pc_data("semidirect(7,3,2)");
  SpectrumReport r = spectrum_via_scheme(d.eigen, {0, 0, 0});
  CHECK(r.eigenvalues == Spectrum{{0, 21}});
  CHECK(!r.has_odd);
}

TEST_CASE("signed spectra") {
  SchemeData c9 = pc_data("cyclic(9)");
  SpectrumReport r = signed_spectrum_via_scheme(c9.eigen, {0, 1, -1});
  CHECK(r.eigenvalues == Spectrum{{-4, 1}, {-1, 6}, {5, 2}});
  CHECK(r.has_odd);

  SchemeData f21 = pc_data("semidirect(7,3,2)");
  SpectrumReport r21 = signed_spectrum_via_scheme(f21.eigen, {0, -1, 1});
  CHECK(r21.eigenvalues == Spectrum{{-13, 2}, {1, 18}, {8, 1}});
  CHECK(r21.has_odd);

  SpectrumReport zero = signed_spectrum_via_scheme(c9.eigen, {0, 0, 0});
  CHECK(zero.eigenvalues == Spectrum{{0, 9}});

  // negation flips the spectrum
  SchemeData z3 = pc_data("cyclic(3)");
  CHECK(signed_spectrum_via_scheme(z3.eigen, {0, 1}).eigenvalues == Spectrum{{-1, 2}, {2, 1}});
  CHECK(signed_spectrum_via_scheme(z3.eigen, {0, -1}).eigenvalues ==
        Spectrum{{-2, 1}, {1, 2}});
}

TEST_CASE("signed spectrum negation is a multiset negation") {
  SchemeData d = pc_data("cyclic(15)");
  const int k = d.eigen.d;
  std::vector<int> x(k + 1, 0);
  x[1] = 1;
  x[2] = -1;
  x[3] = 1;
  std::vector<int> nx(k + 1, 0);
  for (int i = 1; i <= k; ++i) nx[i] = -x[i];
  Spectrum a = signed_spectrum_via_scheme(d.eigen, x).eigenvalues;
  Spectrum b = signed_spectrum_via_scheme(d.eigen, nx).eigenvalues;
  Spectrum neg;
  for (auto it = a.rbegin(); it != a.rend(); ++it) neg.push_back({-it->first, it->second});
  CHECK(b == neg);
}

TEST_CASE("complement identity on each eigenspace") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)"}) {
    CAPTURE(desc);
    SchemeData d = pc_data(desc);
    const int k = d.eigen.d;
    Mat<int64_t> p = d.eigen.p64();
    for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
      std::vector<int> x(k + 1, 0), xc(k + 1, 0);
      for (int r = 1; r <= k; ++r) {
        x[r] = (mask >> (r - 1)) & 1;
        xc[r] = 1 - x[r];
      }
      for (int s = 0; s <= k; ++s) {
        int64_t a = 0, b = 0;
        for (int r = 1; r <= k; ++r) {
          a += p(s, r) * x[r];
          b += p(s, r) * xc[r];
        }
        CHECK(a + b == (s == 0 ? d.g.n - 1 : -1));
      }
    }
  }
}

TEST_CASE("scheme spectra agree with dense adjacency char polys") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "cyclic(15)", "heisenberg(3)"}) {
    CAPTURE(desc);
    SchemeData d = pc_data(desc);
    const int k = d.eigen.d;
    for (uint64_t mask = 1; mask < (uint64_t(1) << k); ++mask) {
      std::vector<int> x(k + 1, 0);
      for (int r = 1; r <= k; ++r) x[r] = (mask >> (r - 1)) & 1;
      CHECK(spectrum_adjacency_crosscheck(d.g, d.scheme, d.eigen, x));
    }
  }
}

TEST_CASE("signed scheme spectra agree with dense signed adjacency") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "cyclic(25)"}) {
    CAPTURE(desc);
    SchemeData d = pc_data(desc);
    const int k = d.eigen.d;
    uint64_t total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    for (uint64_t code = 1; code < total; ++code) {
      uint64_t c = code;
      std::vector<int> x(k + 1, 0);
      for (int r = 1; r <= k; ++r) {
        int digit = static_cast<int>(c % 3);
        c /= 3;
        x[r] = digit == 2 ? -1 : digit;
      }
      CHECK(spectrum_adjacency_crosscheck(d.g, d.scheme, d.eigen, x));
    }
  }
}

TEST_CASE("verify_odd_eigenvalue on the fixtures") {
  VerificationReport c9 = verify_odd_eigenvalue(group_builtin("cyclic(9)"));
  CHECK(c9.passed());
  CHECK(c9.cases_checked == 3);

  VerificationReport f21 = verify_odd_eigenvalue(group_builtin("semidirect(7,3,2)"));
  CHECK(f21.passed());
  CHECK(f21.cases_checked == 3);
  // the three subset spectra across the eigenspaces
  SchemeData d = pc_data("semidirect(7,3,2)");
  Mat<int64_t> p = d.eigen.p64();
  auto row_values = [&](const std::vector<int>& x) {
    std::vector<int64_t> v;
    for (int s = 0; s <= 2; ++s) {
      int64_t acc = 0;
      for (int r = 1; r <= 2; ++r) acc += p(s, r) * x[r];
      v.push_back(acc);
    }
    return v;
  };
  CHECK(row_values({0, 1, 0}) == std::vector<int64_t>{6, 6, -1});
  CHECK(row_values({0, 0, 1}) == std::vector<int64_t>{14, -7, 0});
  CHECK(row_values({0, 1, 1}) == std::vector<int64_t>{20, -1, -1});
}

TEST_CASE("verify_odd_eigenvalue rejects even orders") {
  VerificationReport r = verify_odd_eigenvalue(group_builtin("cyclic(4)"));
  CHECK(r.status == VerifyStatus::kInapplicable);
}

TEST_CASE("even-order control: the 4-cycle has no odd eigenvalue") {
  SchemeData d = pc_data("cyclic(4)");
  // pc classes of Z_4: {0}, {2}, {1,3}; connection set {1,3} is the class
  // with valency 2
  REQUIRE(d.eigen.v == std::vector<int>{1, 1, 2});
  SpectrumReport r = spectrum_via_scheme(d.eigen, {0, 0, 1});
  CHECK(r.eigenvalues == Spectrum{{-2, 1}, {0, 2}, {2, 1}});
  CHECK(!r.has_odd);
  CHECK(spectrum_adjacency_crosscheck(d.g, d.scheme, d.eigen, {0, 0, 1}));
}

TEST_CASE("verify_signed_corollary fixtures") {
  VerificationReport c9 = verify_signed_corollary(group_builtin("cyclic(9)"));
  CHECK(c9.passed());
  CHECK(c9.cases_checked == 8);
  VerificationReport f21 = verify_signed_corollary(group_builtin("semidirect(7,3,2)"));
  CHECK(f21.passed());
  CHECK(f21.cases_checked == 8);
  VerificationReport z3 = verify_signed_corollary(group_builtin("cyclic(3)"));
  CHECK(z3.passed());
  CHECK(z3.cases_checked == 2);
  // cap: skipped, not failed
  VerificationReport capped = verify_signed_corollary(group_builtin("cyclic(45)"), 3);
  CHECK(capped.status == VerifyStatus::kSkipped);
}

TEST_CASE("verify_godsil_spiga fixtures") {
  VerificationReport c5 = verify_godsil_spiga(group_builtin("cyclic(5)"));
  CHECK(c5.passed());
  CHECK(c5.cases_checked == 15);
  CHECK(c5.detail.find("1 of 15") != std::string::npos);

  VerificationReport c9 = verify_godsil_spiga(group_builtin("cyclic(9)"));
  CHECK(c9.passed());
  CHECK(c9.cases_checked == 255);
  CHECK(c9.detail.find("3 of 255") != std::string::npos);

  VerificationReport f21 = verify_godsil_spiga(group_builtin("semidirect(7,3,2)"));
  CHECK(f21.passed());
  CHECK(f21.cases_checked == 15);
  CHECK(f21.detail.find("3 of 15") != std::string::npos);

  VerificationReport capped = verify_godsil_spiga(group_builtin("cyclic(17)"), 12);
  CHECK(capped.status == VerifyStatus::kSkipped);
}

TEST_CASE("cyclic(9) integral unions re-derived independently") {
  // the three integral unions are exactly the unions of {3,6} and the
  // six generators; check integrality by char-poly root exhaustion
  FiniteGroup g = group_builtin("cyclic(9)");
  std::vector<std::vector<int>> unions = {
      {3, 6}, {1, 2, 4, 5, 7, 8}, {1, 2, 3, 4, 5, 6, 7, 8}};
  for (const auto& members : unions) {
    IntPoly cp = char_poly(
        to_int_mat(cayley_adjacency(g, ConnectionSet::from_members(g, members))));
    CHECK(integer_roots(cp, Int(9)).total_multiplicity() == 9);
  }
  // a non-pc union is not integral
  IntPoly cp = char_poly(to_int_mat(cayley_adjacency(g, ConnectionSet::from_members(g, {1, 8}))));
  CHECK(integer_roots(cp, Int(9)).total_multiplicity() < 9);
}

TEST_CASE("signed connection sets validate their structure") {
  FiniteGroup g = group_builtin("cyclic(9)");
  SignedConnectionSet s = SignedConnectionSet::from_members(g, {3, 6}, {1, 2, 4, 5, 7, 8});
  Mat<int64_t> a = signed_cayley_adjacency(g, s);
  // entries are +1 on {3,6} differences and -1 on generator differences
  CHECK(a(0, 3) == 1);
  CHECK(a(0, 1) == -1);
  CHECK(a(0, 0) == 0);
  CHECK_THROWS_AS(SignedConnectionSet::from_members(g, {3}, {6}), Error);  // not inv-closed
  CHECK_THROWS_AS(SignedConnectionSet::from_members(g, {3, 6}, {3, 6}), Error);  // overlap
}
