#include <doctest.h>

#include <algorithm>

#include "cayscheme/errors.hpp"
#include "cayscheme/spectra.hpp"
#include "oracles.hpp"

using namespace cayscheme;

namespace {

Eigensystem pc_eigensystem(const std::string& desc) {
  FiniteGroup g = group_builtin(desc);
  return eigensystem_integral(scheme_from_partition(g, pc_classes(g)));
}

Mat<int64_t> p64_of(const Eigensystem& e) { return e.p64(); }

}  // namespace

TEST_CASE("eigensystem of the Z_3 pc scheme") {
  Eigensystem e = pc_eigensystem("cyclic(3)");
  REQUIRE(e.d == 1);
  CHECK(e.P(0, 0) == 1);
  CHECK(e.P(0, 1) == 2);
  CHECK(e.P(1, 0) == 1);
  CHECK(e.P(1, 1) == -1);
  CHECK(e.m == std::vector<int>{1, 2});
  // Q = 3 P^-1 = {{1,2},{1,-1}}
  CHECK(e.Q(0, 0) == 1);
  CHECK(e.Q(0, 1) == 2);
  CHECK(e.Q(1, 0) == 1);
  CHECK(e.Q(1, 1) == -1);
}

TEST_CASE("eigensystem of the cyclic(9) pc scheme") {
  Eigensystem e = pc_eigensystem("cyclic(9)");
  REQUIRE(e.d == 2);
  Mat<int64_t> p = p64_of(e);
  Mat<int64_t> want(3, 3);
  int64_t rows[3][3] = {{1, 2, 6}, {1, 2, -3}, {1, -1, 0}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) want(r, c) = rows[r][c];
  CHECK(p == want);
  CHECK(e.m == std::vector<int>{1, 2, 6});
}

TEST_CASE("eigensystem of the order-21 pc scheme") {
  Eigensystem e = pc_eigensystem("semidirect(7,3,2)");
  REQUIRE(e.d == 2);
  Mat<int64_t> p = p64_of(e);
  Mat<int64_t> want(3, 3);
  int64_t rows[3][3] = {{1, 6, 14}, {1, 6, -7}, {1, -1, 0}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) want(r, c) = rows[r][c];
  CHECK(p == want);
  CHECK(e.m == std::vector<int>{1, 2, 18});
}

TEST_CASE("non-integral scheme raises") {
  FiniteGroup g = group_builtin("cyclic(5)");
  AssociationScheme s = scheme_from_partition(g, conjugacy_classes(g));
  CHECK_THROWS_AS(eigensystem_integral(s), NonIntegralSchemeError);
}

TEST_CASE("cyclic pc eigensystems match the Ramanujan-sum oracle") {
  for (int n : {3, 5, 9, 15, 21, 25, 27, 45}) {
    CAPTURE(n);
    FiniteGroup g = group_builtin("cyclic(" + std::to_string(n) + ")");
    Eigensystem e = eigensystem_integral(scheme_from_partition(g, pc_classes(g)));
    oracles::CyclicPcOracle want = oracles::cyclic_pc_eigensystem(n);
    CHECK(e.v == want.v);
    CHECK(e.m == want.m);
    CHECK(p64_of(e) == want.p);
  }
}

TEST_CASE("dual eigenmatrix") {
  RatMat p = to_rat_mat(IntMat::identity(3));
  RatMat q = dual_eigenmatrix(p, 5);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(q(r, c) == (r == c ? Rat(5) : Rat(0)));

  RatMat singular(2, 2, Rat(1));
  CHECK_THROWS_AS(dual_eigenmatrix(singular, 4), SingularMatrixError);

  Eigensystem e = pc_eigensystem("cyclic(9)");
  RatMat pq = to_rat_mat(e.P) * e.Q;
  for (int r = 0; r <= e.d; ++r)
    for (int c = 0; c <= e.d; ++c) CHECK(pq(r, c) == (r == c ? Rat(9) : Rat(0)));
  // first column of Q is all-ones
  for (int r = 0; r <= e.d; ++r) CHECK(e.Q(r, 0) == 1);
}

TEST_CASE("eigenmatrix identities hold exactly") {
  for (const char* desc : {"cyclic(3)", "cyclic(9)", "cyclic(15)", "semidirect(7,3,2)",
                           "heisenberg(3)", "semidirect(9,3,4)", "cyclic(4)"}) {
    CAPTURE(desc);
    Eigensystem e = pc_eigensystem(desc);
    IdentityReport r = verify_identities(e);
    CHECK(r.pq_identity);
    CHECK(r.dm_identity);
    CHECK(r.orthogonality);
  }
}

TEST_CASE("corrupted multiplicities break the D_m identity") {
  Eigensystem e = pc_eigensystem("semidirect(7,3,2)");
  e.m = {1, 1, 19};
  IdentityReport r = verify_identities(e);
  CHECK(r.pq_identity);  // P and Q untouched
  CHECK(!r.dm_identity);
  CHECK(!r.all_pass());
  CHECK(!r.witness.empty());
}

TEST_CASE("frame quotients") {
  CHECK(frame_quotient(pc_eigensystem("cyclic(3)")) == Int(9));
  CHECK(frame_quotient(pc_eigensystem("cyclic(9)")) == Int(729));
  CHECK(frame_quotient(pc_eigensystem("semidirect(7,3,2)")) == Int(21609));
}

TEST_CASE("frame quotient mismatch is detected") {
  Eigensystem e = pc_eigensystem("cyclic(9)");
  e.m = {1, 6, 2};  // still sums to 9, but wrong pairing
  CHECK_THROWS_AS(frame_quotient(e), FrameQuotientMismatchError);
}

TEST_CASE("det(P) is odd for odd-order pc schemes") {
  for (const char* desc : {"cyclic(3)", "cyclic(9)", "cyclic(15)", "cyclic(27)",
                           "semidirect(7,3,2)", "heisenberg(3)", "semidirect(9,3,4)"}) {
    CAPTURE(desc);
    CHECK(det_parity(pc_eigensystem(desc).P) == Parity::kOdd);
  }
  // even-order contrast: P of the Z_2 scheme has even determinant
  CHECK(det_parity(pc_eigensystem("cyclic(2)").P) == Parity::kEven);
}

TEST_CASE("eigenspace bases are genuine eigenvectors") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)"}) {
    CAPTURE(desc);
    FiniteGroup g = group_builtin(desc);
    AssociationScheme s = scheme_from_partition(g, pc_classes(g));
    Eigensystem e = eigensystem_integral(s);
    for (int cls = 0; cls <= e.d; ++cls) {
      // dense class matrix
      RatMat a(s.n, s.n);
      for (int x = 0; x < s.n; ++x)
        for (int y = 0; y < s.n; ++y)
          if (s.rel(x, y) == cls) a(x, y) = Rat(1);
      for (int sp = 0; sp <= e.d; ++sp) {
        RatMat image = a * e.spaces[sp];
        for (int r = 0; r < s.n; ++r)
          for (int c = 0; c < e.m[sp]; ++c)
            CHECK(image(r, c) == Rat(e.P(sp, cls)) * e.spaces[sp](r, c));
      }
    }
  }
}

TEST_CASE("eigensystem is independent of the class processing order") {
  // relabel classes 1 and 2 of the scheme (a relabelled but equal
  // scheme); the refinement then encounters the class matrices in the
  // other order, and the canonical result must agree column-for-column
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "cyclic(15)"}) {
    CAPTURE(desc);
    FiniteGroup g = group_builtin(desc);
    AssociationScheme s = scheme_from_partition(g, pc_classes(g));
    Eigensystem base = eigensystem_integral(s);

    AssociationScheme swapped = s;
    std::vector<int> perm(s.d + 1);
    for (int i = 0; i <= s.d; ++i) perm[i] = i;
    std::swap(perm[1], perm[2]);
    for (auto& v : swapped.relation) v = static_cast<uint16_t>(perm[v]);
    std::swap(swapped.classes.blocks[1], swapped.classes.blocks[2]);
    for (int x = 0; x < s.n; ++x)
      swapped.classes.block_of[x] = perm[s.classes.block_of[x]];
    swapped.transpose_map.assign(s.d + 1, 0);
    for (int r = 0; r <= s.d; ++r)
      swapped.transpose_map[perm[r]] = perm[s.transpose_map[r]];

    Eigensystem other = eigensystem_integral(swapped);
    // same eigenvalue rows after undoing the column relabelling
    std::vector<std::vector<int64_t>> rows_base, rows_other;
    Mat<int64_t> pb = base.p64(), po = other.p64();
    for (int r = 0; r <= s.d; ++r) {
      std::vector<int64_t> rb, ro;
      for (int c = 0; c <= s.d; ++c) {
        rb.push_back(pb(r, c));
        ro.push_back(po(r, perm[c]));
      }
      rows_base.push_back(rb);
      rows_other.push_back(ro);
    }
    std::sort(rows_base.begin(), rows_base.end());
    std::sort(rows_other.begin(), rows_other.end());
    CHECK(rows_base == rows_other);
    std::vector<int> mb = base.m, mo = other.m;
    std::sort(mb.begin(), mb.end());
    std::sort(mo.begin(), mo.end());
    CHECK(mb == mo);
  }
}

TEST_CASE("exact equitable quotient check for identical schemes") {
  FiniteGroup g = group_builtin("semidirect(7,3,2)");
  AssociationScheme s = scheme_from_partition(g, pc_classes(g));
  Eigensystem e = eigensystem_integral(s);
  SubschemeResult sub = is_subscheme(s, s);
  REQUIRE(sub.ok());
  QuotientReport r = equitable_quotient_check(e, e, *sub.certificate);
  CHECK(r.equitable);
  CHECK(r.multiplicities_match);
  CHECK(r.char_poly_divides);
}

TEST_CASE("exact equitable quotient check for S_3") {
  // the conjugacy scheme of S_3 is integral and equals its pc scheme
  FiniteGroup g = group_builtin("semidirect(3,2,2)");
  AssociationScheme conj = scheme_from_partition(g, conjugacy_classes(g));
  AssociationScheme pc = scheme_from_partition(g, pc_classes(g));
  Eigensystem ce = eigensystem_integral(conj);
  Eigensystem pe = eigensystem_integral(pc);
  SubschemeResult sub = is_subscheme(pc, conj);
  REQUIRE(sub.ok());
  QuotientReport r = equitable_quotient_check(ce, pe, *sub.certificate);
  CHECK(r.all_pass());
}

TEST_CASE("mod-p equitable quotient check") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "cyclic(15)", "heisenberg(3)"}) {
    CAPTURE(desc);
    FiniteGroup g = group_builtin(desc);
    AssociationScheme conj = scheme_from_partition(g, conjugacy_classes(g));
    AssociationScheme pc = scheme_from_partition(g, pc_classes(g));
    AxiomReport ax = verify_scheme_axioms(conj);
    REQUIRE(ax.all_pass());
    Eigensystem pe = eigensystem_integral(pc);
    SubschemeResult sub = is_subscheme(pc, conj);
    REQUIRE(sub.ok());
    for (uint64_t p : admissible_primes(g, 3)) {
      CAPTURE(p);
      ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(conj, *ax.numbers, p, 20260801);
      std::vector<Int> mults = multiplicities_modp(pm, valencies(conj), g.n);
      QuotientReport r = equitable_quotient_check_modp(pm, mults, pe, *sub.certificate);
      CHECK(r.equitable);
      CHECK(r.multiplicities_match);
      CHECK(r.char_poly_divides);
    }
  }
}

TEST_CASE("mod-p quotient check detects a wrong subscheme eigenmatrix") {
  FiniteGroup g = group_builtin("cyclic(9)");
  AssociationScheme conj = scheme_from_partition(g, conjugacy_classes(g));
  AssociationScheme pc = scheme_from_partition(g, pc_classes(g));
  AxiomReport ax = verify_scheme_axioms(conj);
  Eigensystem pe = eigensystem_integral(pc);
  SubschemeResult sub = is_subscheme(pc, conj);
  REQUIRE(sub.ok());
  pe.P(2, 2) = 1;  // corrupt one eigenvalue
  uint64_t p = choose_prime(g);
  ModPEigenmatrix pm = conjugacy_eigenmatrix_modp(conj, *ax.numbers, p, 20260801);
  std::vector<Int> mults = multiplicities_modp(pm, valencies(conj), g.n);
  QuotientReport r = equitable_quotient_check_modp(pm, mults, pe, *sub.certificate);
  CHECK(!r.all_pass());
}
