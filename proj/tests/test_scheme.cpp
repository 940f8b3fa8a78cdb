#include <doctest.h>

#include "cayscheme/errors.hpp"
#include "cayscheme/group.hpp"
#include "cayscheme/matrix.hpp"
#include "cayscheme/scheme.hpp"

using namespace cayscheme;

namespace {

Partition explicit_partition(int n, std::vector<std::vector<int>> blocks) {
  std::vector<int> labels(n, -1);
  for (const auto& b : blocks)
    for (int x : b) labels[x] = b[0];
  return partition_from_labels(n, labels);
}

// Dense 0/1 matrix of one scheme class.
IntMat class_matrix(const AssociationScheme& s, int cls) {
  IntMat m(s.n, s.n);
  for (int g = 0; g < s.n; ++g)
    for (int h = 0; h < s.n; ++h)
      if (s.rel(g, h) == cls) m(g, h) = 1;
  return m;
}

}  // namespace

TEST_CASE("scheme from the conjugacy classes of Z_3") {
  FiniteGroup g = group_builtin("cyclic(3)");
  AssociationScheme s = scheme_from_partition(g, conjugacy_classes(g));
  CHECK(s.d == 2);
  // relation(g, h) = class of h - g: the two directed triangles
  CHECK(s.rel(0, 1) == 1);
  CHECK(s.rel(1, 2) == 1);
  CHECK(s.rel(2, 0) == 1);
  CHECK(s.rel(1, 0) == 2);
  CHECK(s.rel(0, 0) == 0);
  CHECK(s.transpose_map == std::vector<int>{0, 2, 1});
}

TEST_CASE("pc scheme of semidirect(7,3,2)") {
  FiniteGroup g = group_builtin("semidirect(7,3,2)");
  AssociationScheme s = scheme_from_partition(g, pc_classes(g));
  CHECK(s.d == 2);
  CHECK(valencies(s) == std::vector<int>{1, 6, 14});
  // pc blocks are inverse-closed, so every class is self-paired
  CHECK(s.transpose_map == std::vector<int>{0, 1, 2});
}

TEST_CASE("inverse-incompatible partition is rejected") {
  FiniteGroup g = group_builtin("cyclic(5)");
  Partition part = explicit_partition(5, {{0}, {1}, {2, 3, 4}});
  CHECK_THROWS_AS(scheme_from_partition(g, part), NotInverseCompatibleError);
}

TEST_CASE("axioms pass for conjugacy and pc schemes") {
  for (const char* desc : {"cyclic(3)", "cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)",
                           "semidirect(3,2,2)", "cyclic(12)"}) {
    FiniteGroup g = group_builtin(desc);
    CAPTURE(desc);
    CHECK(verify_scheme_axioms(scheme_from_partition(g, conjugacy_classes(g))).all_pass());
    CHECK(verify_scheme_axioms(scheme_from_partition(g, pc_classes(g))).all_pass());
  }
}

TEST_CASE("inverse-compatible but non-scheme partition fails axiom 4") {
  FiniteGroup g = group_builtin("cyclic(5)");
  Partition part = explicit_partition(5, {{0}, {1, 4}, {2}, {3}});
  AssociationScheme s = scheme_from_partition(g, part);
  AxiomReport report = verify_scheme_axioms(s);
  CHECK(report.identity_and_sum);
  CHECK(report.transpose_closed);
  CHECK(!report.closed_products);
  CHECK(!report.all_pass());
  CHECK(report.witness.find("axiom (4)") != std::string::npos);
}

TEST_CASE("valencies") {
  FiniteGroup g = group_builtin("semidirect(7,3,2)");
  CHECK(valencies(scheme_from_partition(g, conjugacy_classes(g))) ==
        std::vector<int>{1, 3, 3, 7, 7});
  FiniteGroup c9 = group_builtin("cyclic(9)");
  CHECK(valencies(scheme_from_partition(c9, pc_classes(c9))) == std::vector<int>{1, 2, 6});
  FiniteGroup t = group_builtin("trivial");
  CHECK(valencies(scheme_from_partition(t, conjugacy_classes(t))) == std::vector<int>{1});
}

TEST_CASE("pc scheme is a subscheme of the conjugacy scheme") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)"}) {
    FiniteGroup g = group_builtin(desc);
    AssociationScheme conj = scheme_from_partition(g, conjugacy_classes(g));
    AssociationScheme pc = scheme_from_partition(g, pc_classes(g));
    SubschemeResult r = is_subscheme(pc, conj);
    CAPTURE(desc);
    REQUIRE(r.ok());
    CHECK(r.certificate->cells[0] == std::vector<int>{0});
    // cells cover the conjugacy classes once each
    int total = 0;
    for (const auto& cell : r.certificate->cells) total += static_cast<int>(cell.size());
    CHECK(total == conj.d + 1);
    // and the element unions agree
    for (int j = 0; j <= conj.d; ++j) {
      int cell = r.certificate->cell_of[j];
      for (int x : conj.classes.blocks[j])
        CHECK(pc.classes.block_of[x] == cell);
    }
  }
}

TEST_CASE("a scheme is a subscheme of itself with singleton cells") {
  FiniteGroup g = group_builtin("cyclic(9)");
  AssociationScheme s = scheme_from_partition(g, pc_classes(g));
  SubschemeResult r = is_subscheme(s, s);
  REQUIRE(r.ok());
  for (int j = 0; j <= s.d; ++j) CHECK(r.certificate->cells[j] == std::vector<int>{j});
}

TEST_CASE("mismatched vertex sets are not subschemes") {
  FiniteGroup c9 = group_builtin("cyclic(9)");
  FiniteGroup c7 = group_builtin("cyclic(7)");
  SubschemeResult r = is_subscheme(scheme_from_partition(c9, pc_classes(c9)),
                                   scheme_from_partition(c7, conjugacy_classes(c7)));
  CHECK(!r.ok());
  CHECK(!r.witness.empty());
}

TEST_CASE("conjugacy scheme is not a subscheme of the pc scheme") {
  FiniteGroup g = group_builtin("cyclic(9)");
  SubschemeResult r = is_subscheme(scheme_from_partition(g, conjugacy_classes(g)),
                                   scheme_from_partition(g, pc_classes(g)));
  CHECK(!r.ok());
}

TEST_CASE("intersection numbers reconstruct the products exactly") {
  for (const char* desc : {"cyclic(9)", "semidirect(7,3,2)", "heisenberg(3)", "cyclic(15)"}) {
    FiniteGroup g = group_builtin(desc);
    CAPTURE(desc);
    AssociationScheme s = scheme_from_partition(g, pc_classes(g));
    AxiomReport report = verify_scheme_axioms(s);
    REQUIRE(report.all_pass());
    REQUIRE(report.numbers.has_value());
    const int k = s.d + 1;
    std::vector<IntMat> mats;
    for (int r = 0; r < k; ++r) mats.push_back(class_matrix(s, r));
    std::vector<int> v = valencies(s);
    for (int r = 0; r < k; ++r)
      for (int sc = 0; sc < k; ++sc) {
        IntMat product = mats[r] * mats[sc];
        IntMat combo(s.n, s.n);
        for (int t = 0; t < k; ++t) {
          int64_t coef = report.numbers->at(r, sc, t);
          if (coef == 0) continue;
          for (int a = 0; a < s.n; ++a)
            for (int b = 0; b < s.n; ++b)
              if (s.rel(a, b) == t) combo(a, b) += Int(static_cast<long>(coef));
        }
        CHECK(product == combo);
        // row-sum identity: sum_t p[r][s][t] v_t = v_r v_s
        int64_t weighted = 0;
        for (int t = 0; t < k; ++t) weighted += report.numbers->at(r, sc, t) * v[t];
        CHECK(weighted == static_cast<int64_t>(v[r]) * v[sc]);
      }
  }
}

TEST_CASE("intersection numbers are symmetric for these commutative schemes") {
  FiniteGroup g = group_builtin("heisenberg(3)");
  AssociationScheme s = scheme_from_partition(g, conjugacy_classes(g));
  AxiomReport report = verify_scheme_axioms(s);
  REQUIRE(report.all_pass());
  const int k = s.d + 1;
  for (int r = 0; r < k; ++r)
    for (int sc = 0; sc < k; ++sc)
      for (int t = 0; t < k; ++t)
        CHECK(report.numbers->at(r, sc, t) == report.numbers->at(sc, r, t));
}
