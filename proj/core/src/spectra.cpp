#include "cayscheme/spectra.hpp"

#include <algorithm>
#include <numeric>

#include "cayscheme/errors.hpp"

namespace cayscheme {

Mat<int64_t> Eigensystem::p64() const {
  Mat<int64_t> out(P.rows(), P.cols());
  for (int r = 0; r < P.rows(); ++r)
    for (int c = 0; c < P.cols(); ++c) {
      if (!P(r, c).fits_slong_p()) throw Error("eigenvalue exceeds int64");
      out(r, c) = P(r, c).get_si();
    }
  return out;
}

namespace {

struct RefineSpace {
  RatMat basis;               // n x dim
  std::vector<Int> eigenvalue;  // scalar of each processed class matrix
};

// Dense 0/1 class matrix row applied to a rational basis: out = A_r * B
// computed straight off the relation table (row g of A_r selects the
// vertices w with rel(g, w) = r).
RatMat class_times(const AssociationScheme& s, int cls, const RatMat& basis) {
  const int n = s.n, k = basis.cols();
  RatMat out(n, k);
  for (int g = 0; g < n; ++g) {
    const uint16_t* row = &s.relation[static_cast<size_t>(g) * n];
    for (int w = 0; w < n; ++w) {
      if (row[w] != cls) continue;
      for (int c = 0; c < k; ++c) out(g, c) += basis(w, c);
    }
  }
  return out;
}

}  // namespace

Eigensystem eigensystem_integral(const AssociationScheme& s) {
  const int n = s.n;
  const int k = s.d + 1;
  const std::vector<int> v = valencies(s);

  std::vector<RefineSpace> spaces;
  {
    RefineSpace whole;
    whole.basis = to_rat_mat(IntMat::identity(n));
    spaces.push_back(std::move(whole));
  }

  // Refine by each class matrix in turn. Class 0 is the identity and
  // never splits anything; record its scalar directly.
  for (int cls = 1; cls < k; ++cls) {
    std::vector<RefineSpace> next;
    for (RefineSpace& sp : spaces) {
      const int dim = sp.basis.cols();
      RatMat image = class_times(s, cls, sp.basis);
      RatMat restriction = (dim == n) ? image : solve_in_column_space(sp.basis, image);
      IntPoly cp = char_poly(restriction);
      IntegerRoots roots = integer_roots(cp, Int(v[cls]));
      if (roots.remainder.degree() > 0)
        throw NonIntegralSchemeError("class " + std::to_string(cls) +
                                     " has a non-integer eigenvalue; remainder " +
                                     roots.remainder.str());
      int dim_sum = 0;
      for (const auto& [root, mult] : roots.roots) {
        RatMat shifted = restriction;
        for (int i = 0; i < dim; ++i) shifted(i, i) -= Rat(root);
        auto null_coeffs = nullspace(shifted);
        if (null_coeffs.empty()) continue;
        RefineSpace child;
        child.eigenvalue = sp.eigenvalue;
        child.eigenvalue.push_back(root);
        child.basis = RatMat(n, static_cast<int>(null_coeffs.size()));
        for (size_t vec = 0; vec < null_coeffs.size(); ++vec)
          for (int row = 0; row < n; ++row) {
            Rat acc(0);
            for (int j = 0; j < dim; ++j)
              acc += sp.basis(row, j) * null_coeffs[vec][j];
            child.basis(row, static_cast<int>(vec)) = acc;
          }
        dim_sum += child.basis.cols();
        next.push_back(std::move(child));
      }
      if (dim_sum != dim)
        throw NonIntegralSchemeError("class " + std::to_string(cls) +
                                     " is not diagonalizable over the rationals");
    }
    spaces = std::move(next);
  }

  // Assemble rows; prepend the eigenvalue 1 of A_0.
  struct Row {
    std::vector<Int> p;
    RatMat basis;
  };
  std::vector<Row> rows;
  rows.reserve(spaces.size());
  for (RefineSpace& sp : spaces) {
    Row row;
    row.p.reserve(k);
    row.p.push_back(1);
    for (const Int& ev : sp.eigenvalue) row.p.push_back(ev);
    row.basis = std::move(sp.basis);
    rows.push_back(std::move(row));
  }

  // Canonical order: trivial row (= valencies) first, the rest
  // lexicographically descending.
  std::vector<Int> trivial;
  trivial.reserve(k);
  for (int r = 0; r < k; ++r) trivial.push_back(v[r]);
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const Row& row) { return row.p == trivial; });
  if (it == rows.end()) throw Error("eigensystem: trivial eigenspace missing");
  std::iter_swap(rows.begin(), it);
  std::sort(rows.begin() + 1, rows.end(),
            [](const Row& a, const Row& b) { return a.p > b.p; });

  Eigensystem e;
  e.n = n;
  e.d = s.d;
  const int count = static_cast<int>(rows.size());
  if (count != k)
    throw Error("eigensystem: got " + std::to_string(count) + " eigenspaces for " +
                std::to_string(k) + " classes");
  e.P = IntMat(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) e.P(r, c) = rows[r].p[c];
  e.v = v;
  e.m.reserve(k);
  for (const Row& row : rows) e.m.push_back(row.basis.cols());
  if (std::accumulate(e.m.begin(), e.m.end(), 0) != n)
    throw Error("eigensystem: multiplicities do not sum to n");
  if (e.m[0] != 1) throw Error("eigensystem: trivial eigenspace has rank != 1");
  for (Row& row : rows) e.spaces.push_back(std::move(row.basis));
  e.Q = dual_eigenmatrix(to_rat_mat(e.P), n);
  return e;
}

RatMat dual_eigenmatrix(const RatMat& p, int n) {
  if (!p.square()) throw Error("dual_eigenmatrix: P not square");
  RatMat q;
  try {
    q = inverse(p);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("dual_eigenmatrix: P is singular");
  }
  for (int r = 0; r < q.rows(); ++r)
    for (int c = 0; c < q.cols(); ++c) q(r, c) *= Rat(n);
  return q;
}

IdentityReport verify_identities(const Eigensystem& e) {
  IdentityReport report;
  const int k = e.d + 1;
  RatMat p = to_rat_mat(e.P);

  // PQ = nI
  RatMat pq = p * e.Q;
  report.pq_identity = true;
  for (int r = 0; r < k && report.pq_identity; ++r)
    for (int c = 0; c < k; ++c) {
      Rat want = (r == c) ? Rat(e.n) : Rat(0);
      if (pq(r, c) != want) {
        report.pq_identity = false;
        report.witness = "PQ != nI at (" + std::to_string(r) + "," + std::to_string(c) +
                         "): deviation " + to_string(Rat(pq(r, c) - want));
        break;
      }
    }

  // D_m P = Q^T D_v  (rational eigensystem: conjugation is transposition)
  report.dm_identity = true;
  for (int sidx = 0; sidx < k && report.dm_identity; ++sidx)
    for (int r = 0; r < k; ++r) {
      Rat lhs = Rat(e.m[sidx]) * p(sidx, r);
      Rat rhs = e.Q(r, sidx) * Rat(e.v[r]);
      if (lhs != rhs) {
        report.dm_identity = false;
        if (report.witness.empty())
          report.witness = "D_m P != Q^T D_v at (" + std::to_string(sidx) + "," +
                           std::to_string(r) + "): deviation " + to_string(Rat(lhs - rhs));
        break;
      }
    }

  // P^T D_m P = n D_v
  report.orthogonality = true;
  for (int r = 0; r < k && report.orthogonality; ++r)
    for (int c = 0; c < k; ++c) {
      Rat acc(0);
      for (int sidx = 0; sidx < k; ++sidx)
        acc += p(sidx, r) * Rat(e.m[sidx]) * p(sidx, c);
      Rat want = (r == c) ? Rat(e.n) * Rat(e.v[r]) : Rat(0);
      if (acc != want) {
        report.orthogonality = false;
        if (report.witness.empty())
          report.witness = "P^T D_m P != n D_v at (" + std::to_string(r) + "," +
                           std::to_string(c) + "): deviation " + to_string(Rat(acc - want));
        break;
      }
    }
  return report;
}

Int frame_quotient(const Eigensystem& e) {
  const int k = e.d + 1;
  Rat q(1);
  for (int j = 0; j < k; ++j) q *= make_rat(Int(e.v[j]), Int(e.m[j]));
  for (int j = 0; j < k; ++j) q *= Rat(e.n);
  if (!is_integer(q))
    throw FrameQuotientMismatchError("frame quotient not integral: " + to_string(q));
  Int by_formula = q.get_num();
  // P is rational here, so det(P^*P) = det(P)^2.
  Int d = det(e.P);
  Int by_det = d * d;
  if (by_formula != by_det)
    throw FrameQuotientMismatchError("frame quotient mismatch: n^(d+1) prod v/m = " +
                                     by_formula.get_str() + " but det(P^T P) = " +
                                     by_det.get_str());
  return by_formula;
}

namespace {

// Alignment for the divisibility statement. Rows of P group by the
// eigenspace cells D_s, columns by the class cells C_r; the quotient
// lemma needs one common position partition, so each column group C_c
// must share its span with a row group of the same size. The cell size
// multisets agree (Brauer's permutation lemma for the Galois action on
// classes and characters) but not necessarily index-by-index, so build
// a size-consistent pairing sigma: position c holds columns C_c and
// rows D_{sigma(c)}. The quotient matrix of the blocked P is then P'
// with its rows permuted by sigma.
bool quotient_alignment(const std::vector<int>& row_cell,
                        const SubschemeCertificate& cert, std::vector<int>& row_order,
                        std::vector<int>& col_order, std::vector<int>& sigma,
                        std::string& witness) {
  const int db = static_cast<int>(cert.cells.size());
  const int da = static_cast<int>(row_cell.size());
  std::vector<std::vector<int>> row_groups(db);
  for (int j = 0; j < da; ++j) row_groups[row_cell[j]].push_back(j);

  // Pair cells of equal size in index order (any size-consistent
  // pairing satisfies the intertwining; this one is deterministic).
  sigma.assign(db, -1);
  std::vector<bool> used(db, false);
  for (int c = 0; c < db; ++c) {
    for (int s = 0; s < db; ++s) {
      if (used[s] || row_groups[s].size() != cert.cells[c].size()) continue;
      sigma[c] = s;
      used[s] = true;
      break;
    }
    if (sigma[c] < 0) {
      witness = "no eigenspace cell of size " + std::to_string(cert.cells[c].size()) +
                " left to pair with class cell " + std::to_string(c);
      return false;
    }
  }
  for (int c = 0; c < db; ++c) {
    for (int j : row_groups[sigma[c]]) row_order.push_back(j);
    for (int i : cert.cells[c]) col_order.push_back(i);
  }
  return true;
}

}  // namespace

QuotientReport equitable_quotient_check(const Eigensystem& a_sys,
                                        const Eigensystem& b_sys,
                                        const SubschemeCertificate& cert) {
  QuotientReport report;
  const int da = a_sys.d + 1;
  const int db = b_sys.d + 1;
  report.row_cell.assign(da, -1);

  // Match each parent eigenspace j to the subscheme eigenvalue row it
  // satisfies: the fused column sums over each cell must reproduce a row
  // of B's eigenmatrix. Row sums of the block P_{rs} being constant and
  // equal to the subscheme eigenvalue is exactly this statement.
  report.equitable = true;
  for (int j = 0; j < da && report.equitable; ++j) {
    std::vector<Int> fused(db, Int(0));
    for (int r = 0; r < db; ++r)
      for (int i : cert.cells[r]) fused[r] += a_sys.P(j, i);
    int match = -1;
    for (int sidx = 0; sidx < db; ++sidx) {
      bool same = true;
      for (int r = 0; r < db && same; ++r)
        if (b_sys.P(sidx, r) != fused[r]) same = false;
      if (same) {
        match = sidx;
        break;
      }
    }
    if (match < 0) {
      report.equitable = false;
      std::string row;
      for (int r = 0; r < db; ++r) row += (r ? "," : "") + fused[r].get_str();
      report.witness = "parent eigenspace " + std::to_string(j) +
                       " has fused row (" + row + ") matching no subscheme eigenvalue row";
      break;
    }
    report.row_cell[j] = match;
  }

  if (report.equitable) {
    // Cell multiplicities must add up to the subscheme multiplicities
    // (the subscheme idempotents are sums of the parent idempotents).
    std::vector<int> cell_mult(db, 0);
    for (int j = 0; j < da; ++j) cell_mult[report.row_cell[j]] += a_sys.m[j];
    report.multiplicities_match = true;
    for (int sidx = 0; sidx < db; ++sidx)
      if (cell_mult[sidx] != b_sys.m[sidx]) {
        report.multiplicities_match = false;
        report.witness = "cell " + std::to_string(sidx) + " multiplicities sum to " +
                         std::to_string(cell_mult[sidx]) + ", expected " +
                         std::to_string(b_sys.m[sidx]);
        break;
      }

    std::vector<int> row_order, col_order, sigma;
    if (!quotient_alignment(report.row_cell, cert, row_order, col_order, sigma,
                            report.witness)) {
      report.equitable = false;
      return report;
    }
    IntMat aligned(da, da);
    for (int r = 0; r < da; ++r)
      for (int c = 0; c < da; ++c) aligned(r, c) = a_sys.P(row_order[r], col_order[c]);
    IntMat quotient(db, db);
    for (int s = 0; s < db; ++s)
      for (int r = 0; r < db; ++r) quotient(s, r) = b_sys.P(sigma[s], r);
    report.char_poly_divides = poly_divides(char_poly(quotient), char_poly(aligned));
    if (!report.char_poly_divides && report.witness.empty())
      report.witness = "char poly of the subscheme eigenmatrix does not divide the parent's";
  }
  return report;
}

QuotientReport equitable_quotient_check_modp(const ModPEigenmatrix& a_modp,
                                             const std::vector<Int>& a_mults,
                                             const Eigensystem& b_sys,
                                             const SubschemeCertificate& cert) {
  QuotientReport report;
  report.prime = a_modp.p;
  const int da = a_modp.d + 1;
  const int db = b_sys.d + 1;
  Fp F(a_modp.p);
  report.row_cell.assign(da, -1);

  // B's integer eigenmatrix reduced mod p. Distinct rows stay distinct:
  // entries are bounded by n and p > n^2.
  FpMat bp(db, db);
  for (int r = 0; r < db; ++r)
    for (int c = 0; c < db; ++c) bp(r, c) = F.reduce(b_sys.P(r, c));

  report.equitable = true;
  for (int j = 0; j < da && report.equitable; ++j) {
    std::vector<uint64_t> fused(db, 0);
    for (int r = 0; r < db; ++r)
      for (int i : cert.cells[r]) fused[r] = F.add(fused[r], a_modp.pm(j, i));
    int match = -1;
    for (int sidx = 0; sidx < db; ++sidx) {
      bool same = true;
      for (int r = 0; r < db && same; ++r)
        if (bp(sidx, r) != fused[r]) same = false;
      if (same) {
        match = sidx;
        break;
      }
    }
    if (match < 0) {
      report.equitable = false;
      report.witness = "mod " + std::to_string(a_modp.p) + ": parent eigenspace " +
                       std::to_string(j) + " matches no subscheme eigenvalue row";
      break;
    }
    report.row_cell[j] = match;
  }

  if (report.equitable) {
    std::vector<Int> cell_mult(db, Int(0));
    for (int j = 0; j < da; ++j) cell_mult[report.row_cell[j]] += a_mults[j];
    report.multiplicities_match = true;
    for (int sidx = 0; sidx < db; ++sidx)
      if (cell_mult[sidx] != b_sys.m[sidx]) {
        report.multiplicities_match = false;
        report.witness = "mod " + std::to_string(a_modp.p) + ": cell " +
                         std::to_string(sidx) + " multiplicities mismatch";
        break;
      }

    std::vector<int> row_order, col_order, sigma;
    if (!quotient_alignment(report.row_cell, cert, row_order, col_order, sigma,
                            report.witness)) {
      report.equitable = false;
      return report;
    }
    FpMat aligned(da, da);
    for (int r = 0; r < da; ++r)
      for (int c = 0; c < da; ++c) aligned(r, c) = a_modp.pm(row_order[r], col_order[c]);
    FpMat quotient(db, db);
    for (int s = 0; s < db; ++s)
      for (int r = 0; r < db; ++r) quotient(s, r) = bp(sigma[s], r);
    FpPoly cp_a = fp_char_poly(F, aligned);
    FpPoly cp_b = fp_char_poly(F, quotient);
    report.char_poly_divides = fp_poly_divides(F, cp_b, cp_a);
    if (!report.char_poly_divides && report.witness.empty())
      report.witness = "mod " + std::to_string(a_modp.p) +
                       ": subscheme char poly does not divide the parent's";
  }
  return report;
}

}  // namespace cayscheme
