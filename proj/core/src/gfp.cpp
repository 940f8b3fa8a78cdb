#include "cayscheme/gfp.hpp"

#include <algorithm>

#include "cayscheme/errors.hpp"

namespace cayscheme {

uint64_t Fp::reduce(const Int& v) const {
  Int m = v % Int(static_cast<unsigned long>(p));
  if (m < 0) m += Int(static_cast<unsigned long>(p));
  return m.get_ui();
}

uint64_t Fp::pow(uint64_t a, uint64_t e) const {
  uint64_t acc = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

uint64_t Fp::inv(uint64_t a) const {
  if (a == 0) throw Error("Fp::inv of zero");
  return pow(a, p - 2);
}

FpPoly fp_poly_trim(FpPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

namespace {

// Monic remainder of a mod b (b non-zero).
FpPoly poly_rem(const Fp& F, FpPoly a, const FpPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  uint64_t lead_inv = F.inv(b.back());
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    uint64_t f = F.mul(a.back(), lead_inv);
    int shift = static_cast<int>(a.size()) - 1 - db;
    for (int i = 0; i <= db; ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(f, b[i]));
    a = fp_poly_trim(std::move(a));
  }
  return a;
}

FpPoly poly_mul(const Fp& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  return out;
}

FpPoly make_monic(const Fp& F, FpPoly f) {
  if (f.empty()) return f;
  uint64_t inv = F.inv(f.back());
  for (auto& c : f) c = F.mul(c, inv);
  return f;
}

}  // namespace

FpPoly fp_poly_mod(const Fp& F, FpPoly a, const FpPoly& mod) {
  return poly_rem(F, std::move(a), mod);
}

FpPoly fp_poly_mulmod(const Fp& F, const FpPoly& a, const FpPoly& b, const FpPoly& mod) {
  return poly_rem(F, poly_mul(F, a, b), mod);
}

FpPoly fp_poly_gcd(const Fp& F, FpPoly a, FpPoly b) {
  a = fp_poly_trim(std::move(a));
  b = fp_poly_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = poly_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, std::move(a));
}

FpPoly fp_poly_powmod(const Fp& F, FpPoly base, Int e, const FpPoly& mod) {
  FpPoly acc{1};
  base = poly_rem(F, std::move(base), mod);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = fp_poly_mulmod(F, acc, base, mod);
    base = fp_poly_mulmod(F, base, base, mod);
    e >>= 1;
  }
  return acc;
}

FpPoly fp_char_poly(const Fp& F, FpMat m) {
  const int n = m.rows();
  if (n == 0) return {1};
  // Reduce to upper Hessenberg form by similarity transforms.
  for (int col = 0; col + 2 < n; ++col) {
    int pivot = -1;
    for (int r = col + 1; r < n; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != col + 1) {
      for (int c = 0; c < n; ++c) std::swap(m(pivot, c), m(col + 1, c));
      for (int r = 0; r < n; ++r) std::swap(m(r, pivot), m(r, col + 1));
    }
    uint64_t inv = F.inv(m(col + 1, col));
    for (int r = col + 2; r < n; ++r) {
      if (m(r, col) == 0) continue;
      uint64_t f = F.mul(m(r, col), inv);
      // row_r -= f * row_{col+1}; col_{col+1} += f * col_r
      for (int c = 0; c < n; ++c) m(r, c) = F.sub(m(r, c), F.mul(f, m(col + 1, c)));
      for (int rr = 0; rr < n; ++rr)
        m(rr, col + 1) = F.add(m(rr, col + 1), F.mul(f, m(rr, r)));
    }
  }
  // char poly recurrence on the Hessenberg form.
  std::vector<FpPoly> q(n + 1);
  q[0] = {1};
  for (int k = 1; k <= n; ++k) {
    // q_k = (x - h_kk) q_{k-1} - sum_m h_mk (prod subdiag) q_{m-1}
    FpPoly qk(q[k - 1].size() + 1, 0);
    for (size_t i = 0; i < q[k - 1].size(); ++i) {
      qk[i + 1] = F.add(qk[i + 1], q[k - 1][i]);
      qk[i] = F.sub(qk[i], F.mul(m(k - 1, k - 1), q[k - 1][i]));
    }
    uint64_t subprod = 1;
    for (int mm = k - 1; mm >= 1; --mm) {
      subprod = F.mul(subprod, m(mm, mm - 1));
      if (subprod == 0) break;
      uint64_t coef = F.mul(m(mm - 1, k - 1), subprod);
      if (coef == 0) continue;
      for (size_t i = 0; i < q[mm - 1].size(); ++i)
        qk[i] = F.sub(qk[i], F.mul(coef, q[mm - 1][i]));
    }
    q[k] = fp_poly_trim(std::move(qk));
  }
  return q[n];
}

std::vector<std::pair<uint64_t, int>> fp_poly_roots(const Fp& F, const FpPoly& f,
                                                    std::mt19937_64& rng) {
  FpPoly poly = make_monic(F, fp_poly_trim(f));
  if (poly.empty()) throw Error("fp_poly_roots: zero polynomial");
  std::vector<std::pair<uint64_t, int>> out;
  if (poly.size() == 1) return out;

  if (F.p == 2) {
    for (uint64_t cand : {uint64_t(0), uint64_t(1)}) {
      // direct evaluation
      uint64_t v = 0;
      for (size_t i = poly.size(); i-- > 0;) v = F.add(F.mul(v, cand), poly[i]);
      if (v == 0) out.push_back({cand, 0});
    }
  } else {
    // Distinct linear factors: g = gcd(x^p - x, f).
    FpPoly xp = fp_poly_powmod(F, FpPoly{0, 1}, Int(static_cast<unsigned long>(F.p)), poly);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = F.sub(xp[1], 1);  // x^p - x mod f
    FpPoly g = fp_poly_gcd(F, poly, fp_poly_trim(std::move(xp)));
    // Split g into linear factors (equal-degree splitting, degree 1).
    std::vector<FpPoly> stack{g};
    while (!stack.empty()) {
      FpPoly cur = stack.back();
      stack.pop_back();
      int deg = static_cast<int>(cur.size()) - 1;
      if (deg <= 0) continue;
      if (deg == 1) {
        out.push_back({F.neg(cur[0]), 0});  // monic x + c -> root -c
        continue;
      }
      // gcd((x + a)^((p-1)/2) - 1, cur) splits with probability ~1/2.
      uint64_t a = rng() % F.p;
      FpPoly w = fp_poly_powmod(F, FpPoly{a, 1}, Int(static_cast<unsigned long>((F.p - 1) / 2)), cur);
      if (w.empty()) w = {0};
      w[0] = F.sub(w[0], 1);
      FpPoly h = fp_poly_gcd(F, cur, fp_poly_trim(std::move(w)));
      int dh = static_cast<int>(h.size()) - 1;
      if (dh <= 0 || dh >= deg) {
        stack.push_back(std::move(cur));  // retry with another shift
        continue;
      }
      // cur / h
      FpPoly quot;
      {
        FpPoly num = cur;
        int dq = deg - dh;
        quot.assign(dq + 1, 0);
        uint64_t inv = F.inv(h.back());
        for (int k = dq; k >= 0; --k) {
          uint64_t coef = F.mul(num[k + dh], inv);
          quot[k] = coef;
          if (coef == 0) continue;
          for (int i = 0; i <= dh; ++i)
            num[k + i] = F.sub(num[k + i], F.mul(coef, h[i]));
        }
      }
      stack.push_back(std::move(h));
      stack.push_back(std::move(quot));
    }
  }

  // Multiplicities by repeated synthetic division of f.
  for (auto& [root, mult] : out) {
    FpPoly cur = poly;
    for (;;) {
      // divide by (x - root)
      FpPoly q(cur.size() - 1, 0);
      uint64_t carry = 0;
      for (size_t i = cur.size(); i-- > 1;) {
        carry = F.add(cur[i], F.mul(carry, root));
        q[i - 1] = carry;
      }
      uint64_t rem = F.add(cur[0], F.mul(carry, root));
      if (rem != 0) break;
      ++mult;
      cur = std::move(q);
      if (cur.size() <= 1) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int fp_rref(const Fp& F, FpMat& m, std::vector<int>* pivot_cols = nullptr) {
  const int rows = m.rows(), cols = m.cols();
  if (pivot_cols) pivot_cols->clear();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = 0; c < cols; ++c) std::swap(m(pivot, c), m(rank, c));
    uint64_t inv = F.inv(m(rank, col));
    for (int c = col; c < cols; ++c) m(rank, c) = F.mul(m(rank, c), inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m(r, col) == 0) continue;
      uint64_t f = m(r, col);
      for (int c = col; c < cols; ++c)
        m(r, c) = F.sub(m(r, c), F.mul(f, m(rank, c)));
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::vector<uint64_t>> fp_nullspace(const Fp& F, FpMat m) {
  const int cols = m.cols();
  std::vector<int> pivot_col;
  int rank = fp_rref(F, m, &pivot_col);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<uint64_t>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<uint64_t> v(cols, 0);
    v[c] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(m(r, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

int fp_rank(const Fp& F, FpMat m) { return fp_rref(F, m); }

FpMat fp_inverse(const Fp& F, FpMat m) {
  if (!m.square()) throw Error("fp_inverse: matrix not square");
  const int n = m.rows();
  FpMat aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  if (fp_rref(F, aug) < n) throw SingularMatrixError("fp_inverse: singular matrix");
  FpMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

bool fp_poly_divides(const Fp& F, const FpPoly& q, const FpPoly& p) {
  FpPoly qq = fp_poly_trim(q);
  if (qq.empty()) throw Error("fp_poly_divides: zero divisor");
  FpPoly rem = poly_rem(F, fp_poly_trim(p), qq);
  return rem.empty();
}

namespace {

// Restriction of `m` to the column space of `basis`: solves
// basis * R = m * basis over GF(p).
FpMat fp_restrict(const Fp& F, const FpMat& m, const FpMat& basis) {
  const int n = basis.rows(), k = basis.cols();
  FpMat mb(n, k);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < k; ++c) {
      uint64_t acc = 0;
      for (int j = 0; j < n; ++j) acc = F.add(acc, F.mul(m(r, j), basis(j, c)));
      mb(r, c) = acc;
    }
  FpMat aug(n, k + k);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < k; ++c) aug(r, c) = basis(r, c);
    for (int c = 0; c < k; ++c) aug(r, k + c) = mb(r, c);
  }
  std::vector<int> pivots;
  fp_rref(F, aug, &pivots);
  int rank_b = 0;
  for (int c : pivots)
    if (c < k) ++rank_b;
  if (rank_b < k || static_cast<int>(pivots.size()) > rank_b)
    throw SplitFailureError("mod-p restriction: invariant-subspace solve failed");
  FpMat r_mat(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) r_mat(r, c) = aug(r, k + c);
  return r_mat;
}

}  // namespace

std::vector<FpEigenspace> modp_eigen_split(const std::vector<FpMat>& family,
                                           uint64_t p, uint64_t seed) {
  Fp F(p);
  if (family.empty()) throw Error("modp_eigen_split: empty family");
  const int n = family[0].rows();
  std::mt19937_64 rng(seed);

  std::vector<FpEigenspace> spaces;
  {
    FpEigenspace whole;
    whole.basis = FpMat::identity(n);
    spaces.push_back(std::move(whole));
  }

  for (const FpMat& m : family) {
    std::vector<FpEigenspace> next;
    for (FpEigenspace& sp : spaces) {
      const int k = sp.basis.cols();
      // A full-dimension subspace can only be the ambient space in the
      // standard basis, so the restriction is m itself.
      FpMat r_mat = (sp.basis.rows() == k) ? m : fp_restrict(F, m, sp.basis);
      FpPoly cp = fp_char_poly(F, r_mat);
      auto roots = fp_poly_roots(F, cp, rng);
      int total = 0;
      for (auto& [root, mult] : roots) total += mult;
      if (total < k)
        throw SplitFailureError("matrix has eigenvalues outside GF(p)");
      int dim_sum = 0;
      for (auto& [root, mult] : roots) {
        FpMat shifted = r_mat;
        for (int i = 0; i < k; ++i) shifted(i, i) = F.sub(shifted(i, i), root);
        auto null_basis = fp_nullspace(F, shifted);
        if (null_basis.empty()) continue;
        FpEigenspace child;
        child.eigenvalue = sp.eigenvalue;
        child.eigenvalue.push_back(root);
        // new basis = old basis * coefficient vectors
        child.basis = FpMat(n, static_cast<int>(null_basis.size()));
        for (size_t v = 0; v < null_basis.size(); ++v)
          for (int row = 0; row < n; ++row) {
            uint64_t acc = 0;
            for (int j = 0; j < k; ++j)
              acc = F.add(acc, F.mul(sp.basis(row, j), null_basis[v][j]));
            child.basis(row, static_cast<int>(v)) = acc;
          }
        dim_sum += child.dim();
        next.push_back(std::move(child));
      }
      if (dim_sum != k)
        throw SplitFailureError("matrix not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  return spaces;
}

}  // namespace cayscheme
