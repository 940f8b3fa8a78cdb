#include "cayscheme/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "cayscheme/errors.hpp"
#include "cayscheme/gfp.hpp"

namespace cayscheme {

Int divexact(const Int& a, const Int& b) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw Error("divexact: " + a.get_str() + " not divisible by " + b.get_str());
  return q;
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// ---------------------------------------------------------------- IntPoly

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (zero() || o.zero()) return IntPoly();
  std::vector<Int> out(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> out(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
  return IntPoly(std::move(out));
}

Int IntPoly::content() const {
  Int g = 0;
  for (const Int& c : c_) g = gcd_int(g, c);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (zero()) return IntPoly();
  Int g = content();
  if (leading() < 0) g = -g;
  std::vector<Int> out;
  out.reserve(c_.size());
  for (const Int& c : c_) out.push_back(divexact(c, g));
  return IntPoly(std::move(out));
}

IntPoly IntPoly::divide_linear(const Int& r, bool& exact) const {
  // Synthetic division by (x - r).
  if (zero()) {
    exact = true;
    return IntPoly();
  }
  std::vector<Int> q(c_.size() - 1, Int(0));
  Int carry = 0;
  for (size_t i = c_.size(); i-- > 1;) {
    carry = c_[i] + carry * r;
    q[i - 1] = carry;
  }
  exact = (c_[0] + carry * r) == 0;
  return IntPoly(std::move(q));
}

std::string IntPoly::str(const std::string& var) const {
  if (zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = c_[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Int a = abs_int(c);
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------- char poly

namespace {

// Newton's identities: k*e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i, with
// s_k the power-sum traces; the division must happen at every step so
// later steps see the true e values. char(x) = sum_k (-1)^k e_k x^(n-k).
template <class T, class Div>
std::vector<T> newton_from_traces(const std::vector<T>& s, int n, Div div_by) {
  std::vector<T> e(n + 1, T(0));
  e[0] = T(1);
  for (int k = 1; k <= n; ++k) {
    T acc = T(0);
    for (int i = 1; i <= k; ++i) {
      T term = e[k - i] * s[i];
      if (i % 2 == 0) acc -= term;
      else acc += term;
    }
    e[k] = div_by(acc, k);
  }
  return e;
}

RatPolyCoeffs char_poly_rational_impl(const RatMat& m) {
  const int n = m.rows();
  std::vector<Rat> s(n + 1, Rat(0));
  RatMat power = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) power = power * m;
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += power(i, i);
    s[k] = tr;
  }
  std::vector<Rat> e =
      newton_from_traces(s, n, [](const Rat& a, int k) { return Rat(a / Rat(k)); });
  // char = x^n - e1 x^(n-1) + e2 x^(n-2) - ...
  RatPolyCoeffs c(n + 1, Rat(0));
  for (int k = 0; k <= n; ++k) {
    Rat v = e[k];
    if (k % 2 == 1) v = -v;
    c[n - k] = v;
  }
  return c;
}

std::vector<Int> char_poly_int_direct(const IntMat& m) {
  const int n = m.rows();
  std::vector<Int> s(n + 1, Int(0));
  IntMat power = m;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) power = power * m;
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += power(i, i);
    s[k] = tr;
  }
  std::vector<Int> e =
      newton_from_traces(s, n, [](const Int& a, int k) { return divexact(a, Int(k)); });
  std::vector<Int> c(n + 1, Int(0));
  for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 == 1) ? Int(-e[k]) : e[k];
  return c;
}

// 62-bit primes for CRT work, generated deterministically.
const std::vector<uint64_t>& crt_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> out;
    Int p = (Int(1) << 62) - 1000000;
    for (int i = 0; i < 16; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      out.push_back(p.get_ui());
    }
    return out;
  }();
  return primes;
}

std::vector<uint64_t> char_poly_modp(const Fp& F, const IntMat& m) {
  const int n = m.rows();
  FpMat a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = F.reduce(m(r, c));
  // Power traces mod p, then Newton (k < p so the divisions are fine).
  std::vector<uint64_t> s(n + 1, 0);
  FpMat power = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      FpMat next(n, n);
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j) {
          uint64_t x = power(r, j);
          if (x == 0) continue;
          for (int c = 0; c < n; ++c) next(r, c) = F.add(next(r, c), F.mul(x, a(j, c)));
        }
      power = std::move(next);
    }
    uint64_t tr = 0;
    for (int i = 0; i < n; ++i) tr = F.add(tr, power(i, i));
    s[k] = tr;
  }
  std::vector<uint64_t> e(n + 1, 0);
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    uint64_t acc = 0;
    for (int i = 1; i <= k; ++i) {
      uint64_t term = F.mul(e[k - i], s[i]);
      acc = (i % 2 == 0) ? F.sub(acc, term) : F.add(acc, term);
    }
    e[k] = F.mul(acc, F.inv(k % F.p));
  }
  std::vector<uint64_t> c(n + 1, 0);
  for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 == 1) ? F.neg(e[k]) : e[k];
  return c;
}

// Upper bound on the bit size of any char-poly coefficient of an n x n
// integer matrix with |entries| <= emax: |c_{n-k}| <= C(n,k) k^(k/2)
// emax^k <= 2^n n^(n/2) emax^n.
size_t char_poly_coeff_bits(const IntMat& m) {
  const int n = m.rows();
  size_t ebits = 1;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      ebits = std::max(ebits, mpz_sizeinbase(m(r, c).get_mpz_t(), 2));
  size_t logn = 1;
  while ((1 << logn) < n) ++logn;
  return static_cast<size_t>(n) + (static_cast<size_t>(n) * logn + 1) / 2 +
         static_cast<size_t>(n) * ebits + 2;
}

std::vector<Int> char_poly_int_crt(const IntMat& m) {
  const int n = m.rows();
  const size_t need_bits = char_poly_coeff_bits(m) + 2;  // sign headroom
  const auto& primes = crt_primes();
  std::vector<std::vector<uint64_t>> residues;
  Int modulus = 1;
  size_t have_bits = 0;
  for (uint64_t p : primes) {
    Fp F(p);
    residues.push_back(char_poly_modp(F, m));
    modulus *= Int(static_cast<unsigned long>(p));
    have_bits = mpz_sizeinbase(modulus.get_mpz_t(), 2);
    if (have_bits >= need_bits) break;
  }
  if (have_bits < need_bits)
    return char_poly_int_direct(m);  // dimensions beyond the prime table
  // CRT per coefficient, lifted to the symmetric range.
  std::vector<Int> c(n + 1, Int(0));
  Int half = modulus / 2;
  for (int k = 0; k <= n; ++k) {
    Int acc = 0, mod_so_far = 1;
    for (size_t i = 0; i < residues.size(); ++i) {
      uint64_t p = primes[i];
      Fp F(p);
      uint64_t cur = F.reduce(acc);
      uint64_t target = residues[i][k];
      uint64_t delta = F.sub(target, cur);
      uint64_t minv = F.inv(F.reduce(mod_so_far));
      uint64_t t = F.mul(delta, minv);
      acc += mod_so_far * Int(static_cast<unsigned long>(t));
      mod_so_far *= Int(static_cast<unsigned long>(p));
    }
    if (acc > half) acc -= modulus;
    c[k] = acc;
  }
  return c;
}

}  // namespace

RatPolyCoeffs char_poly_rational(const RatMat& m) {
  if (!m.square()) throw Error("char_poly: matrix not square");
  if (m.rows() == 0) return {Rat(1)};
  return char_poly_rational_impl(m);
}

IntPoly char_poly(const IntMat& m) {
  if (!m.square()) throw Error("char_poly: matrix not square");
  const int n = m.rows();
  if (n == 0) return IntPoly({Int(1)});
  if (n <= 12) return IntPoly(char_poly_int_direct(m));
  return IntPoly(char_poly_int_crt(m));
}

IntPoly char_poly(const RatMat& m) {
  if (!m.square()) throw Error("char_poly: matrix not square");
  const int n = m.rows();
  if (n == 0) return IntPoly({Int(1)});
  // Integer fast path.
  bool integral = true;
  for (int r = 0; r < n && integral; ++r)
    for (int c = 0; c < n && integral; ++c)
      if (!is_integer(m(r, c))) integral = false;
  if (integral) {
    IntMat mi(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) mi(r, c) = m(r, c).get_num();
    return char_poly(mi);
  }
  RatPolyCoeffs rc = char_poly_rational_impl(m);
  // Monic char poly; integral whenever the matrix is conjugate to an
  // integer one. Otherwise return the primitive integer polynomial with
  // the same roots.
  Int den = 1;
  for (const Rat& q : rc) den = lcm_int(den, q.get_den());
  std::vector<Int> c;
  c.reserve(rc.size());
  for (const Rat& q : rc) c.push_back(Int(q.get_num() * divexact(den, q.get_den())));
  IntPoly p{std::move(c)};
  return den == 1 ? p : p.primitive_part();
}

// ---------------------------------------------------------- integer roots

namespace {

// Fujiwara-style root bound for an integer polynomial: every complex
// root satisfies |z| <= 2 max_k |a_{n-k}/a_n|^(1/k).
Int root_bound(const IntPoly& p) {
  const int n = p.degree();
  const Int& lead = p.leading();
  Int best = 1;
  for (int k = 1; k <= n; ++k) {
    Int a = abs_int(p.coeffs()[n - k]);
    if (a == 0) continue;
    // ceil((a / |lead|)^(1/k)) <= ceil(a^(1/k)) for |lead| >= 1
    Int q = a / abs_int(lead) + 1;
    Int r;
    mpz_root(r.get_mpz_t(), q.get_mpz_t(), k);
    r += 1;
    best = std::max(best, r);
  }
  return best * 2;
}

}  // namespace

IntegerRoots integer_roots(const IntPoly& input, const Int& bound_hint) {
  if (input.zero()) throw Error("integer_roots: zero polynomial");
  IntegerRoots out;
  IntPoly p = input.primitive_part();

  // Roots at zero.
  int zeros = 0;
  while (!p.zero() && p.coeffs()[0] == 0) {
    bool exact = false;
    p = p.divide_linear(Int(0), exact);
    ++zeros;
  }
  if (zeros > 0) out.roots.push_back({Int(0), zeros});

  if (p.degree() >= 1) {
    Int bound = root_bound(p);
    if (bound_hint >= 0 && bound_hint < bound) bound = bound_hint;
    // Candidate magnitudes: divisors of the constant term up to the
    // bound (the constant term is non-zero here).
    const Int p0 = abs_int(p.coeffs()[0]);
    for (Int d = 1; d <= bound && p.degree() >= 1; ++d) {
      if (!mpz_divisible_p(p0.get_mpz_t(), d.get_mpz_t())) continue;
      for (Int cand : {Int(d), Int(-d)}) {
        int mult = 0;
        for (;;) {
          bool exact = false;
          IntPoly q = p.divide_linear(cand, exact);
          if (!exact) break;
          p = q;
          ++mult;
        }
        if (mult > 0) out.roots.push_back({cand, mult});
        if (p.degree() < 1) break;
      }
    }
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.remainder = p.zero() ? IntPoly::constant(Int(1)) : p;
  return out;
}

// --------------------------------------------------------------- echelon

int rref(RatMat& m, std::vector<int>* pivot_cols) {
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
    Rat inv_p = Rat(1) / m(rank, col);
    for (int c = col; c < cols; ++c) m(rank, c) *= inv_p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m(r, col) == 0) continue;
      Rat f = m(r, col);
      for (int c = col; c < cols; ++c) m(r, c) -= f * m(rank, c);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rat>> nullspace(const RatMat& input) {
  RatMat m = input;
  const int cols = m.cols();
  std::vector<int> pivot_col;
  int rank = rref(m, &pivot_col);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = Rat(1);
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat det(const RatMat& input) {
  if (!input.square()) throw Error("det: matrix not square");
  RatMat m = input;
  const int n = m.rows();
  Rat d(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      for (int c = col; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      d = -d;
    }
    d *= m(col, col);
    Rat inv_p = Rat(1) / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rat f = m(r, col) * inv_p;
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return d;
}

Int det(const IntMat& input) {
  if (!input.square()) throw Error("det: matrix not square");
  // Bareiss fraction-free elimination.
  IntMat m = input;
  const int n = m.rows();
  if (n == 0) return Int(1);
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Int(0);
      for (int c = k; c < n; ++c) std::swap(m(pivot, c), m(k, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m(i, j) = divexact(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

namespace {

Parity gf2_parity(std::vector<std::vector<uint64_t>> rows, int n) {
  const int words = (n + 63) / 64;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int w = col / 64;
    uint64_t bit = uint64_t(1) << (col % 64);
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Parity::kEven;  // rank-deficient mod 2
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < n; ++r) {
      if (r != rank && (rows[r][w] & bit))
        for (int ww = 0; ww < words; ++ww) rows[r][ww] ^= rows[rank][ww];
    }
    ++rank;
  }
  return Parity::kOdd;
}

}  // namespace

Parity det_parity(const IntMat& m) {
  if (!m.square()) throw Error("det_parity: matrix not square");
  const int n = m.rows();
  const int words = (n + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>(words, 0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (mpz_odd_p(m(r, c).get_mpz_t())) rows[r][c / 64] |= uint64_t(1) << (c % 64);
  return gf2_parity(std::move(rows), n);
}

Parity det_parity_int64(const Mat<int64_t>& m) {
  if (!m.square()) throw Error("det_parity: matrix not square");
  const int n = m.rows();
  const int words = (n + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>(words, 0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (m(r, c) & 1) rows[r][c / 64] |= uint64_t(1) << (c % 64);
  return gf2_parity(std::move(rows), n);
}

bool poly_divides(const IntPoly& q, const IntPoly& p) {
  if (q.zero()) throw Error("poly_divides: zero divisor");
  if (p.zero()) return true;
  if (p.degree() < q.degree()) return false;
  // Long division over the rationals.
  std::vector<Rat> rem(p.coeffs().size());
  for (size_t i = 0; i < rem.size(); ++i) rem[i] = Rat(p.coeffs()[i]);
  const int dq = q.degree();
  Rat lead_inv = Rat(1) / Rat(q.leading());
  for (int k = static_cast<int>(rem.size()) - 1; k >= dq; --k) {
    if (rem[k] == 0) continue;
    Rat f = rem[k] * lead_inv;
    for (int i = 0; i <= dq; ++i) rem[k - dq + i] -= f * Rat(q.coeffs()[i]);
  }
  for (int i = 0; i < dq; ++i)
    if (rem[i] != 0) return false;
  return true;
}

RatMat inverse(const RatMat& input) {
  if (!input.square()) throw Error("inverse: matrix not square");
  const int n = input.rows();
  RatMat aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug(r, c) = input(r, c);
    aug(r, n + r) = Rat(1);
  }
  int rank = rref(aug);
  if (rank < n) throw SingularMatrixError("inverse: singular matrix");
  RatMat out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

RatMat solve_in_column_space(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) throw Error("solve_in_column_space: row mismatch");
  const int rows = a.rows(), k = a.cols(), w = b.cols();
  RatMat aug(rows, k + w);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < k; ++c) aug(r, c) = a(r, c);
    for (int c = 0; c < w; ++c) aug(r, k + c) = b(r, c);
  }
  std::vector<int> pivots;
  rref(aug, &pivots);
  // A must have full column rank: pivots exactly at columns 0..k-1.
  int rank_a = 0;
  for (int c : pivots)
    if (c < k) ++rank_a;
  if (rank_a < k) throw SingularMatrixError("solve_in_column_space: basis not full rank");
  if (static_cast<int>(pivots.size()) > rank_a)
    throw SingularMatrixError("solve_in_column_space: inconsistent system");
  RatMat x(k, w);
  for (int r = 0; r < k; ++r)
    for (int j = 0; j < w; ++j) x(r, j) = aug(r, k + j);
  return x;
}

}  // namespace cayscheme
