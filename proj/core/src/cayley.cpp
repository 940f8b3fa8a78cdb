#include "cayscheme/cayley.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "cayscheme/errors.hpp"
#include "cayscheme/linalg.hpp"
#include "cayscheme/parallel.hpp"

namespace cayscheme {

namespace {

bool set_inverse_closed(const FiniteGroup& g, const std::vector<int>& members) {
  std::set<int> s(members.begin(), members.end());
  for (int x : members)
    if (!s.count(g.inv[x])) return false;
  return true;
}

bool set_conjugacy_closed(const FiniteGroup& g, const std::vector<int>& members) {
  std::set<int> s(members.begin(), members.end());
  for (int x : members)
    for (int h = 0; h < g.n; ++h)
      if (!s.count(g.mul(g.mul(h, x), g.inv[h]))) return false;
  return true;
}

std::string describe_classes(const std::vector<int>& x, const char* kind) {
  std::ostringstream os;
  os << kind << " classes";
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0) os << " +" << i;
    else if (x[i] < 0) os << " -" << i;
  return os.str();
}

}  // namespace

ConnectionSet ConnectionSet::from_members(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int x : members)
    if (x <= 0 || x >= g.n)
      throw Error(x == 0 ? "connection set contains the identity"
                         : "connection set member out of range");
  ConnectionSet c;
  c.members = std::move(members);
  c.inverse_closed = set_inverse_closed(g, c.members);
  c.conjugacy_closed = set_conjugacy_closed(g, c.members);
  return c;
}

SignedConnectionSet SignedConnectionSet::from_members(const FiniteGroup& g,
                                                      std::vector<int> plus_members,
                                                      std::vector<int> minus_members) {
  SignedConnectionSet s;
  s.plus = ConnectionSet::from_members(g, std::move(plus_members));
  s.minus = ConnectionSet::from_members(g, std::move(minus_members));
  for (int x : s.plus.members)
    if (std::binary_search(s.minus.members.begin(), s.minus.members.end(), x))
      throw Error("signed connection set fibres are not disjoint");
  if (!s.plus.inverse_closed || !s.minus.inverse_closed)
    throw Error("signed connection set fibres must be inverse-closed");
  return s;
}

Mat<int64_t> cayley_adjacency(const FiniteGroup& g, const ConnectionSet& c) {
  for (int x : c.members)
    if (x == 0) throw Error("connection set contains the identity");
  std::vector<char> in_set(g.n, 0);
  for (int x : c.members) in_set[x] = 1;
  Mat<int64_t> a(g.n, g.n);
  for (int gg = 0; gg < g.n; ++gg)
    for (int h = 0; h < g.n; ++h)
      a(gg, h) = in_set[g.mul(h, g.inv[gg])] ? 1 : 0;
  return a;
}

Mat<int64_t> signed_cayley_adjacency(const FiniteGroup& g, const SignedConnectionSet& c) {
  Mat<int64_t> a = cayley_adjacency(g, c.plus);
  Mat<int64_t> b = cayley_adjacency(g, c.minus);
  for (int r = 0; r < g.n; ++r)
    for (int col = 0; col < g.n; ++col) a(r, col) -= b(r, col);
  return a;
}

namespace {

SpectrumReport spectrum_from_vector(const Eigensystem& e, const std::vector<int>& x,
                                    const char* kind) {
  const int k = e.d + 1;
  if (static_cast<int>(x.size()) != k) throw Error("class vector has wrong length");
  if (x[0] != 0) throw Error("class 0 (the identity) cannot be selected");
  Mat<int64_t> p = e.p64();
  // Merge equal eigenvalues from different eigenspaces.
  std::map<int64_t, int> mult;
  for (int s = 0; s < k; ++s) {
    int64_t lambda = 0;
    for (int r = 0; r < k; ++r) lambda += p(s, r) * x[r];
    mult[lambda] += e.m[s];
  }
  SpectrumReport report;
  report.source = describe_classes(x, kind);
  for (auto& [value, m] : mult) {
    report.eigenvalues.push_back({value, m});
    if (value % 2 != 0) report.has_odd = true;
  }
  return report;
}

}  // namespace

SpectrumReport spectrum_via_scheme(const Eigensystem& e, const std::vector<int>& x) {
  for (int xi : x)
    if (xi != 0 && xi != 1) throw Error("class subset vector must be 0/1");
  return spectrum_from_vector(e, x, "subset of");
}

SpectrumReport signed_spectrum_via_scheme(const Eigensystem& e, const std::vector<int>& x) {
  for (int xi : x)
    if (xi < -1 || xi > 1) throw Error("signed class vector must be in {-1,0,1}");
  return spectrum_from_vector(e, x, "signed");
}

bool spectrum_adjacency_crosscheck(const FiniteGroup& g, const AssociationScheme& s,
                                   const Eigensystem& e, const std::vector<int>& x) {
  // Expected char poly from the scheme path.
  SpectrumReport scheme_spec = (std::any_of(x.begin(), x.end(), [](int v) { return v < 0; }))
                                   ? signed_spectrum_via_scheme(e, x)
                                   : spectrum_via_scheme(e, x);
  IntPoly expected = IntPoly::constant(Int(1));
  for (auto& [value, mult] : scheme_spec.eigenvalues) {
    IntPoly factor = IntPoly::linear_root(Int(value));
    for (int i = 0; i < mult; ++i) expected = expected * factor;
  }

  // Dense (signed) adjacency matrix of the selected classes.
  std::vector<int> plus, minus;
  for (int r = 1; r <= s.d; ++r) {
    if (x[r] > 0)
      for (int member : s.classes.blocks[r]) plus.push_back(member);
    if (x[r] < 0)
      for (int member : s.classes.blocks[r]) minus.push_back(member);
  }
  Mat<int64_t> adj;
  if (minus.empty()) {
    adj = cayley_adjacency(g, ConnectionSet::from_members(g, plus));
  } else {
    adj = signed_cayley_adjacency(g, SignedConnectionSet::from_members(g, plus, minus));
  }
  IntPoly actual = char_poly(to_int_mat(adj));
  return actual == expected;
}

namespace {

// Bitmask rows of P mod 2 over classes 1..k (class 0 contributes parity
// of column 0, which multiplies x_0 = 0).
std::vector<uint64_t> p_mod2_rows(const Mat<int64_t>& p) {
  const int k = p.rows();
  std::vector<uint64_t> rows(k, 0);
  for (int s = 0; s < k; ++s)
    for (int r = 1; r < k; ++r)
      if (p(s, r) & 1) rows[s] |= uint64_t(1) << (r - 1);
  return rows;
}

struct HarnessContext {
  AssociationScheme scheme;
  Eigensystem eigen;
  Mat<int64_t> p;
  int k = 0;  // non-identity class count
};

HarnessContext build_pc_context(const FiniteGroup& g) {
  HarnessContext ctx;
  ctx.scheme = scheme_from_partition(g, pc_classes(g));
  ctx.eigen = eigensystem_integral(ctx.scheme);
  ctx.p = ctx.eigen.p64();
  ctx.k = ctx.scheme.d;
  return ctx;
}

}  // namespace

VerificationReport verify_odd_eigenvalue(const FiniteGroup& g) {
  VerificationReport report;
  report.check = "odd-eigenvalue";
  if (g.n % 2 == 0) {
    report.status = VerifyStatus::kInapplicable;
    report.detail = "group order " + std::to_string(g.n) + " is even";
    return report;
  }
  auto start = std::chrono::steady_clock::now();
  HarnessContext ctx = build_pc_context(g);
  report.scheme_classes = ctx.k;
  const int k = ctx.k;
  if (k > 62) {
    report.status = VerifyStatus::kSkipped;
    report.detail = "more than 62 non-identity classes";
    return report;
  }

  // det(P) is odd (checked exactly), so P is invertible mod 2 and
  // P x = 0 (mod 2) forces x = 0.
  if (det_parity_int64(ctx.p) != Parity::kOdd) {
    report.status = VerifyStatus::kViolation;
    report.detail = "det(P) is even";
    return report;
  }

  const std::vector<uint64_t> rows = p_mod2_rows(ctx.p);
  const uint64_t total = (uint64_t(1) << k) - 1;
  std::mutex bad_mutex;
  uint64_t bad_mask = 0;  // smallest violating subset, 0 = none
  const size_t chunk = 4096;
  const size_t chunk_count = static_cast<size_t>((total + chunk - 1) / chunk);
  std::atomic<uint64_t> checked{0};

  parallel_for(chunk_count, [&](size_t ci) {
    uint64_t lo = 1 + static_cast<uint64_t>(ci) * chunk;
    uint64_t hi = std::min<uint64_t>(total, lo + chunk - 1);
    uint64_t local = 0;
    for (uint64_t mask = lo; mask <= hi; ++mask) {
      // Fast path: some row of P has odd dot with x mod 2.
      bool odd_mod2 = false;
      for (int s = 0; s <= k && !odd_mod2; ++s)
        if (__builtin_popcountll(rows[s] & mask) & 1) odd_mod2 = true;
      // Exact spectrum confirmation.
      bool odd_exact = false;
      for (int s = 0; s <= k; ++s) {
        int64_t acc = 0;
        for (int r = 1; r <= k; ++r)
          if (mask & (uint64_t(1) << (r - 1))) acc += ctx.p(s, r);
        if (acc % 2 != 0) odd_exact = true;
      }
      if (odd_mod2 != odd_exact)
        throw Error("mod-2 fast path disagrees with the exact spectrum");
      if (!odd_exact) {
        std::lock_guard<std::mutex> lock(bad_mutex);
        if (bad_mask == 0 || mask < bad_mask) bad_mask = mask;
      }
      ++local;
    }
    checked += local;
  });

  report.cases_checked = checked.load();
  if (bad_mask != 0) {
    std::vector<int> x(k + 1, 0);
    for (int r = 1; r <= k; ++r)
      if (bad_mask & (uint64_t(1) << (r - 1))) x[r] = 1;
    report.status = VerifyStatus::kViolation;
    report.counterexample_vector = x;
    report.counterexample_spectrum = spectrum_via_scheme(ctx.eigen, x);
    report.detail = "subset with all-even spectrum found";
  } else {
    report.status = VerifyStatus::kPassed;
    report.detail = std::to_string(report.cases_checked) + "/" + std::to_string(total) +
                    " subsets pass";
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

VerificationReport verify_signed_corollary(const FiniteGroup& g, int class_cap) {
  VerificationReport report;
  report.check = "signed-odd-eigenvalue";
  if (g.n % 2 == 0) {
    report.status = VerifyStatus::kInapplicable;
    report.detail = "group order " + std::to_string(g.n) + " is even";
    return report;
  }
  auto start = std::chrono::steady_clock::now();
  HarnessContext ctx = build_pc_context(g);
  report.scheme_classes = ctx.k;
  const int k = ctx.k;
  if (k > class_cap) {
    report.status = VerifyStatus::kSkipped;
    report.detail = std::to_string(k) + " classes exceed the signed enumeration cap " +
                    std::to_string(class_cap);
    return report;
  }

  if (det_parity_int64(ctx.p) != Parity::kOdd) {
    report.status = VerifyStatus::kViolation;
    report.detail = "det(P) is even";
    return report;
  }
  const std::vector<uint64_t> rows = p_mod2_rows(ctx.p);

  uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= 3;
  total -= 1;
  std::mutex bad_mutex;
  uint64_t bad_code = 0;  // smallest violating ternary code, 0 = none
  const size_t chunk = 4096;
  const size_t chunk_count = static_cast<size_t>((total + chunk - 1) / chunk);
  std::atomic<uint64_t> checked{0};

  auto decode = [k](uint64_t code, std::vector<int>& x) {
    uint64_t mask = 0;
    for (int r = 1; r <= k; ++r) {
      int digit = static_cast<int>(code % 3);
      code /= 3;
      x[r] = digit == 2 ? -1 : digit;
      if (digit != 0) mask |= uint64_t(1) << (r - 1);
    }
    return mask;
  };

  parallel_for(chunk_count, [&](size_t ci) {
    uint64_t lo = 1 + static_cast<uint64_t>(ci) * chunk;
    uint64_t hi = std::min<uint64_t>(total, lo + chunk - 1);
    uint64_t local = 0;
    std::vector<int> x(k + 1, 0);
    for (uint64_t code = lo; code <= hi; ++code) {
      // Ternary digits -> {0, +1, -1} entries over classes 1..k.
      uint64_t mask = decode(code, x);
      // Signs vanish mod 2: the fast path only sees the support.
      bool odd_mod2 = false;
      for (int s = 0; s <= k && !odd_mod2; ++s)
        if (__builtin_popcountll(rows[s] & mask) & 1) odd_mod2 = true;
      bool odd_exact = false;
      for (int s = 0; s <= k; ++s) {
        int64_t acc = 0;
        for (int r = 1; r <= k; ++r) acc += ctx.p(s, r) * x[r];
        if (acc % 2 != 0) {
          odd_exact = true;
          break;
        }
      }
      if (odd_mod2 != odd_exact)
        throw Error("mod-2 fast path disagrees with the exact signed spectrum");
      if (!odd_exact) {
        std::lock_guard<std::mutex> lock(bad_mutex);
        if (bad_code == 0 || code < bad_code) bad_code = code;
      }
      ++local;
    }
    checked += local;
  });

  report.cases_checked = checked.load();
  if (bad_code != 0) {
    std::vector<int> x(k + 1, 0);
    decode(bad_code, x);
    report.status = VerifyStatus::kViolation;
    report.counterexample_vector = x;
    report.counterexample_spectrum = signed_spectrum_via_scheme(ctx.eigen, x);
    report.detail = "signed vector with all-even spectrum found";
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  report.status = VerifyStatus::kPassed;
  report.detail = std::to_string(report.cases_checked) + "/" + std::to_string(total) +
                  " signed vectors pass";
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

VerificationReport verify_godsil_spiga(const FiniteGroup& g, int class_cap) {
  VerificationReport report;
  report.check = "integral-iff-pc-union";
  auto start = std::chrono::steady_clock::now();

  const Partition conj = conjugacy_classes(g);
  const Partition pc = pc_classes(g);
  const int d = conj.block_count() - 1;
  report.scheme_classes = d;
  if (d > class_cap || d > 62) {
    report.status = VerifyStatus::kSkipped;
    report.detail = std::to_string(d) + " non-identity conjugacy classes exceed cap " +
                    std::to_string(class_cap);
    return report;
  }

  // Which PC block each conjugacy class fuses into; a union of
  // conjugacy classes is a union of PC classes iff its index set is a
  // union of these cells.
  std::vector<int> cell_of(d + 1);
  for (int r = 0; r <= d; ++r) cell_of[r] = pc.block_of[conj.blocks[r][0]];
  std::vector<uint64_t> cell_mask(pc.block_count(), 0);
  for (int r = 1; r <= d; ++r) cell_mask[cell_of[r]] |= uint64_t(1) << (r - 1);

  const uint64_t total = (uint64_t(1) << d) - 1;
  std::mutex bad_mutex;
  uint64_t bad_mask = 0;
  std::atomic<uint64_t> checked{0};
  std::atomic<uint64_t> integral_count{0};

  parallel_for(static_cast<size_t>(total), [&](size_t idx) {
    uint64_t mask = static_cast<uint64_t>(idx) + 1;
    std::vector<int> members;
    for (int r = 1; r <= d; ++r)
      if (mask & (uint64_t(1) << (r - 1)))
        members.insert(members.end(), conj.blocks[r].begin(), conj.blocks[r].end());
    Mat<int64_t> adj = cayley_adjacency(g, ConnectionSet::from_members(g, members));
    IntPoly cp = char_poly(to_int_mat(adj));
    IntegerRoots roots = integer_roots(cp, Int(static_cast<long>(members.size())));
    bool integral = roots.total_multiplicity() == g.n;

    bool pc_union = true;
    for (int r = 1; r <= d && pc_union; ++r)
      if (mask & (uint64_t(1) << (r - 1)))
        if ((mask & cell_mask[cell_of[r]]) != cell_mask[cell_of[r]]) pc_union = false;

    if (integral != pc_union) {
      std::lock_guard<std::mutex> lock(bad_mutex);
      if (bad_mask == 0 || mask < bad_mask) bad_mask = mask;
    }
    if (integral) ++integral_count;
    ++checked;
  });

  report.cases_checked = checked.load();
  if (bad_mask != 0) {
    std::vector<int> x(d + 1, 0);
    for (int r = 1; r <= d; ++r)
      if (bad_mask & (uint64_t(1) << (r - 1))) x[r] = 1;
    report.status = VerifyStatus::kViolation;
    report.counterexample_vector = x;
    report.detail = "integrality and PC-union disagree";
    return report;
  }
  report.status = VerifyStatus::kPassed;
  report.detail = std::to_string(integral_count.load()) + " of " + std::to_string(total) +
                  " class unions are integral, all of them PC unions";
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cayscheme
