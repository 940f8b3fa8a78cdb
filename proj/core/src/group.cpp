#include "cayscheme/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "cayscheme/errors.hpp"

namespace cayscheme {

namespace {

std::string triple_msg(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

// Fills inv and elem_order; assumes mult is a valid group table with
// identity 0.
void finish_group(FiniteGroup& g) {
  const int n = g.n;
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inv[a] = b;
        break;
      }
    }
    if (g.inv[a] < 0) throw NotAGroupError("element " + std::to_string(a) + " has no inverse");
  }
  g.elem_order.assign(n, 1);
  for (int a = 0; a < n; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = g.mul(x, a);
      ++k;
      if (k > n) throw NotAGroupError("order of element " + std::to_string(a) + " exceeds n");
    }
    g.elem_order[a] = k;
  }
}

// Swaps labels i <-> j in a multiplication table.
void relabel_swap(std::vector<int>& mult, int n, int i, int j) {
  if (i == j) return;
  auto fix = [&](int v) { return v == i ? j : (v == j ? i : v); };
  std::vector<int> out(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out[static_cast<size_t>(fix(a)) * n + fix(b)] = fix(mult[static_cast<size_t>(a) * n + b]);
  mult = std::move(out);
}

struct DescriptorParser {
  const std::string& s;
  size_t pos = 0;

  explicit DescriptorParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError("descriptor: expected '" + std::string(1, c) + "' at position " +
                       std::to_string(pos) + " in \"" + s + "\"");
  }
  long number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos)
      throw ParseError("descriptor: expected a number at position " + std::to_string(pos) +
                       " in \"" + s + "\"");
    return std::stol(s.substr(start, pos - start));
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    return s.substr(start, pos - start);
  }
};

FiniteGroup parse_builtin(DescriptorParser& p, int cap);

FiniteGroup make_cyclic(long n, int cap) {
  if (n < 1) throw ParseError("cyclic order must be positive");
  if (n > cap) throw OverflowError("cyclic(" + std::to_string(n) + ") exceeds cap " + std::to_string(cap));
  FiniteGroup g;
  g.n = static_cast<int>(n);
  g.mult.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mult[static_cast<size_t>(a) * n + b] = (a + b) % n;
  finish_group(g);
  return g;
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b, int cap) {
  long n = static_cast<long>(a.n) * b.n;
  if (n > cap) throw OverflowError("direct product order " + std::to_string(n) + " exceeds cap");
  FiniteGroup g;
  g.n = static_cast<int>(n);
  g.mult.resize(static_cast<size_t>(n) * n);
  // (x, y) -> x * |b| + y, lexicographic in the pair
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2) {
          int lhs = x1 * b.n + y1;
          int rhs = x2 * b.n + y2;
          g.mult[static_cast<size_t>(lhs) * n + rhs] = a.mul(x1, x2) * b.n + b.mul(y1, y2);
        }
  finish_group(g);
  return g;
}

FiniteGroup make_semidirect(long m, long k, long a, int cap) {
  if (m < 1 || k < 1) throw ParseError("semidirect orders must be positive");
  long n = m * k;
  if (n > cap) throw OverflowError("semidirect order " + std::to_string(n) + " exceeds cap");
  // a^k = 1 (mod m) is required for the action to be well defined.
  long ak = 1 % m;
  for (long i = 0; i < k; ++i) ak = (ak * (a % m)) % m;
  if (ak != 1 % m)
    throw BadActionError("semidirect(" + std::to_string(m) + "," + std::to_string(k) + "," +
                         std::to_string(a) + "): a^k != 1 (mod m)");
  // Elements (x, h), x in Z_m, h in Z_k, numbered x*k + h.
  // (x1, h1)(x2, h2) = (x1 + a^h1 * x2, h1 + h2).
  std::vector<long> apow(k);
  apow[0] = 1 % m;
  for (long i = 1; i < k; ++i) apow[i] = (apow[i - 1] * (a % m)) % m;
  FiniteGroup g;
  g.n = static_cast<int>(n);
  g.mult.resize(static_cast<size_t>(n) * n);
  for (long x1 = 0; x1 < m; ++x1)
    for (long h1 = 0; h1 < k; ++h1)
      for (long x2 = 0; x2 < m; ++x2)
        for (long h2 = 0; h2 < k; ++h2) {
          long lhs = x1 * k + h1;
          long rhs = x2 * k + h2;
          long x = (x1 + apow[h1] * x2) % m;
          long h = (h1 + h2) % k;
          g.mult[static_cast<size_t>(lhs) * n + rhs] = static_cast<int>(x * k + h);
        }
  finish_group(g);
  return g;
}

FiniteGroup make_heisenberg(long p, int cap) {
  if (p < 2) throw ParseError("heisenberg parameter must be >= 2");
  long n = p * p * p;
  if (n > cap) throw OverflowError("heisenberg order " + std::to_string(n) + " exceeds cap");
  // Upper unitriangular (a, b, c) numbered a*p^2 + b*p + c.
  // (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2).
  FiniteGroup g;
  g.n = static_cast<int>(n);
  g.mult.resize(static_cast<size_t>(n) * n);
  for (long a1 = 0; a1 < p; ++a1)
    for (long b1 = 0; b1 < p; ++b1)
      for (long c1 = 0; c1 < p; ++c1)
        for (long a2 = 0; a2 < p; ++a2)
          for (long b2 = 0; b2 < p; ++b2)
            for (long c2 = 0; c2 < p; ++c2) {
              long lhs = (a1 * p + b1) * p + c1;
              long rhs = (a2 * p + b2) * p + c2;
              long a = (a1 + a2) % p;
              long b = (b1 + b2) % p;
              long c = (c1 + c2 + a1 * b2) % p;
              g.mult[static_cast<size_t>(lhs) * n + rhs] = static_cast<int>((a * p + b) * p + c);
            }
  finish_group(g);
  return g;
}

FiniteGroup parse_builtin(DescriptorParser& p, int cap) {
  std::string name = p.ident();
  if (name == "cyclic") {
    p.expect('(');
    long n = p.number();
    p.expect(')');
    return make_cyclic(n, cap);
  }
  if (name == "direct_product") {
    p.expect('(');
    FiniteGroup a = parse_builtin(p, cap);
    p.expect(',');
    FiniteGroup b = parse_builtin(p, cap);
    p.expect(')');
    return make_direct_product(a, b, cap);
  }
  if (name == "semidirect") {
    p.expect('(');
    long m = p.number();
    p.expect(',');
    long k = p.number();
    p.expect(',');
    p.skip_ws();
    // accept "a=2" as well as bare "2"
    if (p.pos < p.s.size() && p.s[p.pos] == 'a') {
      ++p.pos;
      p.expect('=');
    }
    long a = p.number();
    p.expect(')');
    return make_semidirect(m, k, a, cap);
  }
  if (name == "heisenberg") {
    p.expect('(');
    long q = p.number();
    p.expect(')');
    return make_heisenberg(q, cap);
  }
  if (name == "trivial") return make_cyclic(1, cap);
  throw ParseError("unknown builtin family \"" + name + "\"");
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

Partition partition_from_labels(int n, const std::vector<int>& labels) {
  // Canonical block order: by size, ties by minimum element. This is
  // what pins down valency vectors and P column order downstream.
  std::map<int, std::vector<int>> by_label;
  for (int i = 0; i < n; ++i) by_label[labels[i]].push_back(i);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [lbl, members] : by_label) blocks.push_back(std::move(members));
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.size() != b.size() ? a.size() < b.size() : a[0] < b[0];
            });
  Partition part;
  part.n = n;
  part.blocks = std::move(blocks);
  part.block_of.assign(n, -1);
  for (int b = 0; b < part.block_count(); ++b)
    for (int x : part.blocks[b]) part.block_of[x] = b;
  return part;
}

FiniteGroup group_from_table(const std::vector<std::vector<int>>& table, int cap) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroupError("empty table");
  if (n > cap) throw OverflowError("group order " + std::to_string(n) + " exceeds cap");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(table[r].size()) != n)
      throw NotAGroupError("table row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < n; ++c)
      if (table[r][c] < 0 || table[r][c] >= n)
        throw NotAGroupError("table entry out of range at " + triple_msg(r, c, table[r][c]));
  }

  // Two-sided identity.
  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (table[cand][a] != a || table[a][cand] != a) ok = false;
    if (ok) e = cand;
  }
  if (e < 0) throw NotAGroupError("no identity element");

  // Inverses (before the associativity sweep so the error messages match
  // the actual failure).
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b)
      if (table[a][b] == e && table[b][a] == e) found = true;
    if (!found) throw NotAGroupError("element " + std::to_string(a) + " has no inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw NotAGroupError("associativity fails on triple " + triple_msg(a, b, c));

  FiniteGroup g;
  g.n = n;
  g.mult.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mult[static_cast<size_t>(a) * n + b] = table[a][b];
  relabel_swap(g.mult, n, 0, e);
  finish_group(g);
  return g;
}

FiniteGroup group_builtin(const std::string& descriptor, int cap) {
  DescriptorParser p(descriptor);
  FiniteGroup g = parse_builtin(p, cap);
  p.skip_ws();
  if (p.pos != descriptor.size())
    throw ParseError("trailing characters in descriptor \"" + descriptor + "\"");
  return g;
}

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators, int cap) {
  if (generators.empty()) return make_cyclic(1, cap);
  const size_t dom = generators[0].size();
  for (const auto& gen : generators) {
    if (gen.size() != dom) throw ParseError("permutation generators act on different domains");
    std::vector<char> seen(dom, 0);
    for (int img : gen) {
      if (img < 0 || static_cast<size_t>(img) >= dom || seen[img])
        throw ParseError("generator is not a bijection");
      seen[img] = 1;
    }
  }

  using Perm = std::vector<int>;
  auto compose = [dom](const Perm& f, const Perm& g) {
    Perm out(dom);
    for (size_t i = 0; i < dom; ++i) out[i] = f[g[i]];
    return out;
  };

  Perm id(dom);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen;
  std::queue<Perm> todo;
  seen.insert(id);
  todo.push(id);
  while (!todo.empty()) {
    Perm cur = todo.front();
    todo.pop();
    for (const auto& gen : generators) {
      Perm prod = compose(cur, gen);
      if (seen.insert(prod).second) {
        if (static_cast<int>(seen.size()) > cap)
          throw OverflowError("permutation closure exceeds cap " + std::to_string(cap));
        todo.push(prod);
      }
    }
  }

  // Elements in lexicographic order of the permutations, identity
  // relabelled to 0.
  std::vector<Perm> elems(seen.begin(), seen.end());
  const int n = static_cast<int>(elems.size());
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  FiniteGroup g;
  g.n = n;
  g.mult.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.mult[static_cast<size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  relabel_swap(g.mult, n, 0, index.at(id));
  finish_group(g);
  return g;
}

Partition conjugacy_classes(const FiniteGroup& g) {
  const int n = g.n;
  std::vector<int> label(n, -1);
  for (int x = 0; x < n; ++x) {
    if (label[x] >= 0) continue;
    // Orbit of x under conjugation, labelled by its minimum element (x,
    // since we scan ascending).
    for (int h = 0; h < n; ++h) {
      int y = g.mul(g.mul(h, x), g.inv[h]);
      label[y] = x;
    }
  }
  return partition_from_labels(n, label);
}

Partition power_classes(const FiniteGroup& g) {
  const int n = g.n;
  // <x> as a sorted element list is the class key.
  std::map<std::vector<int>, std::vector<int>> by_subgroup;
  for (int x = 0; x < n; ++x) {
    std::vector<int> gen;
    int y = x;
    gen.push_back(0);
    while (y != 0) {
      gen.push_back(y);
      y = g.mul(y, x);
    }
    std::sort(gen.begin(), gen.end());
    by_subgroup[gen].push_back(x);
  }
  std::vector<int> label(n, -1);
  for (auto& [key, members] : by_subgroup)
    for (int x : members) label[x] = members[0];
  return partition_from_labels(n, label);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Partition pc_classes(const FiniteGroup& g) {
  const Partition conj = conjugacy_classes(g);
  const Partition pow = power_classes(g);
  UnionFind uf(g.n);
  for (const auto& block : conj.blocks)
    for (size_t i = 1; i < block.size(); ++i) uf.unite(block[0], block[i]);
  for (const auto& block : pow.blocks)
    for (size_t i = 1; i < block.size(); ++i) uf.unite(block[0], block[i]);
  std::vector<int> label(g.n);
  for (int x = 0; x < g.n; ++x) label[x] = uf.find(x);
  Partition pc = partition_from_labels(g.n, label);

  // Every block must be simultaneously a union of conjugacy classes and
  // a union of power classes.
  for (int x = 0; x < g.n; ++x) {
    int b = pc.block_of[x];
    if (pc.block_of[conj.blocks[conj.block_of[x]][0]] != b ||
        pc.block_of[pow.blocks[pow.block_of[x]][0]] != b)
      throw Error("pc_classes: join is not a union of both input partitions");
  }
  return pc;
}

int exponent(const FiniteGroup& g) {
  long e = 1;
  for (int x = 0; x < g.n; ++x) e = std::lcm(e, static_cast<long>(g.elem_order[x]));
  return static_cast<int>(e);
}

}  // namespace cayscheme
