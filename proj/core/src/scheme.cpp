#include "cayscheme/scheme.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "cayscheme/errors.hpp"
#include "cayscheme/parallel.hpp"

namespace cayscheme {

AssociationScheme scheme_from_partition(const FiniteGroup& g, const Partition& part) {
  if (part.n != g.n) throw Error("scheme_from_partition: partition size mismatch");
  if (part.blocks.empty() || part.blocks[0] != std::vector<int>{FiniteGroup::identity})
    throw Error("scheme_from_partition: block 0 must be {identity}");

  AssociationScheme s;
  s.n = g.n;
  s.d = part.block_count() - 1;
  s.classes = part;

  // Inverse-compatibility: the elementwise inverse of each block must be
  // a block; it defines the transpose map.
  s.transpose_map.assign(part.block_count(), -1);
  for (int r = 0; r < part.block_count(); ++r) {
    int rstar = part.block_of[g.inv[part.blocks[r][0]]];
    for (int x : part.blocks[r]) {
      if (part.block_of[g.inv[x]] != rstar) {
        std::ostringstream os;
        os << "block " << r << " is not inverse-compatible: inv(" << part.blocks[r][0]
           << ") lies in block " << rstar << " but inv(" << x << ") lies in block "
           << part.block_of[g.inv[x]];
        throw NotInverseCompatibleError(os.str());
      }
    }
    if (part.blocks[r].size() != part.blocks[rstar].size())
      throw NotInverseCompatibleError("inverse image of block " + std::to_string(r) +
                                      " has different size");
    s.transpose_map[r] = rstar;
  }

  s.relation.resize(static_cast<size_t>(g.n) * g.n);
  for (int gg = 0; gg < g.n; ++gg)
    for (int h = 0; h < g.n; ++h)
      s.relation[static_cast<size_t>(gg) * g.n + h] =
          static_cast<uint16_t>(part.block_of[g.mul(h, g.inv[gg])]);
  return s;
}

AxiomReport verify_scheme_axioms(const AssociationScheme& s) {
  AxiomReport report;
  const int n = s.n;
  const int k = s.d + 1;

  // (1) A_0 = I and the classes partition G x G. The relation table is
  // total by construction; check the diagonal and that class 0 appears
  // nowhere else.
  report.identity_and_sum = true;
  for (int g = 0; g < n && report.identity_and_sum; ++g) {
    for (int h = 0; h < n; ++h) {
      bool diag = (g == h);
      if ((s.rel(g, h) == 0) != diag) {
        report.identity_and_sum = false;
        report.witness = "axiom (1) fails at pair (" + std::to_string(g) + "," +
                         std::to_string(h) + ")";
        break;
      }
    }
  }

  // (2) transpose closure.
  report.transpose_closed = true;
  for (int g = 0; g < n && report.transpose_closed; ++g)
    for (int h = 0; h < n; ++h)
      if (s.rel(h, g) != s.transpose_map[s.rel(g, h)]) {
        report.transpose_closed = false;
        if (report.witness.empty())
          report.witness = "axiom (2) fails at pair (" + std::to_string(g) + "," +
                           std::to_string(h) + ")";
        break;
      }

  // (3)+(4): the (g,h) entry of A_r A_s is the number of walks
  // #{w : rel(g,w) = r, rel(w,h) = s}. Axiom (4) holds iff that count
  // depends only on the class of (g,h); the constants are the
  // intersection numbers. Class pairs are checked in parallel with a
  // deterministic merge (first witness in (r,s) order wins).
  IntersectionNumbers nums;
  nums.d = s.d;
  nums.p.assign(static_cast<size_t>(k) * k * k, 0);
  std::atomic<bool> closed{true};
  std::vector<std::string> pair_witness(static_cast<size_t>(k) * k);

  parallel_for(static_cast<size_t>(k) * k, [&](size_t idx) {
    int r = static_cast<int>(idx) / k;
    int sc = static_cast<int>(idx) % k;
    std::vector<int64_t> value(static_cast<size_t>(k), -1);
    std::vector<int64_t> count(n, 0);
    // Row g = 0 fixes the candidate constants (every class appears in
    // row 0); the remaining rows must reproduce them.
    for (int g = 0; g < n; ++g) {
      std::fill(count.begin(), count.end(), 0);
      for (int w = 0; w < n; ++w) {
        if (s.rel(g, w) != r) continue;
        const uint16_t* row = &s.relation[static_cast<size_t>(w) * n];
        for (int h = 0; h < n; ++h)
          if (row[h] == sc) ++count[h];
      }
      for (int h = 0; h < n; ++h) {
        int t = s.rel(g, h);
        if (g == 0 && value[t] < 0) {
          value[t] = count[h];
          continue;
        }
        if (value[t] != count[h]) {
          closed.store(false);
          pair_witness[idx] = "axiom (4) fails: (A_" + std::to_string(r) + " A_" +
                              std::to_string(sc) + ") takes values " +
                              std::to_string(value[t]) + " and " + std::to_string(count[h]) +
                              " on class " + std::to_string(t) + " (pair (" +
                              std::to_string(g) + "," + std::to_string(h) + "))";
          return;
        }
      }
    }
    for (int t = 0; t < k; ++t) nums.at(r, sc, t) = value[t];
  });

  report.closed_products = closed.load();
  if (!report.closed_products && report.witness.empty())
    for (const auto& w : pair_witness)
      if (!w.empty()) {
        report.witness = w;
        break;
      }

  // (3) commutativity: p[r][s][t] == p[s][r][t].
  report.commutative = report.closed_products;
  if (report.closed_products) {
    for (int r = 0; r < k && report.commutative; ++r)
      for (int sc = 0; sc < k && report.commutative; ++sc)
        for (int t = 0; t < k; ++t)
          if (nums.at(r, sc, t) != nums.at(sc, r, t)) {
            report.commutative = false;
            if (report.witness.empty())
              report.witness = "axiom (3) fails: p[" + std::to_string(r) + "][" +
                               std::to_string(sc) + "][" + std::to_string(t) +
                               "] != p[" + std::to_string(sc) + "][" + std::to_string(r) +
                               "][" + std::to_string(t) + "]";
            break;
          }
  }

  if (report.closed_products) report.numbers = std::move(nums);
  return report;
}

std::vector<int> valencies(const AssociationScheme& s) {
  std::vector<int> v;
  v.reserve(s.d + 1);
  for (const auto& block : s.classes.blocks) v.push_back(static_cast<int>(block.size()));
  return v;
}

SubschemeResult is_subscheme(const AssociationScheme& b, const AssociationScheme& a) {
  SubschemeResult result;
  if (a.n != b.n) {
    result.witness = "vertex sets differ (" + std::to_string(b.n) + " vs " +
                     std::to_string(a.n) + ")";
    return result;
  }
  const int n = a.n;
  std::vector<int> cell_of(a.d + 1, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int aj = a.rel(g, h);
      int br = b.rel(g, h);
      if (cell_of[aj] < 0) cell_of[aj] = br;
      else if (cell_of[aj] != br) {
        result.witness = "A-class " + std::to_string(aj) + " crosses B-classes " +
                         std::to_string(cell_of[aj]) + " and " + std::to_string(br) +
                         " (witness pair (" + std::to_string(g) + "," + std::to_string(h) +
                         "))";
        return result;
      }
    }
  SubschemeCertificate cert;
  cert.cell_of = cell_of;
  cert.cells.assign(b.d + 1, {});
  for (int j = 0; j <= a.d; ++j) cert.cells[cell_of[j]].push_back(j);
  for (int r = 0; r <= b.d; ++r)
    if (cert.cells[r].empty()) {
      result.witness = "B-class " + std::to_string(r) + " is not covered by any A-class";
      return result;
    }
  result.certificate = std::move(cert);
  return result;
}

}  // namespace cayscheme
