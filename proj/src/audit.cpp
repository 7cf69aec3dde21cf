#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/menger.hpp"
#include "bsstar/tpath.hpp"

namespace bsstar {

namespace {

std::vector<Permutation> copy_vertices(const CayleyGraph& g, int c) {
  std::vector<Permutation> out;
  for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
    Permutation p = unrank(g.n(), i);
    if (g.copy_of(p) == c) out.push_back(p);
  }
  return out;
}

// ascending k-element subsets of {1, ..., n}
std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(pick);
    int pos = k - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

}  // namespace

AuditReport structural_audit(const CayleyGraph& g) {
  if (g.n() > 5)
    throw std::invalid_argument("structural_audit: exhaustive checks support dimension at most 5");
  const int n = g.n();
  AuditReport rep;
  auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
    rep.clauses.push_back({name, pass, detail});
    if (!pass) rep.pass = false;
  };

  if (n >= 4) {
    const std::uint32_t expect = 2 * factorial(n - 2);
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
      for (int j = i + 1; j <= n && ok; ++j)
        ok = static_cast<std::uint32_t>(g.cross_edges(i, j).size()) == expect;
    add("cross-edge-count", ok,
        "every pair of sub-blocks is joined by exactly " + std::to_string(expect) + " edges");
  } else {
    add("cross-edge-count", true, "stated for dimension 4 and up; nothing to audit here");
  }

  {
    bool ok = true;
    for (int c = 1; c <= n && ok; ++c) {
      const std::vector<Permutation> vs = copy_vertices(g, c);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> ports;
      for (const Permutation& v : vs)
        ports.emplace_back(rank(g.out_plus(v)), rank(g.out_minus(v)));
      for (std::size_t i = 0; i < vs.size() && ok; ++i)
        for (std::size_t j = i + 1; j < vs.size() && ok; ++j) {
          ok = ports[i].first != ports[j].first && ports[i].first != ports[j].second &&
               ports[i].second != ports[j].first && ports[i].second != ports[j].second;
        }
    }
    add("outgoing-disjointness", ok,
        "distinct vertices of a sub-block have disjoint outgoing neighbor pairs");
  }

  {
    bool ok = true;
    for (std::uint32_t i = 0; i < g.vertex_count() && ok; ++i) {
      const Permutation v = unrank(n, i);
      const int home = g.copy_of(v);
      const int jp = g.copy_of(g.out_plus(v));
      const int jm = g.copy_of(g.out_minus(v));
      ok = jp != home && jm != home && jp != jm;
    }
    add("outgoing-copy-separation", ok,
        "the two outgoing neighbors always land in two other distinct sub-blocks");
  }

  {
    bool ok = true;
    int largest = 0;
    for (std::uint32_t i = 0; i < g.vertex_count() && ok; ++i)
      for (std::uint32_t j = i + 1; j < g.vertex_count() && ok; ++j) {
        const int cn =
            static_cast<int>(g.common_neighbors({unrank(n, i), unrank(n, j)}).size());
        largest = std::max(largest, cn);
        ok = cn <= 3;
      }
    add("pair-common-neighbors", ok,
        "largest common neighborhood over all vertex pairs: " + std::to_string(largest));
  }

  {
    const int expect = 2 * n - 3;
    const int got = kappa(CopyView::whole(g));
    add("graph-connectivity", got == expect,
        "connectivity " + std::to_string(got) + ", expected " + std::to_string(expect));
  }

  {
    bool ok = true;
    int audited = 0;
    for (int k = 1; k <= n - 1 && ok; ++k) {
      const int expect = (k <= n - 2) ? 2 * n - 5 : 2 * n - 4;
      for (const std::vector<int>& pick : k_subsets(n, k)) {
        ++audited;
        if (kappa(induced(g, pick)) != expect) {
          ok = false;
          break;
        }
      }
    }
    add("copy-union-connectivity", ok,
        std::to_string(audited) + " sub-block unions audited: connectivity " +
            std::to_string(2 * n - 5) + " up to " + std::to_string(n - 2) + " sub-blocks, " +
            std::to_string(2 * n - 4) + " for " + std::to_string(n - 1));
  }

  return rep;
}

}  // namespace bsstar
