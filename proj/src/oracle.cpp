#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bsstar/tpath.hpp"

namespace bsstar {

namespace {

// Exhaustive maximizer over families of T-paths, run as nested depth-first
// search: an outer recursion adds one path at a time, an inner one grows the
// current path vertex by vertex.  Families are visited in a canonical order
// (middle-terminal class nondecreasing, key strictly increasing inside a
// class) so each family is seen exactly once.  Iterative deepening on the
// per-path vertex limit keeps short families in reach before long detours.
struct oracle_search {
  const CayleyGraph& g;
  std::uint64_t budget;

  std::uint8_t term[3] = {0, 0, 0};  // terminal ranks, ascending
  int term_index[24];
  std::vector<std::vector<std::uint8_t>> nbr;

  int ceiling = 0;        // 4 distinct terminal edge slots per path, 3r available
  std::size_t max_len = 0;
  bool aborted = false;

  std::uint32_t used = 0;      // interior occupancy, bit per rank
  std::uint8_t tt_used = 0;    // terminal-terminal edges (01, 02, 12)
  std::vector<std::vector<std::uint8_t>> chosen;
  std::vector<std::vector<std::uint8_t>> best;

  explicit oracle_search(const CayleyGraph& graph, const std::vector<Permutation>& terminals,
                         std::uint64_t node_budget)
      : g(graph), budget(node_budget) {
    const std::uint32_t nv = g.vertex_count();
    std::vector<std::uint8_t> t;
    for (const Permutation& p : terminals) t.push_back(static_cast<std::uint8_t>(rank(p)));
    std::sort(t.begin(), t.end());
    for (int i = 0; i < 3; ++i) term[i] = t[static_cast<std::size_t>(i)];
    for (std::uint32_t i = 0; i < nv; ++i) term_index[i] = -1;
    for (int i = 0; i < 3; ++i) term_index[term[i]] = i;
    nbr.resize(nv);
    for (std::uint32_t i = 0; i < nv; ++i) {
      for (const Permutation& w : g.neighbors(unrank(g.n(), i)))
        nbr[i].push_back(static_cast<std::uint8_t>(rank(w)));
      std::sort(nbr[i].begin(), nbr[i].end());
    }
    ceiling = (3 * g.degree()) / 4;
    chosen.reserve(static_cast<std::size_t>(ceiling) + 1);
  }

  std::uint8_t start_of(int cls) const { return cls == 0 ? term[1] : term[0]; }
  std::uint8_t goal_of(int cls) const { return cls == 2 ? term[1] : term[2]; }

  static int tt_bit(int i, int j) { return std::min(i, j) + std::max(i, j) - 1; }

  // free edge slots remaining at each terminal bound how many paths can still
  // be added: one fresh slot per terminal per path, four slots in total
  int potential() const {
    int free_min = 1 << 20, free_total = 0;
    for (int ti = 0; ti < 3; ++ti) {
      int f = 0;
      for (std::uint8_t w : nbr[term[ti]]) {
        if (term_index[w] >= 0) {
          if ((tt_used & (1 << tt_bit(ti, term_index[w]))) == 0) ++f;
        } else if ((used & (1u << w)) == 0) {
          ++f;
        }
      }
      free_min = std::min(free_min, f);
      free_total += f;
    }
    return std::min(free_min, free_total / 4);
  }

  bool place(int prev_class, const std::vector<std::uint8_t>* prev_key) {
    if (chosen.size() > best.size()) best = chosen;
    if (static_cast<int>(best.size()) >= ceiling) return true;
    if (aborted) return false;
    const int cap = std::min(potential(), ceiling - static_cast<int>(chosen.size()));
    if (chosen.size() + static_cast<std::size_t>(cap) <= best.size()) return false;
    for (int cls = prev_class; cls < 3; ++cls) {
      const bool same = (cls == prev_class && prev_key != nullptr);
      std::vector<std::uint8_t> path{start_of(cls)};
      if (grow(cls, path, false, same, same ? prev_key : nullptr)) return true;
      if (aborted) return false;
    }
    return false;
  }

  bool grow(int cls, std::vector<std::uint8_t>& path, bool has_middle, bool tight,
            const std::vector<std::uint8_t>* prev_key) {
    if (budget == 0) {
      aborted = true;
      return false;
    }
    --budget;
    const std::uint8_t at = path.back();
    const std::uint8_t goal = goal_of(cls);
    const std::uint8_t mid = term[cls];
    for (std::uint8_t w : nbr[at]) {
      const std::size_t d = path.size();
      bool w_tight = false;
      if (tight && d < prev_key->size()) {
        if (w < (*prev_key)[d]) continue;
        w_tight = (w == (*prev_key)[d]);
      }
      if (w == goal) {
        if (!has_middle) continue;
        if (d + 1 > max_len) continue;
        if (w_tight && d + 1 <= prev_key->size()) continue;  // not above the previous key
        int tt = -1;
        if (term_index[at] >= 0) {
          tt = tt_bit(term_index[at], term_index[w]);
          if ((tt_used & (1 << tt)) != 0) continue;
        }
        path.push_back(w);
        if (tt >= 0) tt_used = static_cast<std::uint8_t>(tt_used | (1 << tt));
        chosen.push_back(path);
        const bool stop = place(cls, &chosen.back());
        chosen.pop_back();
        if (tt >= 0) tt_used = static_cast<std::uint8_t>(tt_used & ~(1 << tt));
        path.pop_back();
        if (stop) return true;
        if (aborted) return false;
        continue;
      }
      if (d + 1 >= max_len) continue;  // no room left to still reach the goal
      if (term_index[w] >= 0) {
        if (w != mid || has_middle) continue;
        int tt = -1;
        if (term_index[at] >= 0) {
          tt = tt_bit(term_index[at], term_index[w]);
          if ((tt_used & (1 << tt)) != 0) continue;
        }
        path.push_back(w);
        if (tt >= 0) tt_used = static_cast<std::uint8_t>(tt_used | (1 << tt));
        const bool stop = grow(cls, path, true, w_tight, prev_key);
        if (tt >= 0) tt_used = static_cast<std::uint8_t>(tt_used & ~(1 << tt));
        path.pop_back();
        if (stop) return true;
        if (aborted) return false;
        continue;
      }
      if ((used & (1u << w)) != 0) continue;
      used |= 1u << w;
      path.push_back(w);
      const bool stop = grow(cls, path, has_middle, w_tight, prev_key);
      path.pop_back();
      used &= ~(1u << w);
      if (stop) return true;
      if (aborted) return false;
    }
    return false;
  }
};

}  // namespace

OracleResult brute_force_pi3(const CayleyGraph& g, const std::vector<Permutation>& terminals,
                             std::uint64_t node_budget) {
  if (g.vertex_count() > 24)
    throw std::invalid_argument("brute_force_pi3: at most 24 vertices");
  if (terminals.size() != 3) throw std::invalid_argument("brute_force_pi3: exactly three terminals");
  for (const Permutation& t : terminals)
    if (t.n() != g.n()) throw std::invalid_argument("brute_force_pi3: dimension mismatch");
  if (terminals[0] == terminals[1] || terminals[1] == terminals[2] ||
      terminals[0] == terminals[2])
    throw std::invalid_argument("brute_force_pi3: terminals not distinct");

  oracle_search search(g, terminals, node_budget);
  bool hit_ceiling = false;
  for (std::size_t len = 3; len <= g.vertex_count(); ++len) {
    search.max_len = len;
    if (search.place(0, nullptr)) {
      hit_ceiling = true;
      break;
    }
    if (search.aborted) break;
  }

  OracleResult res;
  res.best = static_cast<int>(search.best.size());
  res.exact = hit_ceiling || !search.aborted;
  for (const std::vector<std::uint8_t>& seq : search.best) {
    std::vector<Permutation> path;
    for (std::uint8_t r : seq) path.push_back(unrank(g.n(), r));
    res.family.push_back(std::move(path));
  }
  return res;
}

}  // namespace bsstar
