#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/tpath.hpp"

namespace bsstar {

namespace {

// first simple path containing all three terminals, ends on two of them,
// enumerated in ascending-rank order for determinism
std::vector<Permutation> direct_t_path(const CayleyGraph& g, const TerminalTriple& t) {
  const std::vector<Permutation> term = {t.a, t.b, t.c};
  for (int mi = 0; mi < 3; ++mi) {
    const Permutation& m = term[static_cast<std::size_t>(mi)];
    std::vector<Permutation> ends;
    for (int i = 0; i < 3; ++i)
      if (i != mi) ends.push_back(term[static_cast<std::size_t>(i)]);
    if (rank(ends[1]) < rank(ends[0])) std::swap(ends[0], ends[1]);
    const Permutation& goal = ends[1];

    std::vector<Permutation> path{ends[0]};
    std::set<std::uint32_t> seen{rank(ends[0])};
    bool has_middle = false;

    // depth-first over simple paths; interiors may use m but no other terminal
    std::vector<Permutation> found;
    auto dfs = [&](auto&& self) -> bool {
      std::vector<Permutation> nbrs = g.neighbors(path.back());
      std::sort(nbrs.begin(), nbrs.end(),
                [](const Permutation& x, const Permutation& y) { return rank(x) < rank(y); });
      for (const Permutation& w : nbrs) {
        if (w == goal) {
          if (!has_middle) continue;
          found = path;
          found.push_back(w);
          return true;
        }
        if (seen.count(rank(w)) != 0) continue;
        if ((w == t.a || w == t.b || w == t.c) && !(w == m)) continue;
        const bool was_middle = has_middle;
        seen.insert(rank(w));
        path.push_back(w);
        if (w == m) has_middle = true;
        if (self(self)) return true;
        has_middle = was_middle;
        path.pop_back();
        seen.erase(rank(w));
      }
      return false;
    };
    if (dfs(dfs)) return found;
  }
  throw std::runtime_error("direct_t_path: no path visits all three terminals");
}

std::vector<Permutation> glue(const std::vector<Permutation>& first,
                              const std::vector<Permutation>& second, bool reverse_first,
                              bool reverse_second) {
  std::vector<Permutation> a = first;
  if (reverse_first) std::reverse(a.begin(), a.end());
  std::vector<Permutation> b = second;
  if (reverse_second) std::reverse(b.begin(), b.end());
  // the hinge terminal closes one path and opens the other
  if (!(a.back() == b.front())) throw std::logic_error("glue: hinge endpoints do not meet");
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

}  // namespace

TPathWitness assemble(const CayleyGraph& g, const PairwiseWeb& web) {
  TPathWitness witness;
  witness.n = web.n;
  witness.terminals = web.terminals;

  if (web.n == 3) {
    // the pairing system has no nonnegative solution here; one path suffices
    witness.t_paths.push_back(direct_t_path(g, web.terminals));
    witness.provenance.push_back("direct");
    return witness;
  }

  const int na = static_cast<int>(web.ab.size());
  const int nb = static_cast<int>(web.bc.size());
  const int nc = static_cast<int>(web.ac.size());
  const int two_x = na + nb - nc;
  const int two_y = na + nc - nb;
  const int two_z = nb + nc - na;
  if (two_x < 0 || two_y < 0 || two_z < 0 || two_x % 2 != 0 || two_y % 2 != 0 || two_z % 2 != 0)
    throw std::invalid_argument("assemble: path counts admit no nonnegative pairing");
  const int x = two_x / 2, y = two_y / 2, z = two_z / 2;

  // x paths hinge at b, y at a, z at c; every pairwise path is used once
  for (int i = 0; i < x; ++i) {
    witness.t_paths.push_back(glue(web.ab[static_cast<std::size_t>(i)],
                                   web.bc[static_cast<std::size_t>(i)], false, false));
    witness.provenance.push_back("ab+bc");
  }
  for (int i = 0; i < y; ++i) {
    witness.t_paths.push_back(glue(web.ab[static_cast<std::size_t>(x + i)],
                                   web.ac[static_cast<std::size_t>(i)], true, false));
    witness.provenance.push_back("ab+ac");
  }
  for (int i = 0; i < z; ++i) {
    witness.t_paths.push_back(glue(web.bc[static_cast<std::size_t>(x + i)],
                                   web.ac[static_cast<std::size_t>(y + i)], false, true));
    witness.provenance.push_back("bc+ac");
  }
  return witness;
}

BoundReport upper_bound(const CayleyGraph& g, BoundMode mode, std::uint64_t seed, int samples) {
  BoundReport rep;
  rep.n = g.n();
  rep.r = g.degree();
  rep.mode = mode;

  const std::uint32_t nv = g.vertex_count();
  int cmax = 0;
  auto audit = [&](const Permutation& u, const Permutation& v, const Permutation& w) {
    const int cn = static_cast<int>(g.common_neighbors({u, v, w}).size());
    if (cn > cmax) cmax = cn;
  };

  if (mode == BoundMode::exhaustive) {
    if (g.n() > 4)
      throw std::invalid_argument("upper_bound: exhaustive mode supports dimension at most 4");
    for (std::uint32_t i = 0; i < nv; ++i)
      for (std::uint32_t j = i + 1; j < nv; ++j)
        for (std::uint32_t k = j + 1; k < nv; ++k)
          audit(unrank(g.n(), i), unrank(g.n(), j), unrank(g.n(), k));
  } else {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
      std::uint32_t i = static_cast<std::uint32_t>(rng() % nv);
      std::uint32_t j = static_cast<std::uint32_t>(rng() % nv);
      std::uint32_t k = static_cast<std::uint32_t>(rng() % nv);
      if (i == j || j == k || i == k) continue;
      audit(unrank(g.n(), i), unrank(g.n(), j), unrank(g.n(), k));
    }
    // a 3-cycle rotation of the first three symbols pins the attaining triple
    std::string base;
    for (int d = 1; d <= g.n(); ++d) base += static_cast<char>('0' + d);
    audit(parse(base), parse("231" + base.substr(3)), parse("312" + base.substr(3)));
  }

  rep.cmax = cmax;
  rep.bound = (3 * rep.r - cmax) / 4;
  return rep;
}

}  // namespace bsstar
