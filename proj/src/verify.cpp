#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/tpath.hpp"

namespace bsstar {

namespace {

bool adjacent(const CayleyGraph& g, const Permutation& u, const Permutation& v) {
  for (const Permutation& w : g.neighbors(u)) {
    if (w == v) return true;
  }
  return false;
}

VerifyReport fail(const std::string& what) { return VerifyReport{false, what}; }

// Dimension screen shared by both verifiers: every vertex mentioned anywhere
// must live in g.
bool dimension_ok(const CayleyGraph& g, const TerminalTriple& t,
                  const std::vector<const std::vector<std::vector<Permutation>>*>& families,
                  const std::vector<Permutation>& extra) {
  const int n = g.n();
  if (t.a.n() != n || t.b.n() != n || t.c.n() != n) return false;
  for (const auto* family : families) {
    for (const auto& path : *family) {
      for (const Permutation& v : path) {
        if (v.n() != n) return false;
      }
    }
  }
  for (const Permutation& v : extra) {
    if (v.n() != n) return false;
  }
  return true;
}

bool distinct_terminals(const TerminalTriple& t) {
  return !(t.a == t.b) && !(t.b == t.c) && !(t.a == t.c);
}

// Walkability + simplicity + interior-avoids-T for one path.
VerifyReport check_path_body(const CayleyGraph& g, const std::vector<Permutation>& path,
                             const TerminalTriple& t) {
  if (path.empty()) return fail("empty path");
  std::set<std::uint32_t> seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!seen.insert(rank(path[i])).second) return fail("repeated vertex on path");
    if (i + 1 < path.size() && !adjacent(g, path[i], path[i + 1])) {
      return fail("non-adjacent consecutive vertices");
    }
  }
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (path[i] == t.a || path[i] == t.b || path[i] == t.c) {
      return fail("terminal as internal vertex");
    }
  }
  return {};
}

std::uint64_t edge_key(int n, const Permutation& u, const Permutation& v) {
  std::uint64_t ru = rank(u), rv = rank(v);
  if (ru > rv) std::swap(ru, rv);
  return ru * factorial(n) + rv;
}

}  // namespace

int pi3_formula(int n) {
  if (n < 3) throw std::out_of_range("pi3_formula: dimension below 3");
  return (3 * n) / 2 - 3;
}

VerifyReport verify_web(const CayleyGraph& g, const PairwiseWeb& web) {
  const TerminalTriple& t = web.terminals;
  if (web.n != g.n()) return fail("dimension mismatch");
  if (!dimension_ok(g, t, {&web.ab, &web.bc, &web.ac}, web.spares)) {
    return fail("dimension mismatch");
  }
  if (!distinct_terminals(t)) return fail("terminals not distinct");

  const int n = web.n;
  const int m = n / 2;  // odd n = 2m+1, even n = 2m+2
  const bool odd = n % 2 == 1;
  const std::size_t want_ab = odd ? 2 * m - 2 : 2 * (n - 2) / 2;
  const std::size_t want_ac = odd ? 2 * m : want_ab;
  const std::size_t want_spares = odd ? 2 : 0;
  if (web.ab.size() != want_ab || web.bc.size() != want_ab || web.ac.size() != want_ac) {
    return fail("path counts");
  }
  if (web.spares.size() != want_spares) return fail("spare count");

  // Per-path shape: endpoints by family, walkable, simple, interior avoids T.
  struct FamilyRef {
    const std::vector<std::vector<Permutation>>* paths;
    const Permutation *from, *to;
  };
  const FamilyRef families[] = {{&web.ab, &t.a, &t.b}, {&web.bc, &t.b, &t.c}, {&web.ac, &t.a, &t.c}};
  for (const FamilyRef& f : families) {
    for (const auto& path : *f.paths) {
      if (path.empty()) return fail("empty path");
      if (!(path.front() == *f.from) || !(path.back() == *f.to)) {
        return fail("wrong path endpoints");
      }
      VerifyReport r = check_path_body(g, path, t);
      if (!r.pass) return r;
    }
  }

  // Interior disjointness across all paths, and no terminal-terminal edge
  // claimed twice (the only way two interior-disjoint paths could share an
  // edge).
  std::set<std::uint32_t> interiors;
  std::set<std::uint64_t> terminal_edges;
  for (const FamilyRef& f : families) {
    for (const auto& path : *f.paths) {
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (!interiors.insert(rank(path[i])).second) {
          return fail("internal vertices shared between paths");
        }
      }
      if (path.size() == 2 && !terminal_edges.insert(edge_key(n, path[0], path[1])).second) {
        return fail("shared edge between paths");
      }
    }
  }

  // Spares: distinct non-terminal neighbors of b that no path touches.
  std::set<std::uint32_t> on_paths = interiors;
  on_paths.insert(rank(t.a));
  on_paths.insert(rank(t.b));
  on_paths.insert(rank(t.c));
  std::set<std::uint32_t> spare_ranks;
  for (const Permutation& s : web.spares) {
    if (!spare_ranks.insert(rank(s)).second) return fail("spare repeated");
    if (s == t.a || s == t.b || s == t.c) return fail("spare is a terminal");
    if (!adjacent(g, s, t.b)) return fail("spare not adjacent to b");
    if (on_paths.count(rank(s)) != 0) return fail("spare appears on path");
  }
  return {};
}

VerifyReport verify_witness(const CayleyGraph& g, const TPathWitness& witness) {
  const TerminalTriple& t = witness.terminals;
  if (witness.n != g.n()) return fail("dimension mismatch");
  if (!dimension_ok(g, t, {&witness.t_paths}, {})) return fail("dimension mismatch");
  if (!distinct_terminals(t)) return fail("terminals not distinct");

  if (witness.t_paths.size() != static_cast<std::size_t>(pi3_formula(witness.n))) {
    return fail("t-path count");
  }

  std::vector<std::set<std::uint32_t>> vertex_sets;
  std::vector<std::set<std::uint64_t>> edge_sets;
  for (const auto& path : witness.t_paths) {
    if (path.empty()) return fail("empty path");
    std::set<std::uint32_t> verts;
    std::set<std::uint64_t> edges;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!verts.insert(rank(path[i])).second) return fail("repeated vertex on path");
      if (i + 1 < path.size()) {
        if (!adjacent(g, path[i], path[i + 1])) return fail("non-adjacent consecutive vertices");
        edges.insert(edge_key(witness.n, path[i], path[i + 1]));
      }
    }
    if (verts.count(rank(t.a)) == 0 || verts.count(rank(t.b)) == 0 ||
        verts.count(rank(t.c)) == 0) {
      return fail("missing terminal");
    }
    vertex_sets.push_back(std::move(verts));
    edge_sets.push_back(std::move(edges));
  }

  const std::set<std::uint32_t> terminal_ranks = {rank(t.a), rank(t.b), rank(t.c)};
  for (std::size_t i = 0; i < vertex_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < vertex_sets.size(); ++j) {
      for (std::uint32_t r : vertex_sets[i]) {
        if (vertex_sets[j].count(r) != 0 && terminal_ranks.count(r) == 0) {
          return fail("vertex intersection exceeds T");
        }
      }
      for (std::uint64_t e : edge_sets[i]) {
        if (edge_sets[j].count(e) != 0) return fail("shared edge between t-paths");
      }
    }
  }
  return {};
}

}  // namespace bsstar
