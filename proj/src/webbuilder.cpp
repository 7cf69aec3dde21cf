#include "bsstar/webbuilder.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bsstar/menger.hpp"
#include "bsstar/tpath.hpp"

namespace bsstar {
namespace {

// role indices: 0 = a, 1 = b, 2 = c; pair indices: 0 = ab, 1 = bc, 2 = ac
constexpr int pair_lo_of[3] = {0, 1, 0};
constexpr int pair_hi_of[3] = {1, 2, 2};

int pair_of(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 1 && j == 2) return 1;
  return 2;
}

int shape_count(const WebShape& s, int pair) {
  return pair == 0 ? s.ab : pair == 1 ? s.bc : s.ac;
}

void note(BuildLog* log, std::string text) {
  if (log != nullptr) log->events.push_back(std::move(text));
}

struct RoleSet {
  std::array<Permutation, 3> term;
  std::array<int, 3> copy;
};

RoleSet roles_of(const CayleyGraph& g, const TerminalTriple& t) {
  RoleSet r{{t.a, t.b, t.c}, {0, 0, 0}};
  for (int i = 0; i < 3; ++i) r.copy[i] = g.copy_of(r.term[i]);
  return r;
}

void check_triple(const CayleyGraph& g, const TerminalTriple& t) {
  if (t.a.n() != g.n() || t.b.n() != g.n() || t.c.n() != g.n())
    throw std::invalid_argument("terminal dimension mismatch");
  if (t.a == t.b || t.b == t.c || t.a == t.c)
    throw std::invalid_argument("terminals must be distinct");
}

std::vector<std::vector<Permutation>>& family(PairwiseWeb& web, int pair) {
  return pair == 0 ? web.ab : pair == 1 ? web.bc : web.ac;
}

// Appends a finished path to its family, oriented lo-role endpoint first.
void push_path(PairwiseWeb& web, const RoleSet& r, int pair, std::vector<Permutation> path) {
  const Permutation& from = r.term[pair_lo_of[pair]];
  const Permutation& to = r.term[pair_hi_of[pair]];
  if (path.size() < 2) throw std::logic_error("web path needs two or more vertices");
  if (path.front() == to && path.back() == from) std::reverse(path.begin(), path.end());
  if (path.front() != from || path.back() != to)
    throw std::logic_error("web path endpoints do not match its family");
  family(web, pair).push_back(std::move(path));
}

bool graph_adjacent(const CayleyGraph& g, const Permutation& u, const Permutation& v) {
  for (const Permutation& w : g.neighbors(u))
    if (w == v) return true;
  return false;
}

struct VertexSet {
  std::set<std::uint32_t> ranks;
  bool has(const Permutation& v) const { return ranks.count(rank(v)) != 0; }
  void add(const Permutation& v) { ranks.insert(rank(v)); }
};

std::vector<Permutation> copy_vertices(const CayleyGraph& g, int c) {
  std::vector<Permutation> out;
  const std::uint32_t total = factorial(g.n());
  for (std::uint32_t i = 0; i < total; ++i) {
    Permutation p = unrank(g.n(), i);
    if (p.last_symbol() == c) out.push_back(p);
  }
  return out;
}

std::vector<int> copies_except(const CayleyGraph& g, const std::vector<int>& barred) {
  std::vector<int> out;
  for (int c = 1; c <= g.n(); ++c)
    if (std::find(barred.begin(), barred.end(), c) == barred.end()) out.push_back(c);
  return out;
}

std::vector<Permutation> restrict_to_copies(const CayleyGraph& g,
                                            const std::vector<Permutation>& vs,
                                            const std::vector<int>& copies) {
  std::vector<Permutation> out;
  for (const Permutation& v : vs)
    if (std::find(copies.begin(), copies.end(), g.copy_of(v)) != copies.end()) out.push_back(v);
  return out;
}

void sort_by_label(std::vector<Permutation>& vs) { std::sort(vs.begin(), vs.end()); }

// Builder-side validity check against an arbitrary requested shape.  The
// canonical-shape validator lives with the witness checks; this variant backs
// the direct search, which may be asked for non-canonical counts.
bool matches_shape(const CayleyGraph& g, const PairwiseWeb& web, const WebShape& shape,
                   std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  const RoleSet r = roles_of(g, web.terminals);
  if (static_cast<int>(web.ab.size()) != shape.ab || static_cast<int>(web.bc.size()) != shape.bc ||
      static_cast<int>(web.ac.size()) != shape.ac)
    return fail("path counts differ from the requested shape");
  if (static_cast<int>(web.spares.size()) != shape.spares)
    return fail("spare count differs from the requested shape");
  VertexSet terminals;
  for (const Permutation& t : r.term) terminals.add(t);
  VertexSet interiors;
  std::set<std::pair<std::uint32_t, std::uint32_t>> short_edges;
  const std::vector<std::vector<Permutation>>* fams[3] = {&web.ab, &web.bc, &web.ac};
  for (int p = 0; p < 3; ++p) {
    const Permutation& from = r.term[pair_lo_of[p]];
    const Permutation& to = r.term[pair_hi_of[p]];
    for (const std::vector<Permutation>& path : *fams[p]) {
      if (path.size() < 2) return fail("degenerate path");
      if (path.front() != from || path.back() != to) return fail("wrong path endpoints");
      VertexSet on_path;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (on_path.has(path[i])) return fail("repeated vertex on a path");
        on_path.add(path[i]);
        if (i + 1 < path.size() && !graph_adjacent(g, path[i], path[i + 1]))
          return fail("non-adjacent consecutive vertices");
      }
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        if (terminals.has(path[i])) return fail("terminal as internal vertex");
        if (interiors.has(path[i])) return fail("internal vertices shared between paths");
        interiors.add(path[i]);
      }
      if (path.size() == 2) {
        std::uint32_t x = rank(path.front()), y = rank(path.back());
        if (x > y) std::swap(x, y);
        if (!short_edges.insert({x, y}).second) return fail("shared edge between paths");
      }
    }
  }
  VertexSet seen_spares;
  for (const Permutation& s : web.spares) {
    if (seen_spares.has(s)) return fail("spare repeated");
    seen_spares.add(s);
    if (terminals.has(s)) return fail("spare is a terminal");
    if (!graph_adjacent(g, s, r.term[1])) return fail("spare not adjacent to b");
    if (interiors.has(s)) return fail("spare appears on a path");
  }
  return true;
}

PairwiseWeb build_rec(const CayleyGraph& g, const TerminalTriple& t, BuildLog* log, int level);

// Exhaustive, budget-bounded packing of all requested path slots at once.
// Canonical order (direct edge first, then strictly increasing first interior
// per family) visits every web shape candidate exactly once.
struct Packer {
  const CayleyGraph& g;
  const RoleSet& r;
  std::vector<int> slot_pair;
  std::vector<Permutation> spares;
  long budget;
  std::size_t max_len;  // vertices per path; deepened iteratively so short webs surface first

  VertexSet blocked{};
  bool direct_used[3] = {false, false, false};
  int slots_done[3] = {0, 0, 0};
  std::uint32_t next_min_first[3] = {0, 0, 0};
  std::vector<std::vector<Permutation>> placed{};

  bool run() {
    for (const Permutation& term : r.term) blocked.add(term);
    for (const Permutation& s : spares) blocked.add(s);
    placed.assign(slot_pair.size(), {});
    return place(0);
  }

  bool feasible(std::size_t slot) const {
    int remaining[3] = {0, 0, 0};
    for (std::size_t i = slot; i < slot_pair.size(); ++i)
      ++remaining[slot_pair[static_cast<std::size_t>(i)]];
    for (int p = 0; p < 3; ++p) {
      if (remaining[p] == 0) continue;
      const Permutation& u = r.term[pair_lo_of[p]];
      const Permutation& v = r.term[pair_hi_of[p]];
      int au = 0, av = 0;
      for (const Permutation& w : g.neighbors(u))
        if (w == v || !blocked.has(w)) ++au;
      for (const Permutation& w : g.neighbors(v))
        if (w == u || !blocked.has(w)) ++av;
      if (au < remaining[p] || av < remaining[p]) return false;
    }
    return true;
  }

  bool place(std::size_t slot) {
    if (slot == slot_pair.size()) return true;
    if (!feasible(slot)) return false;
    const int p = slot_pair[slot];
    std::vector<Permutation> cur{r.term[pair_lo_of[p]]};
    return grow(slot, p, cur);
  }

  bool grow(std::size_t slot, int p, std::vector<Permutation>& cur) {
    if (--budget < 0)
      throw SearchBudgetError("direct search budget exhausted: dimension " +
                              std::to_string(g.n()) + ", terminals " + format(r.term[0]) + "," +
                              format(r.term[1]) + "," + format(r.term[2]));
    const Permutation& goal = r.term[pair_hi_of[p]];
    std::vector<Permutation> nbrs = g.neighbors(cur.back());
    sort_by_label(nbrs);
    for (const Permutation& w : nbrs) {
      if (w == goal) {
        if (cur.size() + 1 > max_len) continue;
        if (cur.size() == 1) {
          // a two-vertex path is allowed once, in the family's first slot
          if (direct_used[p] || slots_done[p] != 0) continue;
          direct_used[p] = true;
        }
        cur.push_back(w);
        placed[slot] = cur;
        ++slots_done[p];
        const std::uint32_t saved_min = next_min_first[p];
        if (cur.size() > 2) next_min_first[p] = rank(cur[1]) + 1;
        const bool done = place(slot + 1);
        next_min_first[p] = saved_min;
        --slots_done[p];
        if (done) return true;
        cur.pop_back();
        if (cur.size() == 1) direct_used[p] = false;
        continue;
      }
      if (cur.size() + 1 >= max_len) continue;  // no room left to still reach the goal
      if (blocked.has(w)) continue;
      if (cur.size() == 1 && rank(w) < next_min_first[p]) continue;
      blocked.add(w);
      cur.push_back(w);
      if (grow(slot, p, cur)) return true;
      cur.pop_back();
      blocked.ranks.erase(rank(w));
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// shared sub-block: strip the fixed last symbol, recurse one dimension down,
// lift the result back, then add the missing long-family paths through the
// other sub-blocks.

Permutation strip_relabel(const Permutation& u) {
  const int n = u.n();
  const int fixed = u.last_symbol();
  std::array<std::uint8_t, 9> s{};
  for (int i = 1; i < n; ++i) {
    const int x = u.symbol(i);
    s[i - 1] = static_cast<std::uint8_t>(x > fixed ? x - 1 : x);
  }
  return Permutation::unchecked(n - 1, s);
}

Permutation lift_vertex(const Permutation& u, int fixed, int n) {
  std::array<std::uint8_t, 9> s{};
  for (int i = 1; i < n; ++i) {
    const int x = u.symbol(i);
    s[i - 1] = static_cast<std::uint8_t>(x >= fixed ? x + 1 : x);
  }
  s[n - 1] = static_cast<std::uint8_t>(fixed);
  return Permutation::unchecked(n, s);
}

std::optional<PairwiseWeb> case_same_copy(const CayleyGraph& g, const TerminalTriple& t,
                                          const RoleSet& r, BuildLog* log, int level) {
  const int n = g.n();
  const int fixed = r.copy[0];
  CayleyGraph sub_g(n - 1);
  TerminalTriple sub_t{strip_relabel(t.a), strip_relabel(t.b), strip_relabel(t.c),
                       "inherited from the enclosing construction"};
  PairwiseWeb sub;
  try {
    sub = build_rec(sub_g, sub_t, log, level + 1);
  } catch (const SearchBudgetError& e) {
    note(log, std::string("descent failed: ") + e.what());
    return std::nullopt;
  }

  auto lift = [&](const Permutation& u) { return lift_vertex(u, fixed, n); };
  PairwiseWeb web;
  web.n = n;
  web.terminals = t;
  const std::vector<std::vector<Permutation>>* sub_fams[3] = {&sub.ab, &sub.bc, &sub.ac};
  for (int p = 0; p < 3; ++p) {
    for (const std::vector<Permutation>& path : *sub_fams[p]) {
      std::vector<Permutation> lifted;
      lifted.reserve(path.size());
      for (const Permutation& v : path) lifted.push_back(lift(v));
      push_path(web, r, p, std::move(lifted));
    }
  }

  const std::vector<int> outside = copies_except(g, {fixed});
  if (n % 2 == 1) {
    // two extra (a,c)-paths through the other sub-blocks; b's exits become spares
    const Permutation bp = g.out_plus(t.b), bm = g.out_minus(t.b);
    const CopyView view = induced(g, outside, {bp, bm});
    const DisjointPathSet routes =
        disjoint_set_paths(view, {g.out_plus(t.a), g.out_minus(t.a)},
                           {g.out_plus(t.c), g.out_minus(t.c)}, 2);
    for (const std::vector<Permutation>& route : routes.paths) {
      std::vector<Permutation> path{t.a};
      path.insert(path.end(), route.begin(), route.end());
      path.push_back(t.c);
      push_path(web, r, 2, std::move(path));
    }
    web.spares = {bp, bm};
    sort_by_label(web.spares);
  } else {
    // the lifted structure carries two spare neighbors of b; their exits and
    // b's own exits receive four connector routes, two per side family
    if (sub.spares.size() != 2) {
      note(log, "descent returned without the two expected spares");
      return std::nullopt;
    }
    const Permutation s1 = lift(sub.spares[0]), s2 = lift(sub.spares[1]);
    const Permutation ap = g.out_plus(t.a), am = g.out_minus(t.a);
    const Permutation cp = g.out_plus(t.c), cm = g.out_minus(t.c);
    const Permutation bp = g.out_plus(t.b), bm = g.out_minus(t.b);
    const Permutation s1p = g.out_plus(s1), s2p = g.out_plus(s2);
    const CopyView view = induced(g, outside, {});
    const DisjointPathSet routes = disjoint_set_paths(view, {ap, am, cp, cm}, {bp, bm, s1p, s2p}, 4);
    for (const std::vector<Permutation>& route : routes.paths) {
      const bool from_a = route.front() == ap || route.front() == am;
      std::vector<Permutation> path{from_a ? t.a : t.c};
      path.insert(path.end(), route.begin(), route.end());
      if (route.back() == s1p) path.push_back(s1);
      if (route.back() == s2p) path.push_back(s2);
      path.push_back(t.b);
      push_path(web, r, from_a ? 0 : 1, std::move(path));
    }
  }
  return web;
}

// ---------------------------------------------------------------------------
// two sub-blocks: the lone terminal reaches the shared sub-block through exit
// vertices and through hinges borrowed from sacrificed in-block paths.

struct CaseTwoVariant {
  int ports_per_side;
  std::vector<Permutation> fixed_spares;
  int want_w;      // extra spares drawn from the lone terminal's own sub-block
  bool harvest;    // spares recovered after assembly, next to a side-role b
};

struct HingeTwo {
  int side;  // 0 or 1
  Permutation v, image;
};

std::optional<PairwiseWeb> case_two_try(const CayleyGraph& g, const TerminalTriple& t,
                                        const RoleSet& r, const WebShape& shape, int lone,
                                        const CaseTwoVariant& var, BuildLog* log,
                                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return std::optional<PairwiseWeb>{};
  };
  const int n = g.n();
  int s_role[2];
  {
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != lone) s_role[k++] = i;
  }
  const Permutation& gam = r.term[lone];
  const int copy_pair = r.copy[s_role[0]];

  for (const Permutation& s : var.fixed_spares)
    for (const Permutation& term : r.term)
      if (s == term) return fail("requested spare coincides with a terminal");

  VertexSet reserved;
  for (const Permutation& term : r.term) reserved.add(term);
  for (const Permutation& s : var.fixed_spares) reserved.add(s);

  // exit vertices of the side terminals usable as direct connections
  struct SideUse {
    std::vector<Permutation> anchors;
    bool bonus = false;
  };
  SideUse use[2];
  int h[2];
  for (int k = 0; k < 2; ++k) {
    const Permutation& alpha = r.term[s_role[k]];
    const int d_side = shape_count(shape, pair_of(lone, s_role[k]));
    const Permutation cand[2] = {g.out_plus(alpha), g.out_minus(alpha)};
    int taken = 0;
    for (const Permutation& p : cand) {
      if (taken >= std::min(var.ports_per_side, d_side)) break;
      if (p == gam) {
        if (!use[k].bonus) {
          use[k].bonus = true;
          ++taken;
        }
        continue;
      }
      if (reserved.has(p)) continue;
      use[k].anchors.push_back(p);
      reserved.add(p);
      ++taken;
    }
    h[k] = d_side - taken;
  }
  const int D = std::max(h[0], h[1]);

  // in-block flow between the side terminals, oversized by the hinge demand
  const int d_keep = shape_count(shape, pair_of(s_role[0], s_role[1]));
  std::vector<Permutation> flow_removed = restrict_to_copies(g, var.fixed_spares, {copy_pair});
  const CopyView flow_view = induced(g, {copy_pair}, flow_removed);
  DisjointPathSet flow;
  try {
    flow = disjoint_pair_paths(flow_view, r.term[s_role[0]], r.term[s_role[1]], d_keep + D);
  } catch (const InfeasibleError& e) {
    return fail(std::string("in-block flow: ") + e.what());
  }

  // sacrifice the D paths with the most interior vertices; each must have at
  // least two so both of its end interiors are distinct donors
  std::vector<int> order(flow.paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return flow.paths[static_cast<std::size_t>(x)].size() >
           flow.paths[static_cast<std::size_t>(y)].size();
  });
  std::vector<HingeTwo> hinges;
  std::vector<bool> destroyed(flow.paths.size(), false);
  std::vector<int> destroyed_lengths;
  std::vector<std::pair<int, Permutation>> unused_donors;  // (side, vertex) left free
  for (int idx = 0; idx < D; ++idx) {
    const std::vector<Permutation>& path = flow.paths[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])];
    if (path.size() < 4) return fail("sacrificed path has fewer than two interior vertices");
    destroyed[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])] = true;
    destroyed_lengths.push_back(static_cast<int>(path.size()) - 1);
    const Permutation ends[2] = {path[1], path[path.size() - 2]};
    for (int k = 0; k < 2; ++k) {
      if (idx >= h[k]) {
        unused_donors.push_back({k, ends[k]});
        continue;
      }
      const Permutation& v = ends[k];
      Permutation image;
      bool found = false;
      for (const Permutation& im : {g.out_plus(v), g.out_minus(v)}) {
        if (im == gam || reserved.has(im)) continue;
        image = im;
        found = true;
        break;
      }
      if (!found) return fail("hinge has no free exit vertex");
      reserved.add(image);
      hinges.push_back({k, v, image});
    }
  }
  if (!destroyed_lengths.empty())
    note(log, "destroyed in-block path lengths: " + [&] {
      std::string s;
      for (int len : destroyed_lengths) {
        if (!s.empty()) s += ",";
        s += std::to_string(len);
      }
      return s;
    }());

  // extra spares inside the lone terminal's sub-block, chosen after the images
  std::vector<Permutation> w_spares;
  if (var.want_w > 0) {
    std::vector<Permutation> cand;
    for (const Permutation& v : g.neighbors(gam))
      if (g.copy_of(v) == r.copy[lone]) cand.push_back(v);
    sort_by_label(cand);
    for (const Permutation& v : cand) {
      if (static_cast<int>(w_spares.size()) >= var.want_w) break;
      if (reserved.has(v)) continue;
      w_spares.push_back(v);
      reserved.add(v);
    }
    if (static_cast<int>(w_spares.size()) < var.want_w)
      return fail("not enough free neighbors for the extra spares");
  }

  // one fan from the lone terminal to every anchor and hinge image
  std::vector<Permutation> targets;
  for (int k = 0; k < 2; ++k)
    for (const Permutation& p : use[k].anchors) targets.push_back(p);
  for (const HingeTwo& hg : hinges) targets.push_back(hg.image);
  std::map<std::uint32_t, std::vector<Permutation>> fan_by_target;
  if (!targets.empty()) {
    std::vector<Permutation> removed;
    for (const Permutation& s : var.fixed_spares)
      if (g.copy_of(s) != copy_pair) removed.push_back(s);
    for (const Permutation& s : w_spares) removed.push_back(s);
    const CopyView h_view = induced(g, copies_except(g, {copy_pair}), removed);
    DisjointPathSet fans;
    try {
      fans = fan(h_view, gam, targets);
    } catch (const InfeasibleError& e) {
      return fail(std::string("lone-terminal fan: ") + e.what());
    }
    for (std::vector<Permutation>& path : fans.paths) fan_by_target[rank(path.back())] = std::move(path);
  }

  PairwiseWeb web;
  web.n = n;
  web.terminals = t;
  for (std::size_t i = 0; i < flow.paths.size(); ++i)
    if (!destroyed[i]) push_path(web, r, pair_of(s_role[0], s_role[1]), flow.paths[i]);
  for (int k = 0; k < 2; ++k) {
    const int pr = pair_of(lone, s_role[k]);
    if (use[k].bonus) push_path(web, r, pr, {gam, r.term[s_role[k]]});
    for (const Permutation& p : use[k].anchors) {
      std::vector<Permutation> path = fan_by_target.at(rank(p));
      path.push_back(r.term[s_role[k]]);
      push_path(web, r, pr, std::move(path));
    }
  }
  for (const HingeTwo& hg : hinges) {
    std::vector<Permutation> path = fan_by_target.at(rank(hg.image));
    path.push_back(hg.v);
    path.push_back(r.term[s_role[hg.side]]);
    push_path(web, r, pair_of(lone, s_role[hg.side]), std::move(path));
  }

  web.spares = var.fixed_spares;
  web.spares.insert(web.spares.end(), w_spares.begin(), w_spares.end());
  if (var.harvest) {
    // spares recovered next to b, which sits in the shared sub-block here
    VertexSet on_paths;
    const std::vector<std::vector<Permutation>>* fams[3] = {&web.ab, &web.bc, &web.ac};
    for (int p = 0; p < 3; ++p)
      for (const std::vector<Permutation>& path : *fams[p])
        for (const Permutation& v : path) on_paths.add(v);
    const int b_side = s_role[0] == 1 ? 0 : 1;
    VertexSet chosen;
    auto try_take = [&](const Permutation& v) {
      if (static_cast<int>(web.spares.size()) >= 2) return;
      if (chosen.has(v) || on_paths.has(v)) return;
      for (const Permutation& term : r.term)
        if (v == term) return;
      chosen.add(v);
      web.spares.push_back(v);
    };
    for (const auto& [side, v] : unused_donors)
      if (side == b_side) try_take(v);
    for (const Permutation& p : {g.out_plus(t.b), g.out_minus(t.b)}) try_take(p);
    std::vector<Permutation> in_block;
    for (const Permutation& v : g.neighbors(t.b))
      if (g.copy_of(v) == copy_pair) in_block.push_back(v);
    sort_by_label(in_block);
    for (const Permutation& v : in_block) try_take(v);
    if (static_cast<int>(web.spares.size()) < 2)
      return fail("could not recover two spares next to b");
  }
  sort_by_label(web.spares);
  return web;
}

std::optional<PairwiseWeb> case_two_copies(const CayleyGraph& g, const TerminalTriple& t,
                                           const RoleSet& r, const WebShape& shape,
                                           BuildLog* log) {
  int lone = -1;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (r.copy[j] == r.copy[k] && r.copy[i] != r.copy[j]) lone = i;
  }
  if (lone < 0) throw std::logic_error("two-sub-block case without a lone terminal");
  note(log, std::string("lone role: ") + "abc"[lone]);

  std::vector<CaseTwoVariant> variants;
  if (g.n() % 2 == 0) {
    variants.push_back({2, {}, 0, false});
    variants.push_back({1, {}, 0, false});
  } else if (lone == 1) {
    const Permutation bp = g.out_plus(t.b), bm = g.out_minus(t.b);
    variants.push_back({2, {bp, bm}, 0, false});
    variants.push_back({1, {bp, bm}, 0, false});
    variants.push_back({2, {bp}, 1, false});
    variants.push_back({2, {bm}, 1, false});
    variants.push_back({1, {bp}, 1, false});
    variants.push_back({1, {bm}, 1, false});
    variants.push_back({2, {}, 2, false});
    variants.push_back({1, {}, 2, false});
  } else {
    variants.push_back({2, {}, 0, true});
    variants.push_back({1, {}, 0, true});
  }
  for (const CaseTwoVariant& var : variants) {
    std::string why;
    std::optional<PairwiseWeb> web = case_two_try(g, t, r, shape, lone, var, log, &why);
    if (web.has_value()) return web;
    note(log, "two-sub-block variant rejected: " + why);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// three sub-blocks: classify terminal exits, balance per-sub-block fan loads
// with at most two outside routes, then draw hinges and run three fans.

struct ArrivalRec {
  int pair, from_role, at_role;
  Permutation target;
};

struct GateRec {
  int pair, i_role, j_role;
  Permutation gate;
};

struct HingeRec {
  int pair, src_role, dst_role;
  Permutation v, image;
};

struct RouteEnd {
  bool is_image = false;
  int role = -1;
  Permutation vertex, gate;
};

struct RouteJob {
  int pair;
  RouteEnd e1, e2;
};

std::optional<PairwiseWeb> case_three_try(const CayleyGraph& g, const TerminalTriple& t,
                                          const RoleSet& r, const WebShape& shape,
                                          const std::vector<Permutation>& fixed_spares, int want_w,
                                          std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return std::optional<PairwiseWeb>{};
  };
  const int n = g.n();
  const std::vector<int> triple_copies = {r.copy[0], r.copy[1], r.copy[2]};
  auto in_triple = [&](const Permutation& v) {
    const int c = g.copy_of(v);
    return c == r.copy[0] || c == r.copy[1] || c == r.copy[2];
  };

  for (const Permutation& s : fixed_spares)
    for (const Permutation& term : r.term)
      if (s == term) return fail("requested spare coincides with a terminal");

  VertexSet reserved;
  for (const Permutation& term : r.term) reserved.add(term);
  for (const Permutation& s : fixed_spares) reserved.add(s);

  Permutation port[3][2];
  bool free_port[3][2];
  VertexSet port_set;
  for (int i = 0; i < 3; ++i) {
    port[i][0] = g.out_plus(r.term[i]);
    port[i][1] = g.out_minus(r.term[i]);
    for (int s = 0; s < 2; ++s) {
      free_port[i][s] = !reserved.has(port[i][s]);
      port_set.add(port[i][s]);
    }
  }

  int d_rem[3] = {shape_count(shape, 0), shape_count(shape, 1), shape_count(shape, 2)};
  std::vector<std::pair<int, int>> direct_pairs;  // (i_role, j_role)
  std::vector<GateRec> gates;
  std::vector<ArrivalRec> arrivals;
  std::vector<HingeRec> hinges;
  std::vector<RouteJob> jobs;

  // terminals joined by an edge: consume the facing exit on both sides
  for (int p = 0; p < 3; ++p) {
    const int i = pair_lo_of[p], j = pair_hi_of[p];
    for (int s = 0; s < 2; ++s) {
      if (d_rem[p] == 0) break;
      if (free_port[i][s] && port[i][s] == r.term[j]) {
        free_port[i][s] = false;
        free_port[j][s] = false;  // the exits face each other with equal sign
        --d_rem[p];
        direct_pairs.push_back({i, j});
      }
    }
  }

  // shared exit vertex between two terminals: a two-edge path through it
  for (int p = 0; p < 3; ++p) {
    const int i = pair_lo_of[p], j = pair_hi_of[p];
    for (int si = 0; si < 2; ++si)
      for (int sj = 0; sj < 2; ++sj) {
        if (d_rem[p] == 0) continue;
        if (!free_port[i][si] || !free_port[j][sj]) continue;
        if (port[i][si] != port[j][sj]) continue;
        free_port[i][si] = false;
        free_port[j][sj] = false;
        --d_rem[p];
        reserved.add(port[i][si]);
        gates.push_back({p, i, j, port[i][si]});
      }
  }

  // exits landing in the partner's sub-block become fan targets over there
  for (int p = 0; p < 3; ++p) {
    const int ends[2] = {pair_lo_of[p], pair_hi_of[p]};
    for (int e = 0; e < 2; ++e) {
      const int i = ends[e], j = ends[1 - e];
      for (int s = 0; s < 2; ++s) {
        if (d_rem[p] == 0) break;
        if (!free_port[i][s]) continue;
        const Permutation& v = port[i][s];
        if (g.copy_of(v) != r.copy[j]) continue;
        if (reserved.has(v)) continue;
        free_port[i][s] = false;
        --d_rem[p];
        reserved.add(v);
        arrivals.push_back({p, i, j, v});
      }
    }
  }

  // load balancing: fans are limited by in-block degree minus exclusions
  int gate_excl[3] = {0, 0, 0};
  for (const GateRec& gr : gates)
    for (int x = 0; x < 3; ++x)
      if (g.copy_of(gr.gate) == r.copy[x]) ++gate_excl[x];
  int budget[3];
  for (int x = 0; x < 3; ++x) {
    int sp = 0;
    for (const Permutation& s : fixed_spares)
      if (g.copy_of(s) == r.copy[x]) ++sp;
    budget[x] = (2 * n - 5) - sp - gate_excl[x] - (x == 1 ? want_w : 0);
  }
  int h[3] = {d_rem[0], d_rem[1], d_rem[2]};
  int arr_at[3] = {0, 0, 0};
  for (const ArrivalRec& ar : arrivals) ++arr_at[ar.at_role];
  int relay_at[3] = {0, 0, 0};
  auto load_of = [&](int x) {
    int load = arr_at[x] + relay_at[x];
    for (int p = 0; p < 3; ++p)
      if (pair_lo_of[p] == x || pair_hi_of[p] == x) load += h[p];
    return load;
  };
  auto free_outside_port = [&](int role) {
    for (int s = 0; s < 2; ++s)
      if (free_port[role][s] && !in_triple(port[role][s]) && !reserved.has(port[role][s]))
        return s;
    return -1;
  };
  const int route_cap = 2;
  while (true) {
    int x = -1;
    for (int i = 0; i < 3; ++i)
      if (load_of(i) > budget[i]) {
        x = i;
        break;
      }
    if (x < 0) break;
    if (static_cast<int>(jobs.size()) >= route_cap)
      return fail("sub-block load exceeds its fan budget");
    // candidate pairs at the overloaded sub-block, most-overloaded partner first
    std::vector<int> cand;
    for (int p = 0; p < 3; ++p)
      if (h[p] > 0 && (pair_lo_of[p] == x || pair_hi_of[p] == x)) cand.push_back(p);
    std::stable_sort(cand.begin(), cand.end(), [&](int p, int q) {
      const int po = pair_lo_of[p] == x ? pair_hi_of[p] : pair_lo_of[p];
      const int qo = pair_lo_of[q] == x ? pair_hi_of[q] : pair_lo_of[q];
      return load_of(po) - budget[po] > load_of(qo) - budget[qo];
    });
    bool relieved = false;
    for (int p : cand) {
      const int i = pair_lo_of[p], j = pair_hi_of[p];
      const int si = free_outside_port(i), sj = free_outside_port(j);
      if (si >= 0 && sj >= 0 && port[i][si] != port[j][sj]) {
        free_port[i][si] = false;
        free_port[j][sj] = false;
        reserved.add(port[i][si]);
        reserved.add(port[j][sj]);
        --h[p];
        jobs.push_back({p, {false, i, port[i][si], {}}, {false, j, port[j][sj], {}}});
        relieved = true;
        break;
      }
      // gated route: the demand leaves through a free exit on the overloaded
      // side and enters the partner sub-block through a fresh gate vertex
      const int x_role = x, y_role = pair_lo_of[p] == x ? pair_hi_of[p] : pair_lo_of[p];
      const int sq = free_outside_port(x_role);
      if (sq < 0) continue;
      bool made = false;
      // terminal exit vertices stay out of the relay: they are attachment
      // points for other mechanisms, never pass-through material
      for (const Permutation& v : copy_vertices(g, r.copy[y_role])) {
        if (reserved.has(v) || port_set.has(v)) continue;
        for (const Permutation& im : {g.out_plus(v), g.out_minus(v)}) {
          if (in_triple(im) || reserved.has(im) || port_set.has(im)) continue;
          free_port[x_role][sq] = false;
          reserved.add(port[x_role][sq]);
          reserved.add(v);
          reserved.add(im);
          --h[p];
          ++relay_at[y_role];
          jobs.push_back({p, {true, y_role, im, v}, {false, x_role, port[x_role][sq], {}}});
          made = true;
          break;
        }
        if (made) break;
      }
      if (made) {
        relieved = true;
        break;
      }
    }
    if (!relieved) return fail("overloaded sub-block with no movable demand");
  }

  // hinge pairs: a border vertex near the lower role, its exit near the higher
  auto pool_blocked = [&](const Permutation& v) { return reserved.has(v) || port_set.has(v); };
  constexpr int hinge_src[3] = {0, 1, 0};
  constexpr int hinge_dst[3] = {1, 2, 2};
  for (int p = 0; p < 3; ++p) {
    const int src = hinge_src[p], dst = hinge_dst[p];
    int needed = h[p];
    if (needed == 0) continue;
    for (const Permutation& v : copy_vertices(g, r.copy[src])) {
      if (needed == 0) break;
      if (pool_blocked(v)) continue;
      for (const Permutation& im : {g.out_plus(v), g.out_minus(v)}) {
        if (g.copy_of(im) != r.copy[dst] || pool_blocked(im)) continue;
        reserved.add(v);
        reserved.add(im);
        port_set.add(v);
        port_set.add(im);
        hinges.push_back({p, src, dst, v, im});
        --needed;
        break;
      }
    }
    if (needed > 0) return fail("border vertices exhausted");
  }

  // extra spares next to b inside its own sub-block
  std::vector<Permutation> w_spares;
  if (want_w > 0) {
    std::vector<Permutation> cand;
    for (const Permutation& v : g.neighbors(r.term[1]))
      if (g.copy_of(v) == r.copy[1]) cand.push_back(v);
    sort_by_label(cand);
    for (const Permutation& v : cand) {
      if (static_cast<int>(w_spares.size()) >= want_w) break;
      if (reserved.has(v)) continue;
      w_spares.push_back(v);
      reserved.add(v);
    }
    if (static_cast<int>(w_spares.size()) < want_w)
      return fail("not enough free neighbors for the extra spares");
  }

  // fan targets per sub-block, in a fixed draw order
  std::vector<Permutation> targets[3];
  for (const ArrivalRec& ar : arrivals) targets[ar.at_role].push_back(ar.target);
  for (const RouteJob& jb : jobs)
    if (jb.e1.is_image) targets[jb.e1.role].push_back(jb.e1.gate);
  for (const HingeRec& hg : hinges) {
    targets[hg.src_role].push_back(hg.v);
    targets[hg.dst_role].push_back(hg.image);
  }
  for (int x = 0; x < 3; ++x)
    if (static_cast<int>(targets[x].size()) > budget[x])
      return fail("fan demand exceeds the sub-block budget");

  std::map<std::uint32_t, std::vector<Permutation>> fan_by_target[3];
  for (int x = 0; x < 3; ++x) {
    if (targets[x].empty()) continue;
    std::vector<Permutation> removed;
    for (const Permutation& s : fixed_spares)
      if (g.copy_of(s) == r.copy[x]) removed.push_back(s);
    for (const GateRec& gr : gates)
      if (g.copy_of(gr.gate) == r.copy[x]) removed.push_back(gr.gate);
    if (x == 1)
      for (const Permutation& s : w_spares) removed.push_back(s);
    const CopyView view = induced(g, {r.copy[x]}, removed);
    DisjointPathSet fans;
    try {
      fans = fan(view, r.term[x], targets[x]);
    } catch (const InfeasibleError& e) {
      return fail(std::string("in-block fan: ") + e.what());
    }
    for (std::vector<Permutation>& path : fans.paths)
      fan_by_target[x][rank(path.back())] = std::move(path);
  }

  // outside routes for the displaced demand
  std::vector<std::vector<Permutation>> route_paths;
  std::vector<std::pair<RouteEnd, RouteEnd>> route_ends;
  if (!jobs.empty()) {
    std::vector<Permutation> removed;
    for (const Permutation& s : fixed_spares)
      if (!in_triple(s)) removed.push_back(s);
    for (const GateRec& gr : gates)
      if (!in_triple(gr.gate)) removed.push_back(gr.gate);
    const CopyView view = induced(g, copies_except(g, triple_copies), removed);
    std::map<std::uint32_t, RouteEnd> att;
    std::vector<Permutation> from, to;
    if (jobs.size() == 1) {
      from = {jobs[0].e1.vertex};
      to = {jobs[0].e2.vertex};
      att[rank(jobs[0].e1.vertex)] = jobs[0].e1;
      att[rank(jobs[0].e2.vertex)] = jobs[0].e2;
    } else {
      int shared = -1;
      for (int role = 0; role < 3 && shared < 0; ++role) {
        const bool in1 = pair_lo_of[jobs[0].pair] == role || pair_hi_of[jobs[0].pair] == role;
        const bool in2 = pair_lo_of[jobs[1].pair] == role || pair_hi_of[jobs[1].pair] == role;
        if (in1 && in2) shared = role;
      }
      if (shared < 0) throw std::logic_error("route jobs without a shared role");
      for (const RouteJob& jb : jobs) {
        const RouteEnd& shared_end = jb.e1.role == shared ? jb.e1 : jb.e2;
        const RouteEnd& other_end = jb.e1.role == shared ? jb.e2 : jb.e1;
        from.push_back(shared_end.vertex);
        to.push_back(other_end.vertex);
        att[rank(shared_end.vertex)] = shared_end;
        att[rank(other_end.vertex)] = other_end;
      }
    }
    DisjointPathSet routes;
    try {
      routes = disjoint_set_paths(view, from, to, static_cast<int>(jobs.size()));
    } catch (const InfeasibleError& e) {
      return fail(std::string("outside routes: ") + e.what());
    }
    for (std::vector<Permutation>& path : routes.paths) {
      route_ends.push_back({att.at(rank(path.front())), att.at(rank(path.back()))});
      route_paths.push_back(std::move(path));
    }
  }

  // assemble
  PairwiseWeb web;
  web.n = n;
  web.terminals = t;
  for (const auto& [i, j] : direct_pairs)
    push_path(web, r, pair_of(i, j), {r.term[i], r.term[j]});
  for (const GateRec& gr : gates)
    push_path(web, r, gr.pair, {r.term[gr.i_role], gr.gate, r.term[gr.j_role]});
  for (const ArrivalRec& ar : arrivals) {
    const std::vector<Permutation>& fp = fan_by_target[ar.at_role].at(rank(ar.target));
    std::vector<Permutation> path{r.term[ar.from_role]};
    path.insert(path.end(), fp.rbegin(), fp.rend());
    push_path(web, r, ar.pair, std::move(path));
  }
  for (const HingeRec& hg : hinges) {
    std::vector<Permutation> path = fan_by_target[hg.src_role].at(rank(hg.v));
    const std::vector<Permutation>& fp = fan_by_target[hg.dst_role].at(rank(hg.image));
    path.insert(path.end(), fp.rbegin(), fp.rend());
    push_path(web, r, hg.pair, std::move(path));
  }
  for (std::size_t i = 0; i < route_paths.size(); ++i) {
    const RouteEnd& front = route_ends[i].first;
    const RouteEnd& back = route_ends[i].second;
    std::vector<Permutation> path;
    if (front.is_image) {
      const std::vector<Permutation>& fp = fan_by_target[front.role].at(rank(front.gate));
      path.insert(path.end(), fp.begin(), fp.end());
    } else {
      path.push_back(r.term[front.role]);
    }
    path.insert(path.end(), route_paths[i].begin(), route_paths[i].end());
    if (back.is_image) {
      const std::vector<Permutation>& fp = fan_by_target[back.role].at(rank(back.gate));
      path.insert(path.end(), fp.rbegin(), fp.rend());
    } else {
      path.push_back(r.term[back.role]);
    }
    push_path(web, r, pair_of(front.role, back.role), std::move(path));
  }

  web.spares = fixed_spares;
  web.spares.insert(web.spares.end(), w_spares.begin(), w_spares.end());
  sort_by_label(web.spares);
  return web;
}

std::optional<PairwiseWeb> case_three_copies(const CayleyGraph& g, const TerminalTriple& t,
                                             const RoleSet& r, const WebShape& shape,
                                             BuildLog* log) {
  std::vector<std::pair<std::vector<Permutation>, int>> variants;
  if (shape.spares == 0) {
    variants.push_back({{}, 0});
  } else {
    const Permutation bp = g.out_plus(t.b), bm = g.out_minus(t.b);
    variants.push_back({{bp, bm}, 0});
    variants.push_back({{bp}, 1});
    variants.push_back({{bm}, 1});
    variants.push_back({{}, 2});
  }
  for (const auto& [fixed, want_w] : variants) {
    std::string why;
    std::optional<PairwiseWeb> web = case_three_try(g, t, r, shape, fixed, want_w, &why);
    if (web.has_value()) return web;
    note(log, "three-sub-block variant rejected: " + why);
  }
  return std::nullopt;
}

PairwiseWeb build_rec(const CayleyGraph& g, const TerminalTriple& t, BuildLog* log, int level) {
  check_triple(g, t);
  const int n = g.n();
  if (log != nullptr && level > log->depth) log->depth = level;
  if (n == 3) {
    note(log, "base construction at dimension 3");
    return base_web_n3(g, t);
  }
  const RoleSet r = roles_of(g, t);
  const WebShape shape = web_shape(n);
  std::set<int> copies(r.copy.begin(), r.copy.end());
  std::optional<PairwiseWeb> web;
  try {
    if (copies.size() == 1) {
      if (n == 4) {
        note(log, "single shared sub-block at dimension 4: direct search");
        return fallback_web(g, t, shape, log);
      }
      note(log, "shared sub-block at dimension " + std::to_string(n) + ": descending");
      web = case_same_copy(g, t, r, log, level);
    } else if (copies.size() == 2) {
      note(log, "two sub-blocks at dimension " + std::to_string(n));
      web = case_two_copies(g, t, r, shape, log);
    } else {
      note(log, "three sub-blocks at dimension " + std::to_string(n));
      web = case_three_copies(g, t, r, shape, log);
    }
  } catch (const InfeasibleError& e) {
    note(log, std::string("structured construction infeasible: ") + e.what());
    web.reset();
  }
  if (web.has_value()) {
    const VerifyReport rep = verify_web(g, *web);
    if (rep.pass) return *web;
    note(log, "structured result failed validation: " + rep.first_violation);
  }
  return fallback_web(g, t, shape, log);
}

}  // namespace

WebShape web_shape(int n) {
  if (n < min_dimension) throw std::out_of_range("web_shape: dimension below the minimum");
  if (n % 2 == 1) {
    const int m = (n - 1) / 2;
    return {2 * m - 2, 2 * m - 2, 2 * m, 2};
  }
  const int m = (n - 2) / 2;
  return {2 * m, 2 * m, 2 * m, 0};
}

TerminalTriple assign_roles(const CayleyGraph& g, const std::vector<Permutation>& raw) {
  if (raw.size() != 3) throw std::invalid_argument("assign_roles: need exactly three vertices");
  for (const Permutation& v : raw)
    if (v.n() != g.n()) throw std::invalid_argument("assign_roles: dimension mismatch");
  if (raw[0] == raw[1] || raw[1] == raw[2] || raw[0] == raw[2])
    throw std::invalid_argument("assign_roles: vertices must be distinct");
  std::vector<Permutation> v = raw;
  sort_by_label(v);
  TerminalTriple t;
  int lone = -1;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    if (g.copy_of(v[static_cast<std::size_t>(j)]) == g.copy_of(v[static_cast<std::size_t>(k)]) &&
        g.copy_of(v[static_cast<std::size_t>(i)]) != g.copy_of(v[static_cast<std::size_t>(j)]))
      lone = i;
  }
  if (lone >= 0) {
    t.b = v[static_cast<std::size_t>(lone)];
    std::vector<Permutation> rest;
    for (int i = 0; i < 3; ++i)
      if (i != lone) rest.push_back(v[static_cast<std::size_t>(i)]);
    t.a = rest[0];
    t.c = rest[1];
    t.role_note = "b: lone sub-block vertex " + format(t.b) + "; a, c by ascending label";
  } else {
    t.a = v[0];
    t.b = v[1];
    t.c = v[2];
    t.role_note = "roles by ascending label";
  }
  return t;
}

PairwiseWeb build_web(const CayleyGraph& g, const TerminalTriple& t, BuildLog* log) {
  return build_rec(g, t, log, 0);
}

PairwiseWeb base_web_n3(const CayleyGraph& g, const TerminalTriple& t) {
  if (g.n() != 3) throw std::invalid_argument("base_web_n3: dimension must be 3");
  check_triple(g, t);
  const RoleSet r = roles_of(g, t);
  PairwiseWeb web;
  web.n = 3;
  web.terminals = t;
  std::vector<Permutation> cand;
  for (const Permutation& v : g.neighbors(t.b))
    if (v != t.a && v != t.c) cand.push_back(v);
  sort_by_label(cand);
  for (const Permutation& s : cand) {
    try {
      const CopyView view = CopyView::whole(g, {t.b, s});
      const DisjointPathSet dp = disjoint_pair_paths(view, t.a, t.c, 2);
      for (const std::vector<Permutation>& path : dp.paths) push_path(web, r, 2, path);
      web.spares = {s};
      return web;
    } catch (const InfeasibleError&) {
      continue;
    }
  }
  const CopyView view = CopyView::whole(g, {t.b});
  const DisjointPathSet dp = disjoint_pair_paths(view, t.a, t.c, 2);
  for (const std::vector<Permutation>& path : dp.paths) push_path(web, r, 2, path);
  return web;
}

PairwiseWeb base_three_copies_n4(const CayleyGraph& g, const TerminalTriple& t) {
  if (g.n() != 4) throw std::invalid_argument("base_three_copies_n4: dimension must be 4");
  check_triple(g, t);
  const RoleSet r = roles_of(g, t);
  if (r.copy[0] == r.copy[1] || r.copy[1] == r.copy[2] || r.copy[0] == r.copy[2])
    throw std::invalid_argument("base_three_copies_n4: terminals must sit in three sub-blocks");
  const WebShape shape = web_shape(4);
  std::string why;
  std::optional<PairwiseWeb> web = case_three_try(g, t, r, shape, {}, 0, &why);
  if (web.has_value()) {
    std::string check;
    if (matches_shape(g, *web, shape, &check)) return *web;
  }
  return fallback_web(g, t, shape, nullptr);
}

PairwiseWeb fallback_web(const CayleyGraph& g, const TerminalTriple& t, const WebShape& shape,
                         BuildLog* log) {
  check_triple(g, t);
  if (shape.ab < 0 || shape.bc < 0 || shape.ac < 0 || shape.spares < 0)
    throw std::invalid_argument("fallback_web: negative shape");
  note(log, "direct search engaged at dimension " + std::to_string(g.n()));
  if (log != nullptr) log->used_fallback = true;
  const RoleSet r = roles_of(g, t);

  std::vector<std::vector<Permutation>> spare_sets;
  if (shape.spares == 0) {
    spare_sets.push_back({});
  } else {
    std::vector<Permutation> cand;
    for (const Permutation& v : g.neighbors(t.b))
      if (v != t.a && v != t.c) cand.push_back(v);
    sort_by_label(cand);
    // ascending tuples of the requested size
    std::vector<int> idx(static_cast<std::size_t>(shape.spares));
    for (int i = 0; i < shape.spares; ++i) idx[static_cast<std::size_t>(i)] = i;
    const int m = static_cast<int>(cand.size());
    while (shape.spares <= m) {
      std::vector<Permutation> pick;
      for (int i : idx) pick.push_back(cand[static_cast<std::size_t>(i)]);
      spare_sets.push_back(std::move(pick));
      int pos = shape.spares - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - shape.spares + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < shape.spares; ++i)
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }

  std::vector<int> slot_pair;
  for (int p = 0; p < 3; ++p)
    for (int k = 0; k < shape_count(shape, p); ++k) slot_pair.push_back(p);

  long budget = 2'000'000;
  const std::size_t nv = static_cast<std::size_t>(g.vertex_count());
  for (std::size_t max_len = 2; max_len <= nv; ++max_len) {
    for (const std::vector<Permutation>& spares : spare_sets) {
      Packer packer{g, r, slot_pair, spares, budget, max_len};
      const bool found = packer.run();
      budget = packer.budget;
      if (!found) continue;
      PairwiseWeb web;
      web.n = g.n();
      web.terminals = t;
      for (std::size_t i = 0; i < slot_pair.size(); ++i)
        push_path(web, r, slot_pair[i], packer.placed[i]);
      web.spares = spares;
      std::string why;
      if (!matches_shape(g, web, shape, &why)) {
        note(log, "direct search candidate rejected: " + why);
        continue;
      }
      return web;
    }
  }
  throw SearchBudgetError("direct search exhausted every arrangement: dimension " +
                          std::to_string(g.n()) + ", terminals " + format(t.a) + "," + format(t.b) +
                          "," + format(t.c) + ", counts " + std::to_string(shape.ab) + "/" +
                          std::to_string(shape.bc) + "/" + std::to_string(shape.ac) + "/" +
                          std::to_string(shape.spares));
}

BorderSets select_border_sets(const CayleyGraph& g, const TerminalTriple& t, int need1, int need2,
                              int need3) {
  check_triple(g, t);
  const RoleSet r = roles_of(g, t);
  if (r.copy[0] == r.copy[1] || r.copy[1] == r.copy[2] || r.copy[0] == r.copy[2])
    throw std::invalid_argument("select_border_sets: terminals must sit in three sub-blocks");
  auto border = [&](int home_role, int target_role) {
    std::vector<Permutation> out;
    const Permutation& home = r.term[home_role];
    const Permutation& target = r.term[target_role];
    const Permutation tp = g.out_plus(target), tm = g.out_minus(target);
    for (const Permutation& v : copy_vertices(g, r.copy[home_role])) {
      if (v == home) continue;
      if (g.copy_of(g.out_plus(v)) != r.copy[target_role]) continue;
      if (v == tp || v == tm) continue;
      out.push_back(v);
    }
    return out;
  };
  BorderSets bs;
  bs.h1 = border(0, 1);
  bs.h2 = border(0, 2);
  bs.h3 = border(1, 2);
  VertexSet reserved;
  for (const Permutation& term : r.term) {
    reserved.add(term);
    reserved.add(g.out_plus(term));
    reserved.add(g.out_minus(term));
  }
  auto pick = [&](const std::vector<Permutation>& h, int need, std::vector<Permutation>& m,
                  std::vector<Permutation>& m_plus) {
    for (const Permutation& v : h) {
      if (static_cast<int>(m.size()) >= need) break;
      const Permutation im = g.out_plus(v);
      if (reserved.has(v) || reserved.has(im)) continue;
      reserved.add(v);
      reserved.add(im);
      m.push_back(v);
      m_plus.push_back(im);
    }
    if (static_cast<int>(m.size()) < need)
      throw std::invalid_argument("select_border_sets: eligible border vertices exhausted");
  };
  pick(bs.h1, need1, bs.m1, bs.m1_plus);
  pick(bs.h2, need2, bs.m2, bs.m2_plus);
  pick(bs.h3, need3, bs.m3, bs.m3_plus);
  return bs;
}

}  // namespace bsstar
