#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/menger.hpp"
#include "bsstar/permutation.hpp"

using namespace bsstar;

namespace {

bool adjacent(const CayleyGraph& g, const Permutation& u, const Permutation& v) {
  for (const Permutation& w : g.neighbors(u))
    if (w == v) return true;
  return false;
}

// paths are vertex sequences; consecutive entries must be edges of the view
void check_walkable(const CopyView& view, const std::vector<Permutation>& path) {
  for (const Permutation& v : path) CHECK(view.contains(v));
  for (std::size_t i = 1; i < path.size(); ++i)
    CHECK(adjacent(view.graph(), path[i - 1], path[i]));
  std::set<std::string> distinct;
  for (const Permutation& v : path) distinct.insert(format(v));
  CHECK(distinct.size() == path.size());
}

void check_fully_disjoint(const std::vector<std::vector<Permutation>>& paths) {
  std::set<std::string> used;
  for (const auto& p : paths)
    for (const Permutation& v : p) {
      CHECK(used.count(format(v)) == 0);
      used.insert(format(v));
    }
}

}  // namespace

TEST_CASE("set-to-set paths: direct edge plus shared endpoint") {
  const CayleyGraph g(3);
  const CopyView whole = CopyView::whole(g);
  const DisjointPathSet ps = disjoint_set_paths(
      whole, {parse("123"), parse("213")}, {parse("213"), parse("321")}, 2);
  REQUIRE(ps.paths.size() == 2);
  CHECK(ps.paths[0].size() == 2);
  CHECK(format(ps.paths[0][0]) == "123");
  CHECK(format(ps.paths[0][1]) == "321");
  CHECK(ps.paths[1].size() == 1);  // shared endpoint rides as a single vertex
  CHECK(format(ps.paths[1][0]) == "213");
}

TEST_CASE("set-to-set paths avoid endpoint sets internally") {
  const CayleyGraph g(4);
  const CopyView whole = CopyView::whole(g);
  std::vector<Permutation> from = {parse("2341"), parse("3241")};
  std::vector<Permutation> to = {parse("1234"), parse("2134")};
  const DisjointPathSet ps = disjoint_set_paths(whole, from, to, 2);
  REQUIRE(ps.paths.size() == 2);
  check_fully_disjoint(ps.paths);
  std::set<std::string> ends;
  for (const auto& p : ps.paths) {
    check_walkable(whole, p);
    CHECK(std::count_if(from.begin(), from.end(),
                        [&](const Permutation& x) { return x == p.front(); }) == 1);
    CHECK(std::count_if(to.begin(), to.end(),
                        [&](const Permutation& y) { return y == p.back(); }) == 1);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      for (const Permutation& x : from) CHECK(p[i] != x);
      for (const Permutation& y : to) CHECK(p[i] != y);
    }
    ends.insert(format(p.back()));
  }
  CHECK(ends.size() == 2);
}

TEST_CASE("set-to-set paths: infeasible across a two-vertex bottleneck") {
  const CayleyGraph g(4);
  // only 3421 and 4321 still cross from sub-block 1 to sub-block 2 after the
  // two other crossing vertices are removed
  const CopyView v = induced(g, {1, 2}, {parse("2341"), parse("2431")});
  const std::vector<Permutation> from = {parse("3241"), parse("4231"), parse("3421")};
  const std::vector<Permutation> to = {parse("1342"), parse("1432"), parse("3142")};
  CHECK(disjoint_set_paths(v, from, to, 2).paths.size() == 2);
  try {
    disjoint_set_paths(v, from, to, 3);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.achieved() == 2);
    CHECK(e.cut().size() == 2);
    for (const Permutation& c : e.cut()) CHECK(v.contains(c));
  }
}

TEST_CASE("fan: every target reached, paths share only the center") {
  const CayleyGraph g(4);
  const CopyView whole = CopyView::whole(g);
  const Permutation center = parse("1234");
  const std::vector<Permutation> targets = {parse("2143"), parse("2314"), parse("3124"),
                                            parse("4213"), parse("1342")};
  const DisjointPathSet ps = fan(whole, center, targets);
  REQUIRE(ps.paths.size() == targets.size());
  std::set<std::string> reached;
  std::set<std::string> internals;
  for (const auto& p : ps.paths) {
    REQUIRE(p.size() >= 2);
    CHECK(p.front() == center);
    check_walkable(whole, p);
    reached.insert(format(p.back()));
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      CHECK(internals.count(format(p[i])) == 0);
      internals.insert(format(p[i]));
      for (const Permutation& t : targets) CHECK(p[i] != t);
    }
    CHECK(internals.count(format(p.back())) == 0);
    internals.insert(format(p.back()));
  }
  CHECK(reached.size() == targets.size());
  for (const Permutation& t : targets) CHECK(reached.count(format(t)) == 1);
}

TEST_CASE("fan inside one sub-block stalls at the center's degree") {
  const CayleyGraph g(4);
  const CopyView block = induced(g, {4});
  const Permutation center = parse("1234");
  const std::vector<Permutation> hood = block.neighbors(center);
  REQUIRE(hood.size() == 3);
  std::vector<Permutation> targets = hood;
  targets.push_back(parse("2314"));  // in the sub-block but not adjacent to the center
  REQUIRE(block.contains(targets.back()));
  try {
    fan(block, center, targets);
    FAIL("expected infeasibility");
  } catch (const InfeasibleError& e) {
    CHECK(e.achieved() == 3);
    std::set<std::string> cut_labels, hood_labels;
    for (const Permutation& c : e.cut()) cut_labels.insert(format(c));
    for (const Permutation& h : hood) hood_labels.insert(format(h));
    CHECK(cut_labels == hood_labels);
  }
}

TEST_CASE("fan determinism") {
  const CayleyGraph g(5);
  const CopyView whole = CopyView::whole(g);
  const Permutation center = parse("21345");
  const std::vector<Permutation> targets = {parse("12345"), parse("52341"), parse("13245"),
                                            parse("21354"), parse("32145"), parse("45123"),
                                            parse("21435")};
  const DisjointPathSet a = fan(whole, center, targets);
  const DisjointPathSet b = fan(whole, center, targets);
  REQUIRE(a.paths.size() == b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i) {
    REQUIRE(a.paths[i].size() == b.paths[i].size());
    for (std::size_t j = 0; j < a.paths[i].size(); ++j) CHECK(a.paths[i][j] == b.paths[i][j]);
  }
}

TEST_CASE("local connectivity in the 3-dimensional graph") {
  const CayleyGraph g(3);
  const CopyView whole = CopyView::whole(g);
  // adjacent pair: the direct edge plus two length-3 detours
  CHECK(local_connectivity(whole, parse("123"), parse("321")) == 3);
  // same parity class: exactly the three shared neighbours
  CHECK(local_connectivity(whole, parse("123"), parse("231")) == 3);
  CHECK_THROWS_AS(local_connectivity(whole, parse("123"), parse("123")),
                  std::invalid_argument);
}

TEST_CASE("whole-graph connectivity matches regularity") {
  CHECK(kappa(CopyView::whole(CayleyGraph(3))) == 3);
  CHECK(kappa(CopyView::whole(CayleyGraph(4))) == 5);
}

TEST_CASE("connectivity of sub-block unions") {
  const CayleyGraph g(4);
  CHECK(kappa(induced(g, {1})) == 3);      // one sub-block is the 3-dimensional graph
  CHECK(kappa(induced(g, {1, 2})) == 3);   // 2n-5 for a partial union
  CHECK(kappa(induced(g, {1, 2, 3})) == 4);  // 2n-4 once only one sub-block is missing

  // removing all four crossing vertices disconnects a two-block union
  std::vector<Permutation> crossings;
  for (const auto& [u, v] : g.cross_edges(1, 2)) {
    (void)v;
    crossings.push_back(u);
  }
  REQUIRE(crossings.size() == 4);
  CHECK(kappa(induced(g, {1, 2}, crossings)) == 0);
}

TEST_CASE("five-dimensional sanity: fan across sub-blocks") {
  const CayleyGraph g(5);
  // complement of sub-block 5: still highly connected, fans of width 6 exist
  const CopyView rest = induced(g, {1, 2, 3, 4});
  const Permutation center = parse("23451");
  std::vector<Permutation> targets;
  for (std::uint32_t r = 0; targets.size() < 6 && r < g.vertex_count(); ++r) {
    const Permutation p = unrank(5, r);
    if (!rest.contains(p) || p == center) continue;
    bool is_neighbor = false;
    for (const Permutation& w : g.neighbors(center))
      if (w == p) is_neighbor = true;
    if (!is_neighbor) targets.push_back(p);
  }
  const DisjointPathSet ps = fan(rest, center, targets);
  CHECK(ps.paths.size() == 6);
  check_fully_disjoint([&] {
    std::vector<std::vector<Permutation>> tails;
    for (const auto& p : ps.paths) tails.emplace_back(p.begin() + 1, p.end());
    return tails;
  }());
}
