#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"

using namespace bsstar;

namespace {

std::set<std::string> labels(const std::vector<Permutation>& vs) {
  std::set<std::string> out;
  for (const Permutation& v : vs) out.insert(format(v));
  return out;
}

}  // namespace

TEST_CASE("generator list: fixed order, no duplicates") {
  const CayleyGraph g3(3);
  REQUIRE(g3.degree() == 3);
  CHECK(g3.generators()[0].i == 1);
  CHECK(g3.generators()[0].j == 2);
  CHECK(g3.generators()[1].i == 1);
  CHECK(g3.generators()[1].j == 3);
  CHECK(g3.generators()[2].i == 2);
  CHECK(g3.generators()[2].j == 3);

  for (int n = 3; n <= 6; ++n) {
    const CayleyGraph g(n);
    CHECK(g.degree() == 2 * n - 3);
    std::set<std::pair<int, int>> seen;
    for (const Generator& gen : g.generators()) seen.insert({gen.i, gen.j});
    CHECK(static_cast<int>(seen.size()) == 2 * n - 3);
  }
  CHECK_THROWS_AS(CayleyGraph(2), std::out_of_range);
  CHECK_THROWS_AS(CayleyGraph(10), std::out_of_range);
}

TEST_CASE("neighbors in generator order") {
  const CayleyGraph g(3);
  const std::vector<Permutation> ns = g.neighbors(parse("123"));
  REQUIRE(ns.size() == 3);
  CHECK(format(ns[0]) == "213");
  CHECK(format(ns[1]) == "321");
  CHECK(format(ns[2]) == "132");
}

TEST_CASE("every vertex has 2n-3 distinct neighbors of opposite parity") {
  for (int n = 3; n <= 5; ++n) {
    const CayleyGraph g(n);
    for (std::uint32_t r = 0; r < g.vertex_count(); ++r) {
      const Permutation u = unrank(n, r);
      const std::vector<Permutation> ns = g.neighbors(u);
      CHECK(labels(ns).size() == static_cast<std::size_t>(2 * n - 3));
      for (const Permutation& v : ns) CHECK(parity_odd(v) != parity_odd(u));
    }
  }
}

TEST_CASE("three-dimensional graph is complete bipartite on parity classes") {
  const CayleyGraph g(3);
  for (std::uint32_t r = 0; r < 6; ++r) {
    const Permutation u = unrank(3, r);
    const std::set<std::string> ns = labels(g.neighbors(u));
    // adjacent to every vertex of the other parity class
    for (std::uint32_t s = 0; s < 6; ++s) {
      const Permutation v = unrank(3, s);
      if (parity_odd(v) != parity_odd(u)) CHECK(ns.count(format(v)) == 1);
    }
  }
}

TEST_CASE("copy index is the last symbol") {
  const CayleyGraph g(4);
  CHECK(g.copy_of(parse("2413")) == 3);
  CHECK(g.copy_of(parse("1234")) == 4);
}

TEST_CASE("outgoing moves match the published example") {
  const CayleyGraph g(4);
  CHECK(format(g.out_minus(parse("2413"))) == "2431");
  CHECK(format(g.out_plus(parse("1432"))) == "2431");
}

TEST_CASE("outgoing moves leave the copy and land in two different copies") {
  for (int n : {3, 4, 5}) {
    const CayleyGraph g(n);
    for (std::uint32_t r = 0; r < g.vertex_count(); ++r) {
      const Permutation u = unrank(n, r);
      const Permutation p = g.out_plus(u);
      const Permutation m = g.out_minus(u);
      CHECK(g.copy_of(p) == u.first_symbol());
      CHECK(g.copy_of(m) == u.symbol(n - 1));
      CHECK(g.copy_of(p) != g.copy_of(u));
      CHECK(g.copy_of(m) != g.copy_of(u));
      CHECK(g.copy_of(p) != g.copy_of(m));
    }
  }
}

TEST_CASE("same-copy vertices have disjoint outgoing pairs") {
  const CayleyGraph g(4);
  for (int c = 1; c <= 4; ++c) {
    std::vector<Permutation> members;
    for (std::uint32_t r = 0; r < g.vertex_count(); ++r) {
      const Permutation u = unrank(4, r);
      if (g.copy_of(u) == c) members.push_back(u);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const std::set<std::string> a =
            labels({g.out_plus(members[i]), g.out_minus(members[i])});
        const std::set<std::string> b =
            labels({g.out_plus(members[j]), g.out_minus(members[j])});
        for (const std::string& s : a) CHECK(b.count(s) == 0);
      }
  }
}

TEST_CASE("cross edge counts") {
  const CayleyGraph g4(4);
  const auto e12 = g4.cross_edges(1, 2);
  CHECK(e12.size() == 4);  // 2*(4-2)!
  for (const auto& [u, v] : e12) {
    CHECK(g4.copy_of(u) == 1);
    CHECK(g4.copy_of(v) == 2);
  }
  // endpoints ascend by rank
  for (std::size_t i = 1; i < e12.size(); ++i) CHECK(rank(e12[i - 1].first) < rank(e12[i].first));

  const CayleyGraph g5(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (i != j) CHECK(g5.cross_edges(i, j).size() == 12);  // 2*3!

  CHECK_THROWS_AS(g4.cross_edges(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(CayleyGraph(3).cross_edges(1, 2), std::invalid_argument);
}

TEST_CASE("common neighbors") {
  const CayleyGraph g3(3);
  // adjacent pairs share nothing (bipartite, so shared neighbours would close a triangle)
  CHECK(g3.common_neighbors({parse("123"), parse("213")}).empty());
  // some triple attains 3: in the 3-dimensional graph any parity class
  // is fully adjacent to the other, so the odd triple works
  std::vector<Permutation> odd_side;
  for (std::uint32_t r = 0; r < 6; ++r) {
    const Permutation u = unrank(3, r);
    if (parity_odd(u)) odd_side.push_back(u);
  }
  REQUIRE(odd_side.size() == 3);
  CHECK(g3.common_neighbors(odd_side).size() == 3);

  // pairs never exceed 3 shared neighbours (exhaustive at dimension 4)
  const CayleyGraph g4(4);
  std::size_t best = 0;
  for (std::uint32_t r = 0; r < g4.vertex_count(); ++r)
    for (std::uint32_t s = r + 1; s < g4.vertex_count(); ++s) {
      const std::size_t c =
          g4.common_neighbors({unrank(4, r), unrank(4, s)}).size();
      CHECK(c <= 3);
      best = std::max(best, c);
    }
  CHECK(best == 3);

  CHECK_THROWS_AS(g3.common_neighbors({parse("123")}), std::invalid_argument);
  CHECK_THROWS_AS(g3.common_neighbors({parse("123"), parse("123")}), std::invalid_argument);
  CHECK_THROWS_AS(
      g4.common_neighbors({parse("1234"), parse("2134"), parse("1243"), parse("1324")}),
      std::invalid_argument);
}

TEST_CASE("copy views filter membership and adjacency") {
  const CayleyGraph g4(4);
  const CopyView one = induced(g4, {2});
  CHECK(one.vertex_count() == 6);
  one.for_each_vertex([&](const Permutation& u) {
    CHECK(g4.copy_of(u) == 2);
    CHECK(one.neighbors(u).size() == 3);  // in-copy degree 2(n-1)-3
  });

  const CopyView all = CopyView::whole(g4);
  CHECK(all.vertex_count() == 24);
  CHECK(all.neighbors(parse("1234")).size() == 5);

  const CayleyGraph g5(5);
  const CopyView pair = induced(g5, {1, 2});
  CHECK(pair.vertex_count() == 48);
  int min_deg = 100;
  pair.for_each_vertex([&](const Permutation& u) {
    min_deg = std::min(min_deg, static_cast<int>(pair.neighbors(u).size()));
  });
  CHECK(min_deg == 5);  // 2n-5 in-copy edges always survive

  CHECK_THROWS_AS(induced(g4, {}), std::invalid_argument);
  CHECK_THROWS_AS(induced(g4, {5}), std::out_of_range);
}

TEST_CASE("copy view removals") {
  const CayleyGraph g4(4);
  const Permutation gone = parse("1234");
  const CopyView v = CopyView::whole(g4, {gone});
  CHECK_FALSE(v.contains(gone));
  CHECK(v.vertex_count() == 23);
  for (const Permutation& u : g4.neighbors(gone)) {
    CHECK(v.contains(u));
    CHECK(v.neighbors(u).size() == 4);
  }
  const CopyView w = v.with_removed({parse("2134")});
  CHECK(w.vertex_count() == 22);
  // iteration order is ascending rank
  std::uint32_t prev = 0;
  bool first = true;
  w.for_each_vertex([&](const Permutation& u) {
    const std::uint32_t r = rank(u);
    if (!first) CHECK(prev < r);
    prev = r;
    first = false;
  });
}
