#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"
#include "bsstar/tpath.hpp"
#include "bsstar/webbuilder.hpp"

using namespace bsstar;

namespace {

bool adjacent(const CayleyGraph& g, const Permutation& u, const Permutation& v) {
  for (const Permutation& w : g.neighbors(u))
    if (w == v) return true;
  return false;
}

std::vector<Permutation> random_triple(const CayleyGraph& g, std::mt19937_64& rng) {
  const std::uint32_t nv = g.vertex_count();
  while (true) {
    std::uint32_t i = static_cast<std::uint32_t>(rng() % nv);
    std::uint32_t j = static_cast<std::uint32_t>(rng() % nv);
    std::uint32_t k = static_cast<std::uint32_t>(rng() % nv);
    if (i == j || j == k || i == k) continue;
    return {unrank(g.n(), i), unrank(g.n(), j), unrank(g.n(), k)};
  }
}

TPathWitness pipeline(const CayleyGraph& g, const std::vector<Permutation>& raw) {
  const TerminalTriple t = assign_roles(g, raw);
  const PairwiseWeb web = build_web(g, t);
  return assemble(g, web);
}

// independent validity check of an oracle family: every member visits all
// three terminals, is simple and walkable, and pairwise sharing is exactly
// the terminal set with no repeated edge
void check_family(const CayleyGraph& g, const std::vector<Permutation>& term,
                  const std::vector<std::vector<Permutation>>& family) {
  std::set<std::uint32_t> terminal_ranks;
  for (const Permutation& t : term) terminal_ranks.insert(rank(t));
  std::vector<std::set<std::uint32_t>> vsets;
  std::vector<std::set<std::uint64_t>> esets;
  for (const auto& path : family) {
    std::set<std::uint32_t> vs;
    std::set<std::uint64_t> es;
    for (std::size_t i = 0; i < path.size(); ++i) {
      REQUIRE(vs.insert(rank(path[i])).second);
      if (i + 1 < path.size()) {
        REQUIRE(adjacent(g, path[i], path[i + 1]));
        const std::uint64_t x = rank(path[i]), y = rank(path[i + 1]);
        es.insert((std::min(x, y) << 32) | std::max(x, y));
      }
    }
    for (std::uint32_t tr : terminal_ranks) REQUIRE(vs.count(tr) == 1);
    vsets.push_back(std::move(vs));
    esets.push_back(std::move(es));
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      for (std::uint32_t v : vsets[i])
        if (vsets[j].count(v) != 0) REQUIRE(terminal_ranks.count(v) == 1);
      for (std::uint64_t e : esets[i]) REQUIRE(esets[j].count(e) == 0);
    }
}

}  // namespace

TEST_CASE("pairing arithmetic across dimensions") {
  for (int n = 4; n <= 12; ++n) {
    const WebShape s = web_shape(n);
    const int x = (s.ab + s.bc - s.ac) / 2;
    const int y = (s.ab + s.ac - s.bc) / 2;
    const int z = (s.bc + s.ac - s.ab) / 2;
    CAPTURE(n);
    CHECK(x >= 0);
    CHECK(y >= 0);
    CHECK(z >= 0);
    CHECK(x + y == s.ab);
    CHECK(x + z == s.bc);
    CHECK(y + z == s.ac);
    CHECK(x + y + z == pi3_formula(n));
  }
}

TEST_CASE("assemble pairs a dimension 4 web into three t-paths") {
  CayleyGraph g(4);
  const TerminalTriple t = assign_roles(g, {parse("1234"), parse("2341"), parse("3412")});
  const PairwiseWeb web = build_web(g, t);
  REQUIRE(verify_web(g, web).pass);
  const TPathWitness w = assemble(g, web);
  REQUIRE(w.t_paths.size() == 3);
  REQUIRE(w.provenance.size() == 3);
  CHECK(w.provenance[0] == "ab+bc");
  CHECK(w.provenance[1] == "ab+ac");
  CHECK(w.provenance[2] == "bc+ac");
  const VerifyReport rep = verify_witness(g, w);
  CHECK(rep.pass);
  CHECK(rep.first_violation.empty());
}

TEST_CASE("assemble in dimension 3 finds one path directly") {
  CayleyGraph g(3);
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = i + 1; j < 6; ++j)
      for (std::uint32_t k = j + 1; k < 6; ++k) {
        const TPathWitness w = pipeline(g, {unrank(3, i), unrank(3, j), unrank(3, k)});
        REQUIRE(w.t_paths.size() == 1);
        CHECK(w.provenance == std::vector<std::string>{"direct"});
        CHECK(verify_witness(g, w).pass);
      }
}

TEST_CASE("assemble rejects counts without a nonnegative pairing") {
  CayleyGraph g(4);
  const TerminalTriple t = assign_roles(g, {parse("1234"), parse("2341"), parse("3412")});
  PairwiseWeb web = build_web(g, t);
  web.ac.push_back(web.ac.back());  // 2/2/3 leaves an odd pairing system
  CHECK_THROWS_AS(assemble(g, web), std::invalid_argument);
}

TEST_CASE("end-to-end witnesses in dimensions 5 and 6") {
  for (int n = 5; n <= 6; ++n) {
    CayleyGraph g(n);
    std::mt19937_64 rng(1031u + static_cast<unsigned>(n));
    const int runs = 40;
    for (int s = 0; s < runs; ++s) {
      const TPathWitness w = pipeline(g, random_triple(g, rng));
      CAPTURE(n);
      CAPTURE(s);
      REQUIRE(w.t_paths.size() == static_cast<std::size_t>(pi3_formula(n)));
      REQUIRE(verify_witness(g, w).pass);
    }
  }
}

TEST_CASE("witness verifier rejects constructed violations") {
  CayleyGraph g(4);
  const TPathWitness good = pipeline(g, {parse("1234"), parse("2143"), parse("4321")});
  REQUIRE(verify_witness(g, good).pass);

  SUBCASE("duplicated path shares more than the terminals") {
    TPathWitness bad = good;
    bad.t_paths[1] = bad.t_paths[0];
    const VerifyReport rep = verify_witness(g, bad);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_violation == "vertex intersection exceeds T");
  }

  SUBCASE("non-edge step") {
    TPathWitness bad = good;
    // overwrite the second vertex with one not adjacent to the first
    const Permutation& head = bad.t_paths[0][0];
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
      const Permutation cand = unrank(4, i);
      if (cand == head || adjacent(g, head, cand)) continue;
      bad.t_paths[0][1] = cand;
      break;
    }
    const VerifyReport rep = verify_witness(g, bad);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_violation == "non-adjacent consecutive vertices");
  }

  SUBCASE("wrong path count") {
    TPathWitness bad = good;
    bad.t_paths.pop_back();
    bad.provenance.pop_back();
    const VerifyReport rep = verify_witness(g, bad);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_violation == "t-path count");
  }
}

TEST_CASE("degree and common-neighbor ceiling") {
  SUBCASE("exhaustive in dimensions 3 and 4") {
    for (int n = 3; n <= 4; ++n) {
      CayleyGraph g(n);
      const BoundReport rep = upper_bound(g, BoundMode::exhaustive);
      CAPTURE(n);
      CHECK(rep.r == 2 * n - 3);
      CHECK(rep.cmax == 3);
      CHECK(rep.bound == pi3_formula(n));
    }
  }
  SUBCASE("sampled in dimensions 5 to 8") {
    for (int n = 5; n <= 8; ++n) {
      CayleyGraph g(n);
      const BoundReport rep = upper_bound(g, BoundMode::sampled, 4242, 50);
      CAPTURE(n);
      CHECK(rep.cmax == 3);  // the rotated-prefix triple always attains 3
      CHECK(rep.bound == pi3_formula(n));
    }
  }
  SUBCASE("exhaustive beyond dimension 4 is refused") {
    CayleyGraph g(5);
    CHECK_THROWS_AS(upper_bound(g, BoundMode::exhaustive), std::invalid_argument);
  }
}

TEST_CASE("oracle values across every dimension 3 triple") {
  CayleyGraph g(3);
  std::map<int, int> dist;
  int smallest = 1 << 20;
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = i + 1; j < 6; ++j)
      for (std::uint32_t k = j + 1; k < 6; ++k) {
        const std::vector<Permutation> t = {unrank(3, i), unrank(3, j), unrank(3, k)};
        const OracleResult r = brute_force_pi3(g, t);
        REQUIRE(r.exact);
        REQUIRE(static_cast<int>(r.family.size()) == r.best);
        check_family(g, t, r.family);
        dist[r.best]++;
        smallest = std::min(smallest, r.best);
      }
  // the two one-sided triples force a single path; every mixed triple fits two
  CHECK(dist == std::map<int, int>{{1, 2}, {2, 18}});
  CHECK(smallest == pi3_formula(3));
}

TEST_CASE("oracle on a triple with an adjacent pair") {
  CayleyGraph g(3);
  const std::vector<Permutation> t = {parse("123"), parse("213"), parse("231")};
  const OracleResult r = brute_force_pi3(g, t);
  CHECK(r.exact);
  CHECK(r.best == 2);
  check_family(g, t, r.family);
}

TEST_CASE("oracle matches the formula on sampled dimension 4 triples") {
  CayleyGraph g(4);
  std::mt19937_64 rng(20240821);
  for (int s = 0; s < 15; ++s) {
    const std::vector<Permutation> t = random_triple(g, rng);
    const OracleResult r = brute_force_pi3(g, t);
    CAPTURE(s);
    REQUIRE(r.exact);
    CHECK(r.best == pi3_formula(4));
    check_family(g, t, r.family);
  }
}

TEST_CASE("oracle guards") {
  SUBCASE("too many vertices") {
    CayleyGraph g(5);
    CHECK_THROWS_AS(brute_force_pi3(g, {parse("12345"), parse("21345"), parse("32145")}),
                    std::invalid_argument);
  }
  SUBCASE("exhausted budget is flagged inexact") {
    CayleyGraph g(4);
    const OracleResult r = brute_force_pi3(g, {unrank(4, 0), unrank(4, 7), unrank(4, 15)}, 40);
    CHECK_FALSE(r.exact);
    CHECK(r.best <= pi3_formula(4));
  }
  SUBCASE("degenerate terminals") {
    CayleyGraph g(4);
    CHECK_THROWS_AS(brute_force_pi3(g, {unrank(4, 0), unrank(4, 0), unrank(4, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_pi3(g, {unrank(4, 0), unrank(4, 1)}), std::invalid_argument);
  }
}

TEST_CASE("structural audit passes through dimension 5") {
  for (int n = 3; n <= 5; ++n) {
    CayleyGraph g(n);
    const AuditReport rep = structural_audit(g);
    CAPTURE(n);
    CHECK(rep.pass);
    REQUIRE(rep.clauses.size() == 6);
    for (const AuditClause& c : rep.clauses) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
  }
  CayleyGraph g6(6);
  CHECK_THROWS_AS(structural_audit(g6), std::invalid_argument);
}

TEST_CASE("assembled witnesses are deterministic") {
  CayleyGraph g(5);
  const std::vector<Permutation> raw = {parse("21453"), parse("35142"), parse("45231")};
  const TPathWitness w1 = pipeline(g, raw);
  const TPathWitness w2 = pipeline(g, raw);
  REQUIRE(w1.t_paths.size() == w2.t_paths.size());
  for (std::size_t i = 0; i < w1.t_paths.size(); ++i) {
    REQUIRE(w1.t_paths[i].size() == w2.t_paths[i].size());
    for (std::size_t j = 0; j < w1.t_paths[i].size(); ++j)
      CHECK(w1.t_paths[i][j] == w2.t_paths[i][j]);
  }
  CHECK(w1.provenance == w2.provenance);
}
