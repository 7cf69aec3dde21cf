#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"
#include "bsstar/tpath.hpp"
#include "bsstar/webbuilder.hpp"
#include "bsstar/witness_io.hpp"

using namespace bsstar;

namespace {

struct built {
  PairwiseWeb web;
  TPathWitness witness;
};

built run_pipeline(const CayleyGraph& g, const std::vector<std::string>& labels) {
  std::vector<Permutation> raw;
  for (const std::string& s : labels) raw.push_back(parse(s));
  const TerminalTriple t = assign_roles(g, raw);
  built out;
  out.web = build_web(g, t);
  out.witness = assemble(g, out.web);
  return out;
}

// First position of needle in haystack; npos when absent.
std::size_t pos_of(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle);
}

}  // namespace

TEST_CASE("serialized witness carries every field in fixed order") {
  const CayleyGraph g(4);
  const built b = run_pipeline(g, {"1234", "2341", "3412"});
  const std::string text = witness_to_json(g, b.web, b.witness);

  // exact top-level field order
  const char* keys[] = {"\"n\"",       "\"terminals\"", "\"roles\"",   "\"web\"",
                        "\"t_paths\"", "\"formula\"",   "\"verified\""};
  std::size_t prev = 0;
  for (const char* key : keys) {
    const std::size_t at = pos_of(text, key);
    REQUIRE(at != std::string::npos);
    CHECK(at > prev);
    prev = at;
  }
  // web sub-order
  const std::size_t ab = pos_of(text, "\"ab\"");
  const std::size_t bc = pos_of(text, "\"bc\"");
  const std::size_t ac = pos_of(text, "\"ac\"");
  const std::size_t sp = pos_of(text, "\"spares\"");
  CHECK(ab < bc);
  CHECK(bc < ac);
  CHECK(ac < sp);
  CHECK(text.back() == '\n');
  CHECK(pos_of(text, "\"verified\": true") != std::string::npos);
}

TEST_CASE("witness documents round-trip exactly") {
  for (int n : {4, 5}) {
    const CayleyGraph g(n);
    const std::vector<std::string> labels =
        n == 4 ? std::vector<std::string>{"1234", "2341", "3412"}
               : std::vector<std::string>{"21453", "35142", "45231"};
    const built b = run_pipeline(g, labels);
    const std::string text = witness_to_json(g, b.web, b.witness);

    const WitnessDocument doc = witness_from_json(text);
    CHECK(doc.n == n);
    CHECK(doc.formula == pi3_formula(n));
    CHECK(doc.verified);
    CHECK(doc.web.terminals.a == b.web.terminals.a);
    CHECK(doc.web.terminals.b == b.web.terminals.b);
    CHECK(doc.web.terminals.c == b.web.terminals.c);
    CHECK(doc.web.ab == b.web.ab);
    CHECK(doc.web.bc == b.web.bc);
    CHECK(doc.web.ac == b.web.ac);
    CHECK(doc.web.spares == b.web.spares);
    CHECK(doc.witness.t_paths == b.witness.t_paths);

    // serializing the parsed document reproduces the bytes
    const std::string again = witness_to_json(CayleyGraph(doc.n), doc.web, doc.witness);
    CHECK(again == text);
  }
}

TEST_CASE("a parsed file plus its dimension is enough to re-verify") {
  const CayleyGraph g(5);
  const built b = run_pipeline(g, {"12345", "21345", "13245"});
  const std::string text = witness_to_json(g, b.web, b.witness);

  const WitnessDocument doc = witness_from_json(text);
  const VerifyReport rep = reverify(doc);
  CHECK(rep.pass);
  CHECK(doc.witness.t_paths.size() == 4);
}

TEST_CASE("tampering flips re-verification, not parsing") {
  const CayleyGraph g(4);
  const built b = run_pipeline(g, {"1234", "2143", "4321"});
  std::string text = witness_to_json(g, b.web, b.witness);

  // swap two symbols inside the first t-path's second vertex: still a valid
  // document, no longer a valid family
  const std::size_t at = text.find("\"t_paths\"");
  REQUIRE(at != std::string::npos);
  const std::size_t open = text.find('"', text.find('[', at));
  REQUIRE(open != std::string::npos);
  const std::size_t second = text.find('"', text.find('"', open + 1) + 1);
  std::swap(text[second + 1], text[second + 2]);

  const WitnessDocument doc = witness_from_json(text);
  CHECK_FALSE(reverify(doc).pass);
}

TEST_CASE("malformed documents are rejected with a reason") {
  CHECK_THROWS_AS(witness_from_json("not json at all"), std::invalid_argument);
  CHECK_THROWS_AS(witness_from_json("[1,2,3]"), std::invalid_argument);
  CHECK_THROWS_AS(witness_from_json("{\"n\": 3}"), std::invalid_argument);
  CHECK_THROWS_AS(witness_from_json("{\"n\": 12}"), std::invalid_argument);

  const CayleyGraph g(4);
  const built b = run_pipeline(g, {"1234", "2341", "3412"});
  std::string text = witness_to_json(g, b.web, b.witness);

  // vertex label with a repeated symbol
  std::string broken = text;
  const std::size_t at = broken.find("\"1234\"");
  REQUIRE(at != std::string::npos);
  broken.replace(at, 6, "\"1134\"");
  CHECK_THROWS_AS(witness_from_json(broken), std::invalid_argument);

  // wrong-dimension vertex label
  broken = text;
  const std::size_t at5 = broken.find("\"1234\"");
  broken.replace(at5, 6, "\"12345\"");
  CHECK_THROWS_AS(witness_from_json(broken), std::invalid_argument);
}

TEST_CASE("dimension three documents serialize the single direct path") {
  const CayleyGraph g(3);
  const built b = run_pipeline(g, {"123", "213", "231"});
  const std::string text = witness_to_json(g, b.web, b.witness);
  const WitnessDocument doc = witness_from_json(text);
  CHECK(doc.witness.t_paths.size() == 1);
  CHECK(doc.formula == 1);
  CHECK(doc.verified);
  CHECK(reverify(doc).pass);
}
