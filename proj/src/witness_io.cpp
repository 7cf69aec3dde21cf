#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsstar/permutation.hpp"
#include "bsstar/witness_io.hpp"

namespace bsstar {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json path_labels(const std::vector<Permutation>& path) {
  ordered_json out = ordered_json::array();
  for (const Permutation& v : path) out.push_back(format(v));
  return out;
}

ordered_json family_labels(const std::vector<std::vector<Permutation>>& family) {
  ordered_json out = ordered_json::array();
  for (const auto& path : family) out.push_back(path_labels(path));
  return out;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("witness_from_json: " + what);
}

const nlohmann::json& field(const nlohmann::json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

Permutation vertex(const nlohmann::json& node) {
  if (!node.is_string()) bad("vertex label is not a string");
  return parse(node.get<std::string>());
}

std::vector<Permutation> read_path(const nlohmann::json& node) {
  if (!node.is_array()) bad("path is not an array");
  std::vector<Permutation> path;
  for (const auto& v : node) path.push_back(vertex(v));
  return path;
}

std::vector<std::vector<Permutation>> read_family(const nlohmann::json& node) {
  if (!node.is_array()) bad("path family is not an array");
  std::vector<std::vector<Permutation>> family;
  for (const auto& p : node) family.push_back(read_path(p));
  return family;
}

}  // namespace

std::string witness_to_json(const CayleyGraph& g, const PairwiseWeb& web,
                            const TPathWitness& witness) {
  if (web.n != g.n() || witness.n != g.n()) {
    throw std::invalid_argument("witness_to_json: dimension mismatch");
  }
  const VerifyReport report = verify_witness(g, witness);
  ordered_json doc;
  doc["n"] = g.n();
  doc["terminals"] = ordered_json::array(
      {format(web.terminals.a), format(web.terminals.b), format(web.terminals.c)});
  ordered_json roles;
  roles["a"] = format(web.terminals.a);
  roles["b"] = format(web.terminals.b);
  roles["c"] = format(web.terminals.c);
  doc["roles"] = roles;
  ordered_json web_node;
  web_node["ab"] = family_labels(web.ab);
  web_node["bc"] = family_labels(web.bc);
  web_node["ac"] = family_labels(web.ac);
  web_node["spares"] = path_labels(web.spares);
  doc["web"] = web_node;
  doc["t_paths"] = family_labels(witness.t_paths);
  doc["formula"] = pi3_formula(g.n());
  doc["verified"] = report.pass;
  return doc.dump(2) + "\n";
}

WitnessDocument witness_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("document is not an object");

  WitnessDocument out;
  const auto& n_node = field(doc, "n");
  if (!n_node.is_number_integer()) bad("\"n\" is not an integer");
  out.n = n_node.get<int>();
  if (out.n < 3 || out.n > 9) bad("\"n\" outside the supported range");

  const auto& terminals = field(doc, "terminals");
  if (!terminals.is_array() || terminals.size() != 3) {
    bad("\"terminals\" is not a three-element array");
  }
  const auto& roles = field(doc, "roles");
  if (!roles.is_object()) bad("\"roles\" is not an object");
  TerminalTriple t;
  t.a = vertex(field(roles, "a"));
  t.b = vertex(field(roles, "b"));
  t.c = vertex(field(roles, "c"));

  // the terminal list and the role map must name the same three vertices
  std::vector<std::string> listed, mapped = {format(t.a), format(t.b), format(t.c)};
  for (const auto& v : terminals) {
    if (!v.is_string()) bad("terminal label is not a string");
    listed.push_back(v.get<std::string>());
  }
  std::sort(listed.begin(), listed.end());
  std::sort(mapped.begin(), mapped.end());
  if (listed != mapped) bad("\"terminals\" and \"roles\" disagree");

  const auto& web_node = field(doc, "web");
  if (!web_node.is_object()) bad("\"web\" is not an object");
  out.web.n = out.n;
  out.web.terminals = t;
  out.web.ab = read_family(field(web_node, "ab"));
  out.web.bc = read_family(field(web_node, "bc"));
  out.web.ac = read_family(field(web_node, "ac"));
  out.web.spares = read_path(field(web_node, "spares"));

  out.witness.n = out.n;
  out.witness.terminals = t;
  out.witness.t_paths = read_family(field(doc, "t_paths"));

  const auto& formula = field(doc, "formula");
  if (!formula.is_number_integer()) bad("\"formula\" is not an integer");
  out.formula = formula.get<int>();
  const auto& verified = field(doc, "verified");
  if (!verified.is_boolean()) bad("\"verified\" is not a boolean");
  out.verified = verified.get<bool>();

  // Every vertex label must share the document's dimension.
  for (const Permutation& v : {t.a, t.b, t.c}) {
    if (v.n() != out.n) bad("terminal dimension differs from \"n\"");
  }
  for (const auto* family : {&out.web.ab, &out.web.bc, &out.web.ac, &out.witness.t_paths}) {
    for (const auto& path : *family) {
      for (const Permutation& v : path) {
        if (v.n() != out.n) bad("path vertex dimension differs from \"n\"");
      }
    }
  }
  for (const Permutation& v : out.web.spares) {
    if (v.n() != out.n) bad("spare dimension differs from \"n\"");
  }
  return out;
}

VerifyReport reverify(const WitnessDocument& doc) {
  const CayleyGraph g(doc.n);
  return verify_witness(g, doc.witness);
}

}  // namespace bsstar
