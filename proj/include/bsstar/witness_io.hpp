#pragma once

#include <string>

#include "bsstar/tpath.hpp"
#include "bsstar/webbuilder.hpp"

namespace bsstar {

// One parsed certificate document.  A file is self-contained: everything
// needed to re-check it is the dimension plus the label strings inside.
struct WitnessDocument {
  int n = 0;
  PairwiseWeb web;        // terminals carried as web.terminals
  TPathWitness witness;   // the t-path family under the same terminals
  int formula = 0;        // the target family size stored in the file
  bool verified = false;  // verifier outcome recorded at write time
};

// Serializes web + witness with every vertex as its label string, recording
// the formula value for the dimension and the verifier's verdict on the
// t-path family.  Field order is fixed, output ends with a newline, and
// identical inputs yield byte-identical text.
std::string witness_to_json(const CayleyGraph& g, const PairwiseWeb& web,
                            const TPathWitness& witness);

// Parses text produced by witness_to_json (or written by hand to the same
// layout).  Validates document structure only — semantic checks are
// reverify's job.  Throws std::invalid_argument on malformed documents.
WitnessDocument witness_from_json(const std::string& text);

// Re-checks the t-path family from scratch: rebuilds the graph for doc.n and
// runs the independent verifier, ignoring the stored "verified" flag.
VerifyReport reverify(const WitnessDocument& doc);

}  // namespace bsstar
