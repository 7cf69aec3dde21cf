#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"

namespace bsstar {

// Terminal triple with fixed roles: b is the vertex that receives the reduced
// path counts and the spare neighbors when the dimension is odd.
struct TerminalTriple {
  Permutation a, b, c;
  std::string role_note;  // which original input got which role, for witnesses
};

// The pairwise-path structure: internally disjoint (a,b)-, (b,c)-, (a,c)-path
// families whose interiors avoid T, plus (odd dimension) two spare neighbors
// of b that appear on no path.  Paths are stored endpoint-to-endpoint in the
// direction the family name reads (ab: a first, bc: b first, ac: a first).
struct PairwiseWeb {
  int n = 0;
  TerminalTriple terminals;
  std::vector<std::vector<Permutation>> ab, bc, ac;
  std::vector<Permutation> spares;
};

// Eligible border vertices between the three home sub-blocks and the chosen
// hinge subsets (three-sub-block case).
struct BorderSets {
  std::vector<Permutation> h1, h2, h3;
  std::vector<Permutation> m1, m2, m3;
  std::vector<Permutation> m1_plus, m2_plus, m3_plus;
};

// Trace of one construction run: which case fired at each level, whether the
// direct search had to take over.
struct BuildLog {
  int depth = 0;
  bool used_fallback = false;
  std::vector<std::string> events;
};

// Required path counts per family for the target dimension, and spare count.
struct WebShape {
  int ab, bc, ac, spares;
};
WebShape web_shape(int n);

// Deterministic role assignment: with exactly two vertices in one sub-block,
// the lone vertex becomes b; otherwise roles go by ascending rank.
TerminalTriple assign_roles(const CayleyGraph& g, const std::vector<Permutation>& raw);

// The full recursive construction.  Total for every valid triple; switches to
// fallback_web internally when a degenerate configuration defeats the
// structured cases (recorded in the log).
PairwiseWeb build_web(const CayleyGraph& g, const TerminalTriple& t, BuildLog* log = nullptr);

// Base structure in dimension 3: two (a,c)-paths avoiding b plus every spare
// neighbor of b that exists (at most one does; see the impossibility note in
// the tests).
PairwiseWeb base_web_n3(const CayleyGraph& g, const TerminalTriple& t);

// Dimension-4 structure for terminals in three distinct sub-blocks.
PairwiseWeb base_three_copies_n4(const CayleyGraph& g, const TerminalTriple& t);

// Direct bounded search realizing the given shape, used when the structured
// construction declines an input.  Throws SearchBudgetError on exhaustion.
PairwiseWeb fallback_web(const CayleyGraph& g, const TerminalTriple& t, const WebShape& shape,
                         BuildLog* log = nullptr);

class SearchBudgetError : public std::runtime_error {
public:
  explicit SearchBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Border-vertex selection for the three-sub-block case: H_i by definition
// scan, M_i the lexicographically smallest eligible members.
BorderSets select_border_sets(const CayleyGraph& g, const TerminalTriple& t, int need1, int need2,
                              int need3);

}  // namespace bsstar
