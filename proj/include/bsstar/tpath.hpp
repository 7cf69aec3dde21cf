#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"
#include "bsstar/webbuilder.hpp"

namespace bsstar {

// One certified family of internally disjoint paths that each contain all
// three terminals: pairwise vertex intersection is exactly the terminal set
// and no edge is shared.  provenance[i] records which two pairwise families
// were concatenated into t_paths[i] ("ab+bc", "ab+ac", "bc+ac", "direct").
struct TPathWitness {
  int n = 0;
  TerminalTriple terminals;
  std::vector<std::vector<Permutation>> t_paths;
  std::vector<std::string> provenance;
};

struct VerifyReport {
  bool pass = true;
  std::string first_violation;  // stable phrase naming the first failed check
};

// Guaranteed number of internally disjoint T-paths: 3 * floor(n/2) - 3.
int pi3_formula(int n);

// Independent structural check of a pairwise web: counts, endpoints,
// adjacency, simplicity, interior disjointness, spare conditions.  Shares no
// bookkeeping with the construction.
VerifyReport verify_web(const CayleyGraph& g, const PairwiseWeb& web);

// Independent check of an assembled witness: path count equals the formula,
// every path is simple and walkable and contains all terminals, pairwise
// vertex intersections are exactly the terminal set, no shared edges.
VerifyReport verify_witness(const CayleyGraph& g, const TPathWitness& witness);

// Pair the web's path families into T-paths through the shared endpoints:
// x paths glued at b, y at a, z at c with x = (|ab|+|bc|-|ac|)/2,
// y = (|ab|+|ac|-|bc|)/2, z = (|bc|+|ac|-|ab|)/2.  In dimension 3 the single
// T-path is found by direct search instead (x would be negative there).
TPathWitness assemble(const CayleyGraph& g, const PairwiseWeb& web);

// Degree/common-neighbor ceiling for internally disjoint T-path families in
// an r-regular graph: floor((3r - cmax) / 4) with r = 2n - 3 and cmax the
// largest common-neighbor count over audited triples (at most 3 here).
enum class BoundMode { exhaustive, sampled };
struct BoundReport {
  int n = 0;
  int r = 0;                // regularity 2n - 3
  int cmax = 0;             // max common neighbors over the audited triples
  int bound = 0;            // floor((3r - cmax) / 4)
  BoundMode mode = BoundMode::exhaustive;
};
BoundReport upper_bound(const CayleyGraph& g, BoundMode mode, std::uint64_t seed = 1,
                        int samples = 500);

// Exhaustive maximizer for small instances: the true maximum number of
// internally disjoint T-paths for the given triple, by enumerating simple
// T-paths and maximizing a pairwise-compatibility set with branch and bound.
// exact is false when the node budget ran out (best is then a lower bound).
struct OracleResult {
  int best = 0;
  bool exact = true;
  std::vector<std::vector<Permutation>> family;  // one maximum family found
};
OracleResult brute_force_pi3(const CayleyGraph& g, const std::vector<Permutation>& terminals,
                             std::uint64_t node_budget = 50'000'000);

// Structural facts the construction leans on, re-checked from scratch:
// border edge counts, out-neighbor disjointness, common-neighbor ceiling,
// connectivity of the graph and of sub-block unions.
struct AuditClause {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct AuditReport {
  bool pass = true;
  std::vector<AuditClause> clauses;
};
AuditReport structural_audit(const CayleyGraph& g);

}  // namespace bsstar
