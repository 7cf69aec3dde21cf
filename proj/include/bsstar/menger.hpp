#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bsstar/cayley.hpp"
#include "bsstar/permutation.hpp"

namespace bsstar {

struct DisjointPathSet {
  std::vector<std::vector<Permutation>> paths;
};

// Raised when a requested path family does not exist; carries a separating
// vertex set witnessing the shortfall (checked against the view before throw).
class InfeasibleError : public std::runtime_error {
public:
  InfeasibleError(const std::string& what, int achieved, std::vector<Permutation> cut)
      : std::runtime_error(what), achieved_(achieved), cut_(std::move(cut)) {}
  int achieved() const { return achieved_; }
  const std::vector<Permutation>& cut() const { return cut_; }

private:
  int achieved_;
  std::vector<Permutation> cut_;
};

// k fully disjoint paths from X to Y inside the view.  Vertices in X ∩ Y
// become single-vertex paths first; no path passes through any other vertex
// of X ∪ Y.  Paths come back as vertex sequences including both endpoints.
DisjointPathSet disjoint_set_paths(const CopyView& view, const std::vector<Permutation>& from,
                                   const std::vector<Permutation>& to, int k);

// One path from the center to each target, pairwise sharing only the center;
// no path passes through another target.  Paths are [center, ..., target].
DisjointPathSet fan(const CopyView& view, const Permutation& center,
                    const std::vector<Permutation>& targets);

// k internally disjoint u-v paths inside the view: interiors are pairwise
// disjoint, only the endpoints are shared.  The direct edge, when present,
// is always the first path returned.
DisjointPathSet disjoint_pair_paths(const CopyView& view, const Permutation& u,
                                    const Permutation& v, int k);

// Maximum number of internally disjoint u-v paths inside the view.
int local_connectivity(const CopyView& view, const Permutation& u, const Permutation& v);

// Vertex connectivity of the view (0 when disconnected, |V|-1 when complete).
int kappa(const CopyView& view);

}  // namespace bsstar
