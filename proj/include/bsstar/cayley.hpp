#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "bsstar/permutation.hpp"

namespace bsstar {

// One generator, applied by exchanging two positions.
struct Generator {
  int i, j;  // 1-based positions, i < j
};

// Star-plus-path generator family on positions: all swaps touching position 1,
// then the adjacent swaps (2,3),(3,4),...  Vertex set is every arrangement of
// 1..n; adjacency is computed on demand, never stored.
class CayleyGraph {
public:
  explicit CayleyGraph(int n);

  int n() const { return n_; }
  std::uint32_t vertex_count() const { return vertex_count_; }
  int degree() const { return static_cast<int>(generators_.size()); }  // 2n-3
  const std::vector<Generator>& generators() const { return generators_; }

  // All neighbours in generator order; always degree() distinct vertices.
  std::vector<Permutation> neighbors(const Permutation& u) const;

  // Sub-block index: the symbol in the final position.
  int copy_of(const Permutation& u) const { return u.last_symbol(); }

  // The two moves that leave a vertex's own sub-block.
  Permutation out_plus(const Permutation& u) const;   // swap positions 1, n
  Permutation out_minus(const Permutation& u) const;  // swap positions n-1, n

  // Every edge with one endpoint in sub-block i and the other in sub-block j,
  // the sub-block-i endpoint first, ordered by that endpoint's rank.
  std::vector<std::pair<Permutation, Permutation>> cross_edges(int i, int j) const;

  // Shared neighbours of 2 or 3 distinct vertices (never more than 3 of them).
  std::vector<Permutation> common_neighbors(const std::vector<Permutation>& vs) const;

private:
  int n_;
  std::uint32_t vertex_count_;
  std::vector<Generator> generators_;
};

// A vertex-filtered lens over the graph: only sub-blocks whose symbol is
// enabled, minus an explicit removal list.  Neighbour queries drop filtered
// endpoints; iteration runs in ascending rank order.
class CopyView {
public:
  CopyView(const CayleyGraph& g, std::vector<int> allowed_copies,
           std::vector<Permutation> removed = {});

  // The whole graph with optional removals.
  static CopyView whole(const CayleyGraph& g, std::vector<Permutation> removed = {});

  const CayleyGraph& graph() const { return *graph_; }
  bool contains(const Permutation& u) const;
  std::vector<Permutation> neighbors(const Permutation& u) const;
  std::uint32_t vertex_count() const;
  void for_each_vertex(const std::function<void(const Permutation&)>& fn) const;

  CopyView with_removed(std::vector<Permutation> extra) const;

private:
  const CayleyGraph* graph_;
  std::uint16_t copy_mask_;  // bit s set when sub-block s is enabled
  std::vector<std::uint32_t> removed_ranks_;  // sorted
};

inline CopyView induced(const CayleyGraph& g, std::vector<int> allowed_copies,
                        std::vector<Permutation> removed = {}) {
  return CopyView(g, std::move(allowed_copies), std::move(removed));
}

}  // namespace bsstar
