#include "bsstar/cayley.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsstar {

CayleyGraph::CayleyGraph(int n) : n_(n) {
  if (n < min_dimension || n > max_dimension)
    throw std::out_of_range("dimension must be between 3 and 9");
  vertex_count_ = factorial(n);
  for (int j = 2; j <= n; ++j) generators_.push_back({1, j});
  for (int j = 2; j <= n - 1; ++j) generators_.push_back({j, j + 1});
}

std::vector<Permutation> CayleyGraph::neighbors(const Permutation& u) const {
  if (u.n() != n_) throw std::invalid_argument("vertex dimension mismatch");
  std::vector<Permutation> out;
  out.reserve(generators_.size());
  for (const Generator& g : generators_) out.push_back(swap_positions(u, g.i, g.j));
  return out;
}

Permutation CayleyGraph::out_plus(const Permutation& u) const {
  return swap_positions(u, 1, n_);
}

Permutation CayleyGraph::out_minus(const Permutation& u) const {
  return swap_positions(u, n_ - 1, n_);
}

std::vector<std::pair<Permutation, Permutation>> CayleyGraph::cross_edges(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
    throw std::invalid_argument("sub-block symbols must be distinct and within 1..n");
  if (n_ < 4) throw std::invalid_argument("cross-edge enumeration needs dimension at least 4");
  std::vector<std::pair<Permutation, Permutation>> out;
  // An edge leaves sub-block i only via the position-(1,n) or position-(n-1,n)
  // swap; enumerate sub-block i by rank and keep edges landing in sub-block j.
  for (std::uint32_t r = 0; r < vertex_count_; ++r) {
    const Permutation u = unrank(n_, r);
    if (u.last_symbol() != i) continue;
    const Permutation p = out_plus(u);
    if (p.last_symbol() == j) out.emplace_back(u, p);
    const Permutation m = out_minus(u);
    if (m.last_symbol() == j) out.emplace_back(u, m);
  }
  return out;
}

std::vector<Permutation> CayleyGraph::common_neighbors(const std::vector<Permutation>& vs) const {
  if (vs.size() < 2 || vs.size() > 3)
    throw std::invalid_argument("common neighbours are defined for 2 or 3 vertices");
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j]) throw std::invalid_argument("common neighbours need distinct vertices");
  std::vector<Permutation> acc = neighbors(vs[0]);
  std::sort(acc.begin(), acc.end());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    std::vector<Permutation> ni = neighbors(vs[i]);
    std::sort(ni.begin(), ni.end());
    std::vector<Permutation> merged;
    std::set_intersection(acc.begin(), acc.end(), ni.begin(), ni.end(),
                          std::back_inserter(merged));
    acc = std::move(merged);
  }
  return acc;
}

CopyView::CopyView(const CayleyGraph& g, std::vector<int> allowed_copies,
                   std::vector<Permutation> removed)
    : graph_(&g), copy_mask_(0) {
  if (allowed_copies.empty()) throw std::invalid_argument("view needs at least one sub-block");
  for (int c : allowed_copies) {
    if (c < 1 || c > g.n()) throw std::out_of_range("sub-block symbol outside 1..n");
    copy_mask_ |= static_cast<std::uint16_t>(1u << c);
  }
  removed_ranks_.reserve(removed.size());
  for (const Permutation& p : removed) removed_ranks_.push_back(rank(p));
  std::sort(removed_ranks_.begin(), removed_ranks_.end());
  removed_ranks_.erase(std::unique(removed_ranks_.begin(), removed_ranks_.end()),
                       removed_ranks_.end());
}

CopyView CopyView::whole(const CayleyGraph& g, std::vector<Permutation> removed) {
  std::vector<int> all;
  for (int c = 1; c <= g.n(); ++c) all.push_back(c);
  return CopyView(g, all, std::move(removed));
}

bool CopyView::contains(const Permutation& u) const {
  if (u.n() != graph_->n()) return false;
  if (!(copy_mask_ & (1u << u.last_symbol()))) return false;
  return !std::binary_search(removed_ranks_.begin(), removed_ranks_.end(), rank(u));
}

std::vector<Permutation> CopyView::neighbors(const Permutation& u) const {
  std::vector<Permutation> out;
  for (const Permutation& v : graph_->neighbors(u))
    if (contains(v)) out.push_back(v);
  return out;
}

std::uint32_t CopyView::vertex_count() const {
  const std::uint32_t per_copy = factorial(graph_->n() - 1);
  std::uint32_t count = 0;
  for (int c = 1; c <= graph_->n(); ++c)
    if (copy_mask_ & (1u << c)) count += per_copy;
  // removals were validated to be distinct ranks; subtract the contained ones
  for (std::uint32_t r : removed_ranks_) {
    const Permutation p = unrank(graph_->n(), r);
    if (copy_mask_ & (1u << p.last_symbol())) --count;
  }
  return count;
}

void CopyView::for_each_vertex(const std::function<void(const Permutation&)>& fn) const {
  for (std::uint32_t r = 0; r < graph_->vertex_count(); ++r) {
    const Permutation p = unrank(graph_->n(), r);
    if (contains(p)) fn(p);
  }
}

CopyView CopyView::with_removed(std::vector<Permutation> extra) const {
  CopyView out = *this;
  for (const Permutation& p : extra) out.removed_ranks_.push_back(rank(p));
  std::sort(out.removed_ranks_.begin(), out.removed_ranks_.end());
  out.removed_ranks_.erase(std::unique(out.removed_ranks_.begin(), out.removed_ranks_.end()),
                           out.removed_ranks_.end());
  return out;
}

}  // namespace bsstar
