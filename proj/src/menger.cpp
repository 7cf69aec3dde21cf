#include "bsstar/menger.hpp"

#include <algorithm>
#include <deque>

namespace bsstar {

namespace {

constexpr std::int32_t kNone = -1;
constexpr std::int32_t kSrc = -2;
constexpr std::int32_t kSnk = -3;

bool member(const std::vector<std::uint32_t>& sorted, std::uint32_t r) {
  return std::binary_search(sorted.begin(), sorted.end(), r);
}

std::vector<std::uint32_t> sorted_ranks(const std::vector<Permutation>& vs) {
  std::vector<std::uint32_t> out;
  out.reserve(vs.size());
  for (const Permutation& v : vs) out.push_back(rank(v));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("vertex set contains duplicates");
  return out;
}

// Unit-vertex-capacity flow over a CopyView, kept as successor/predecessor
// pointers: a vertex carries at most one path unit.  States are vertex halves
// (in = rank*2, out = rank*2+1); each augmentation is a BFS over the residual
// arcs those halves induce.  block_source_passthrough forbids entering a
// source mid-path (set-to-set semantics); block_sink_passthrough forbids
// leaving a sink mid-path.
class FlowEngine {
public:
  FlowEngine(const CopyView& view, std::vector<std::uint32_t> sources,
             std::vector<std::uint32_t> sinks, bool block_source_passthrough,
             bool block_sink_passthrough)
      : view_(view),
        n_(view.graph().n()),
        sources_(std::move(sources)),
        sinks_(std::move(sinks)),
        block_src_(block_source_passthrough),
        block_snk_(block_sink_passthrough) {
    const std::uint32_t vc = view.graph().vertex_count();
    next_.assign(vc, kNone);
    prev_.assign(vc, kNone);
    parent_.assign(2 * vc, kNone);
    for (std::uint32_t s : sources_)
      if (!view_.contains(unrank(n_, s)))
        throw std::invalid_argument("source vertex outside the view");
    for (std::uint32_t t : sinks_)
      if (!view_.contains(unrank(n_, t)))
        throw std::invalid_argument("sink vertex outside the view");
    // a shared endpoint is locked in as a single-vertex path: any flow routed
    // through it instead can be split at it without losing value
    for (std::uint32_t s : sources_)
      if (member(sinks_, s)) {
        prev_[s] = kSrc;
        next_[s] = kSnk;
        ++value_;
      }
  }

  // Augments until the value reaches want (want < 0: until stall).
  int run(int want) {
    while (want < 0 || value_ < want) {
      if (!augment()) break;
      ++value_;
    }
    return value_;
  }

  int value() const { return value_; }

  // Pointer-chain walk from each used source, ascending source rank.
  std::vector<std::vector<Permutation>> extract() const {
    std::vector<std::vector<Permutation>> out;
    for (std::uint32_t s : sources_) {
      if (prev_[s] != kSrc) continue;
      std::vector<Permutation> path;
      std::int32_t cur = static_cast<std::int32_t>(s);
      while (cur != kSnk) {
        path.push_back(unrank(n_, static_cast<std::uint32_t>(cur)));
        cur = next_[static_cast<std::uint32_t>(cur)];
      }
      out.push_back(std::move(path));
    }
    return out;
  }

  // Separating set read off the last (stalled) residual search: the saturated
  // arcs crossing the reachable half-states.  Valid only right after run()
  // stopped short.
  std::vector<Permutation> cut() const {
    std::vector<Permutation> out;
    for (std::uint32_t s : sources_)
      if (prev_[s] == kSrc && !seen(2 * s)) out.push_back(unrank(n_, s));
    view_.for_each_vertex([&](const Permutation& v) {
      const std::uint32_t r = rank(v);
      if (next_[r] != kNone && seen(2 * r) && !seen(2 * r + 1)) out.push_back(v);
    });
    for (std::uint32_t t : sinks_)
      if (next_[t] == kSnk && seen(2 * t + 1)) out.push_back(unrank(n_, t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

private:
  bool seen(std::uint32_t state) const { return parent_[state] != kNone; }

  bool augment() {
    std::fill(parent_.begin(), parent_.end(), kNone);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s : sources_) {
      if (prev_[s] == kSrc) continue;  // source arc already used
      parent_[2 * s] = kSrc;
      queue.push_back(2 * s);
    }
    std::int32_t goal = kNone;
    while (!queue.empty() && goal == kNone) {
      const std::uint32_t state = queue.front();
      queue.pop_front();
      const std::uint32_t r = state / 2;
      if (state % 2 == 0) {
        // in-half: enter the vertex if free, else cancel its carried unit
        if (next_[r] == kNone) {
          visit(2 * r + 1, state, queue);
        } else if (prev_[r] >= 0) {
          visit(2 * static_cast<std::uint32_t>(prev_[r]) + 1, state, queue);
        }
      } else {
        // out-half: finish at a sink, step back through the vertex, or move on
        if (member(sinks_, r) && next_[r] != kSnk) {
          goal = static_cast<std::int32_t>(state);
          break;
        }
        if (next_[r] != kNone) visit(2 * r, state, queue);
        if (!(block_snk_ && member(sinks_, r))) {
          const Permutation v = unrank(n_, r);
          for (const Permutation& w : view_.neighbors(v)) {
            const std::uint32_t wr = rank(w);
            if (block_src_ && member(sources_, wr)) continue;
            visit(2 * wr, state, queue);
          }
        }
      }
    }
    if (goal == kNone) return false;
    apply(static_cast<std::uint32_t>(goal));
    return true;
  }

  void visit(std::uint32_t state, std::uint32_t from, std::deque<std::uint32_t>& queue) {
    if (parent_[state] != kNone) return;
    parent_[state] = static_cast<std::int32_t>(from);
    queue.push_back(state);
  }

  void apply(std::uint32_t goal) {
    // walk back to a root, recording edge additions and cancellations;
    // cancellations land first so a rerouted vertex ends with one pointer pair
    std::vector<std::pair<std::uint32_t, std::uint32_t>> add, remove;
    std::uint32_t cur = goal;
    next_[goal / 2] = kSnk;
    while (parent_[cur] != kSrc) {
      const std::uint32_t par = static_cast<std::uint32_t>(parent_[cur]);
      const std::uint32_t pv = par / 2, cv = cur / 2;
      if (pv != cv) {
        if (par % 2 == 1 && cur % 2 == 0)
          add.push_back({pv, cv});  // new flow edge pv -> cv
        else
          remove.push_back({cv, pv});  // cancelled flow edge cv -> pv
      }
      cur = par;
    }
    for (auto [u, w] : remove) {
      if (next_[u] == static_cast<std::int32_t>(w)) next_[u] = kNone;
      if (prev_[w] == static_cast<std::int32_t>(u)) prev_[w] = kNone;
    }
    for (auto [u, w] : add) {
      next_[u] = static_cast<std::int32_t>(w);
      prev_[w] = static_cast<std::int32_t>(u);
    }
    prev_[cur / 2] = kSrc;
  }

  const CopyView& view_;
  int n_;
  std::vector<std::uint32_t> sources_, sinks_;
  bool block_src_, block_snk_;
  std::vector<std::int32_t> next_, prev_, parent_;
  int value_ = 0;
};

// Independent reachability check that the cut really separates: a plain BFS
// honoring the same pass-through rules must not reach any surviving sink.
bool cut_separates(const CopyView& view, const std::vector<std::uint32_t>& sources,
                   const std::vector<std::uint32_t>& sinks, const std::vector<Permutation>& cut,
                   bool block_src) {
  std::vector<std::uint32_t> cut_ranks;
  for (const Permutation& v : cut) cut_ranks.push_back(rank(v));
  std::sort(cut_ranks.begin(), cut_ranks.end());
  std::vector<std::uint32_t> visited;
  std::deque<std::uint32_t> queue;
  auto push = [&](std::uint32_t r) {
    auto it = std::lower_bound(visited.begin(), visited.end(), r);
    if (it == visited.end() || *it != r) {
      visited.insert(it, r);
      queue.push_back(r);
    }
  };
  for (std::uint32_t s : sources) {
    if (member(cut_ranks, s)) continue;
    if (member(sinks, s)) return false;  // surviving shared endpoint
    push(s);
  }
  const int n = view.graph().n();
  while (!queue.empty()) {
    const std::uint32_t r = queue.front();
    queue.pop_front();
    for (const Permutation& w : view.neighbors(unrank(n, r))) {
      const std::uint32_t wr = rank(w);
      if (member(cut_ranks, wr)) continue;
      if (member(sinks, wr)) return false;
      if (block_src && member(sources, wr)) continue;
      push(wr);
    }
  }
  return true;
}

}  // namespace

DisjointPathSet disjoint_set_paths(const CopyView& view, const std::vector<Permutation>& from,
                                   const std::vector<Permutation>& to, int k) {
  if (k < 0) throw std::invalid_argument("path count must be nonnegative");
  if (k > static_cast<int>(from.size()) || k > static_cast<int>(to.size()))
    throw std::invalid_argument("path count exceeds an endpoint set");
  const std::vector<std::uint32_t> src = sorted_ranks(from), snk = sorted_ranks(to);
  FlowEngine engine(view, src, snk, true, true);
  const int got = engine.run(k);
  if (got < k) {
    const std::vector<Permutation> cut = engine.cut();
    if (!cut_separates(view, src, snk, cut, true))
      throw std::logic_error("flow stalled but the extracted cut does not separate");
    throw InfeasibleError("needed " + std::to_string(k) + " disjoint paths, found " +
                              std::to_string(got),
                          got, cut);
  }
  DisjointPathSet out;
  out.paths = engine.extract();
  if (static_cast<int>(out.paths.size()) > k) out.paths.resize(static_cast<std::size_t>(k));
  return out;
}

DisjointPathSet fan(const CopyView& view, const Permutation& center,
                    const std::vector<Permutation>& targets) {
  if (targets.empty()) return {};
  if (!view.contains(center)) throw std::invalid_argument("fan center outside the view");
  const std::vector<std::uint32_t> target_ranks = sorted_ranks(targets);
  if (member(target_ranks, rank(center)))
    throw std::invalid_argument("fan center cannot be a target");
  for (const Permutation& t : targets)
    if (!view.contains(t)) throw std::invalid_argument("fan target outside the view");
  const CopyView inner = view.with_removed({center});
  const std::vector<std::uint32_t> hop_ranks = sorted_ranks(view.neighbors(center));
  FlowEngine engine(inner, hop_ranks, target_ranks, false, true);
  const int got = engine.run(static_cast<int>(targets.size()));
  if (got < static_cast<int>(targets.size())) {
    const std::vector<Permutation> cut = engine.cut();
    if (!cut_separates(inner, hop_ranks, target_ranks, cut, false))
      throw std::logic_error("fan stalled but the extracted cut does not separate");
    throw InfeasibleError("fan needed " + std::to_string(targets.size()) + " paths, found " +
                              std::to_string(got),
                          got, cut);
  }
  DisjointPathSet out;
  out.paths = engine.extract();
  for (std::vector<Permutation>& p : out.paths) p.insert(p.begin(), center);
  return out;
}

DisjointPathSet disjoint_pair_paths(const CopyView& view, const Permutation& u,
                                    const Permutation& v, int k) {
  if (u == v) throw std::invalid_argument("pair paths need two distinct vertices");
  if (!view.contains(u) || !view.contains(v))
    throw std::invalid_argument("endpoint outside the view");
  DisjointPathSet out;
  if (k <= 0) return out;
  bool adjacent = false;
  std::vector<Permutation> from;
  for (const Permutation& w : view.neighbors(u)) {
    if (w == v)
      adjacent = true;
    else
      from.push_back(w);
  }
  std::vector<Permutation> to;
  for (const Permutation& w : view.neighbors(v))
    if (w != u) to.push_back(w);
  if (adjacent) {
    out.paths.push_back({u, v});
    if (--k == 0) return out;
  }
  if (k > static_cast<int>(from.size()) || k > static_cast<int>(to.size())) {
    // either endpoint's remaining neighborhood already separates the pair
    std::vector<Permutation> cut = from.size() <= to.size() ? from : to;
    throw InfeasibleError("pair paths: endpoint degree below request",
                          static_cast<int>(out.paths.size()), std::move(cut));
  }
  DisjointPathSet mid;
  try {
    mid = disjoint_set_paths(view.with_removed({u, v}), from, to, k);
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(std::string("pair paths: ") + e.what(),
                          e.achieved() + static_cast<int>(out.paths.size()), e.cut());
  }
  for (std::vector<Permutation>& p : mid.paths) {
    p.insert(p.begin(), u);
    p.push_back(v);
  }
  out.paths.insert(out.paths.end(), mid.paths.begin(), mid.paths.end());
  return out;
}

int local_connectivity(const CopyView& view, const Permutation& u, const Permutation& v) {
  if (u == v) throw std::invalid_argument("local connectivity needs two distinct vertices");
  if (!view.contains(u) || !view.contains(v))
    throw std::invalid_argument("endpoint outside the view");
  bool adjacent = false;
  std::vector<Permutation> from;
  for (const Permutation& w : view.neighbors(u)) {
    if (w == v)
      adjacent = true;
    else
      from.push_back(w);
  }
  std::vector<Permutation> to;
  for (const Permutation& w : view.neighbors(v))
    if (w != u) to.push_back(w);
  const CopyView inner = view.with_removed({u, v});
  FlowEngine engine(inner, sorted_ranks(from), sorted_ranks(to), false, false);
  return engine.run(-1) + (adjacent ? 1 : 0);
}

int kappa(const CopyView& view) {
  std::vector<Permutation> vertices;
  view.for_each_vertex([&](const Permutation& v) { vertices.push_back(v); });
  if (vertices.size() < 2) return 0;
  const Permutation v0 = vertices.front();
  std::vector<Permutation> hood = view.neighbors(v0);
  std::sort(hood.begin(), hood.end());
  int best = static_cast<int>(vertices.size()) - 1;
  bool candidate = false;
  // a minimum cut either avoids v0 (some non-neighbor sits across it) or
  // contains v0 (and then splits v0's neighborhood)
  for (const Permutation& w : vertices) {
    if (w == v0 || std::binary_search(hood.begin(), hood.end(), w)) continue;
    candidate = true;
    best = std::min(best, local_connectivity(view, v0, w));
    if (best == 0) return 0;
  }
  for (std::size_t i = 0; i < hood.size(); ++i)
    for (std::size_t j = i + 1; j < hood.size(); ++j) {
      candidate = true;
      best = std::min(best, local_connectivity(view, hood[i], hood[j]));
      if (best == 0) return 0;
    }
  if (!candidate) return static_cast<int>(vertices.size()) - 1;  // complete view
  return best;
}

}  // namespace bsstar
