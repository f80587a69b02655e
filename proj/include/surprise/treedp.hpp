#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "surprise/clustering.hpp"
#include "surprise/common.hpp"
#include "surprise/graph.hpp"
#include "surprise/surprise.hpp"

namespace surprise {

namespace detail {
inline constexpr int32_t kTreeInf = std::numeric_limits<int32_t>::max() / 2;
}

// Exact DP on a tree (one connected component of a forest): for every number
// of deleted edges k, the minimum over deletions of the sum of squared
// component sizes. Cell (k, nu) additionally pins the size of the component
// containing the subtree root to nu. Children are folded in one at a time;
// keeping the child edge merges components (cost correction 2*mu*x), cutting
// it spends one deletion and seals the child at its cheapest shape.
class TreeDP {
 public:
  TreeDP(const Graph& g, int root) : g_(&g), root_(root) {
    const int n = g.vertex_count();
    if (n > 512) throw GuardError("tree tables capped at 512 vertices");
    if (root < 0 || root >= n) throw ValidationError("root out of range");
    parent_.assign(static_cast<size_t>(n), -2);  // -2 = outside component
    std::vector<int> order;
    order.push_back(root);
    parent_[static_cast<size_t>(root)] = -1;
    for (size_t i = 0; i < order.size(); ++i) {
      int v = order[i];
      for (int w : g.neighbors(v)) {
        if (parent_[static_cast<size_t>(w)] != -2) {
          if (w != parent_[static_cast<size_t>(v)])
            throw ValidationError("component of the root contains a cycle");
          continue;
        }
        parent_[static_cast<size_t>(w)] = v;
        order.push_back(w);
      }
    }
    component_ = order;
    children_.assign(static_cast<size_t>(n), {});
    for (int v : component_)
      if (v != root) children_[static_cast<size_t>(parent_[static_cast<size_t>(v)])].push_back(v);
    for (int v : component_)
      std::sort(children_[static_cast<size_t>(v)].begin(),
                children_[static_cast<size_t>(v)].end());
    size_.assign(static_cast<size_t>(n), 0);
    vals_.assign(static_cast<size_t>(n), {});
    marg_.assign(static_cast<size_t>(n), {});
    marg_arg_.assign(static_cast<size_t>(n), {});
    stages_.assign(static_cast<size_t>(n), {});
    for (auto it = component_.rbegin(); it != component_.rend(); ++it) build(*it);
  }

  int root() const { return root_; }
  const std::vector<int>& component() const { return component_; }
  long long edge_count() const {
    return static_cast<long long>(component_.size()) - 1;
  }

  // F(u; k, nu), infinity encoded as nullopt
  std::optional<long long> value(int u, long long k, long long nu) const {
    long long s = size_[static_cast<size_t>(u)];
    if (k < 0 || k >= s || nu < 1 || nu > s) return std::nullopt;
    int32_t v = vals_[static_cast<size_t>(u)][cell(s, k, nu)];
    if (v >= detail::kTreeInf) return std::nullopt;
    return v;
  }

  // min over nu; defined for every k in [0, edges]
  long long root_value(long long k) const {
    if (k < 0 || k > edge_count()) throw ValidationError("k out of range");
    int32_t v = marg_[static_cast<size_t>(root_)][static_cast<size_t>(k)];
    if (v >= detail::kTreeInf) throw InvariantError("tree marginal is infinite");
    return v;
  }

  // the k tree edges whose deletion realizes root_value(k)
  std::vector<std::pair<int, int>> cut_edges(long long k) const {
    if (k < 0 || k > edge_count()) throw ValidationError("k out of range");
    std::vector<std::pair<int, int>> cuts;
    walk(root_, k, marg_arg_[static_cast<size_t>(root_)][static_cast<size_t>(k)], cuts);
    if (static_cast<long long>(cuts.size()) != k)
      throw InvariantError("reconstruction produced wrong cut count");
    return cuts;
  }

 private:
  static size_t cell(long long s, long long k, long long nu) {
    return static_cast<size_t>(k * (s + 1) + nu);
  }

  struct Stage {
    long long prev_size = 0;  // vertices covered before this child
    std::vector<uint32_t> bp;  // packed: tag<<31 | l<<16 | mu
  };

  void build(int u) {
    long long s = 1;
    std::vector<int32_t> cur(cell(1, 0, 1) + 1, detail::kTreeInf);
    cur[cell(1, 0, 1)] = 1;
    auto& st = stages_[static_cast<size_t>(u)];
    for (int c : children_[static_cast<size_t>(u)]) {
      long long sc = size_[static_cast<size_t>(c)];
      long long sn = s + sc;
      std::vector<int32_t> next(static_cast<size_t>(sn * (sn + 1)), detail::kTreeInf);
      Stage stage;
      stage.prev_size = s;
      stage.bp.assign(next.size(), 0);
      const auto& child = vals_[static_cast<size_t>(c)];
      // keep the edge u-c: components merge
      for (long long l = 0; l < s; ++l)
        for (long long mu = 1; mu <= s; ++mu) {
          int32_t base = cur[cell(s, l, mu)];
          if (base >= detail::kTreeInf) continue;
          for (long long kc = 0; kc < sc; ++kc)
            for (long long x = 1; x <= sc; ++x) {
              int32_t cv = child[cell(sc, kc, x)];
              if (cv >= detail::kTreeInf) continue;
              int32_t val = base + cv + static_cast<int32_t>(2 * mu * x);
              size_t id = cell(sn, l + kc, mu + x);
              if (val < next[id]) {
                next[id] = val;
                stage.bp[id] = static_cast<uint32_t>(1u << 31) |
                               static_cast<uint32_t>(l << 16) |
                               static_cast<uint32_t>(mu);
              }
            }
        }
      // cut it: the child settles independently at its cheapest shape
      for (long long l = 0; l < s; ++l)
        for (long long nu = 1; nu <= s; ++nu) {
          int32_t base = cur[cell(s, l, nu)];
          if (base >= detail::kTreeInf) continue;
          for (long long kc = 0; kc < sc; ++kc) {
            int32_t cv = marg_[static_cast<size_t>(c)][static_cast<size_t>(kc)];
            int32_t val = base + cv;
            size_t id = cell(sn, l + kc + 1, nu);
            if (val < next[id]) {
              next[id] = val;
              stage.bp[id] = static_cast<uint32_t>(l << 16);
            }
          }
        }
      st.push_back(std::move(stage));
      cur = std::move(next);
      s = sn;
    }
    size_[static_cast<size_t>(u)] = s;
    marg_[static_cast<size_t>(u)].assign(static_cast<size_t>(s), detail::kTreeInf);
    marg_arg_[static_cast<size_t>(u)].assign(static_cast<size_t>(s), 0);
    for (long long k = 0; k < s; ++k)
      for (long long nu = 1; nu <= s; ++nu) {
        int32_t v = cur[cell(s, k, nu)];
        if (v < marg_[static_cast<size_t>(u)][static_cast<size_t>(k)]) {
          marg_[static_cast<size_t>(u)][static_cast<size_t>(k)] = v;
          marg_arg_[static_cast<size_t>(u)][static_cast<size_t>(k)] =
              static_cast<int32_t>(nu);
        }
      }
    vals_[static_cast<size_t>(u)] = std::move(cur);
  }

  void walk(int u, long long k, long long nu,
            std::vector<std::pair<int, int>>& cuts) const {
    const auto& st = stages_[static_cast<size_t>(u)];
    const auto& kids = children_[static_cast<size_t>(u)];
    for (size_t i = st.size(); i-- > 0;) {
      int c = kids[i];
      long long sc = size_[static_cast<size_t>(c)];
      long long sn = st[i].prev_size + sc;
      uint32_t bp = st[i].bp[cell(sn, k, nu)];
      long long l = (bp >> 16) & 0x7fff;
      if (bp >> 31) {
        long long mu = bp & 0xffff;
        walk(c, k - l, nu - mu, cuts);
        k = l;
        nu = mu;
      } else {
        long long kc = k - l - 1;
        cuts.emplace_back(std::min(u, c), std::max(u, c));
        walk(c, kc, marg_arg_[static_cast<size_t>(c)][static_cast<size_t>(kc)], cuts);
        k = l;
      }
    }
    if (k != 0 || nu != 1) throw InvariantError("tree walk did not land on the base cell");
  }

  const Graph* g_;
  int root_;
  std::vector<int> parent_, component_;
  std::vector<std::vector<int>> children_;
  std::vector<long long> size_;
  std::vector<std::vector<int32_t>> vals_;
  std::vector<std::vector<int32_t>> marg_;
  std::vector<std::vector<int32_t>> marg_arg_;
  std::vector<std::vector<Stage>> stages_;
};

inline TreeDP macp_tree(const Graph& g, int root) {
  if (!is_tree(g)) throw ValidationError("graph is not a tree");
  return TreeDP(g, root);
}

// Forest-wide tables: per-component DPs plus a min-plus convolution over the
// per-component deletion counts.
class ForestDP {
 public:
  explicit ForestDP(const Graph& g) : g_(&g) {
    if (!is_forest(g)) throw ValidationError("graph is not a forest");
    for (const auto& comp : connected_components(g)) parts_.emplace_back(g, comp[0]);
    total_.assign(1, 0);
    for (const auto& part : parts_) {
      long long pe = part.edge_count();
      std::vector<long long> merged(total_.size() + static_cast<size_t>(pe),
                                    detail::kTreeInf);
      std::vector<long long> split(merged.size(), 0);
      for (long long k = 0; k < static_cast<long long>(merged.size()); ++k)
        for (long long kc = 0; kc <= std::min<long long>(pe, k); ++kc) {
          long long k1 = k - kc;
          if (k1 >= static_cast<long long>(total_.size())) continue;
          long long val = total_[static_cast<size_t>(k1)] + part.root_value(kc);
          if (val < merged[static_cast<size_t>(k)]) {
            merged[static_cast<size_t>(k)] = val;
            split[static_cast<size_t>(k)] = kc;
          }
        }
      total_ = std::move(merged);
      splits_.push_back(std::move(split));
    }
  }

  long long edge_count() const { return static_cast<long long>(total_.size()) - 1; }

  // forest-wide min sum of squared component sizes after k deletions
  long long value(long long k) const {
    if (k < 0 || k >= static_cast<long long>(total_.size()))
      throw ValidationError("k out of range");
    return total_[static_cast<size_t>(k)];
  }

  Clustering reconstruct(long long k) const {
    if (k < 0 || k >= static_cast<long long>(total_.size()))
      throw ValidationError("k out of range");
    std::vector<std::pair<int, int>> cuts;
    long long rest = k;
    for (size_t j = parts_.size(); j-- > 0;) {
      long long kc = splits_[j][static_cast<size_t>(rest)];
      auto part_cuts = parts_[j].cut_edges(kc);
      cuts.insert(cuts.end(), part_cuts.begin(), part_cuts.end());
      rest -= kc;
    }
    if (rest != 0) throw InvariantError("convolution split walk failed");
    // components of the forest minus the cuts
    const Graph& g = *g_;
    const int n = g.vertex_count();
    std::vector<int> cid(static_cast<size_t>(n), -1);
    auto is_cut = [&](int a, int b) {
      if (a > b) std::swap(a, b);
      return std::find(cuts.begin(), cuts.end(), std::make_pair(a, b)) != cuts.end();
    };
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
      if (cid[static_cast<size_t>(s)] != -1) continue;
      cid[static_cast<size_t>(s)] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
          if (cid[static_cast<size_t>(w)] == -1 && !is_cut(v, w)) {
            cid[static_cast<size_t>(w)] = next;
            stack.push_back(w);
          }
      }
      ++next;
    }
    return Clustering::from_assignment(g, cid);
  }

 private:
  const Graph* g_;
  std::vector<TreeDP> parts_;
  std::vector<std::vector<long long>> splits_;
  std::vector<long long> total_;
};

struct TreeOptimum {
  Clustering clustering;
  SurpriseValue value;
  long long removed_edges = 0;
  long long i_e = 0;
  long long i_p = 0;
};

// Scan every deletion count, score it, keep the best (smallest k on ties).
inline TreeOptimum surprise_optimal_forest(const Graph& g) {
  ForestDP dp(g);
  const long long n = g.vertex_count();
  const long long p = g.pair_count();
  const long long m = g.edge_count();
  std::optional<TreeOptimum> best;
  for (long long k = 0; k <= m; ++k) {
    long long ip = (dp.value(k) - n) / 2;
    SurpriseValue s = surprise_of({p, m, ip, m - k});
    if (!best || s < best->value)
      best = TreeOptimum{{}, s, k, m - k, ip};
  }
  best->clustering = dp.reconstruct(best->removed_edges);
  if (best->clustering.intra_pairs != best->i_p ||
      best->clustering.intra_edges != best->i_e)
    throw InvariantError("reconstructed clustering disagrees with DP value");
  return *best;
}

inline TreeOptimum surprise_optimal_tree(const Graph& g) {
  if (!is_tree(g)) throw ValidationError("graph is not a tree");
  return surprise_optimal_forest(g);
}

}  // namespace surprise
