#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "surprise/clustering.hpp"
#include "surprise/common.hpp"
#include "surprise/graph.hpp"

namespace surprise {

enum class EdgeMode { Exactly, AtLeast };
enum class Objective { Pairs, Gap };
enum class TieMode { None, MaxEdges };
enum class SolveStatus { Optimal, Infeasible, CapExceeded };

// Minimize intra pairs (or intra pairs minus intra edges) over clusterings
// whose intra edge count is exactly / at least k.
struct MinIPProblem {
  const Graph* graph = nullptr;
  long long k = 0;
  EdgeMode edge_mode = EdgeMode::Exactly;
  Objective objective = Objective::Pairs;
  TieMode tie_mode = TieMode::None;
  std::optional<long long> ip_cap;  // prune any branch whose objective must exceed this

  void validate() const {
    if (!graph) throw ValidationError("problem has no graph");
    if (k < 0 || k > graph->edge_count())
      throw ValidationError("k must be between 0 and the edge count");
    if (ip_cap && *ip_cap < 0) throw ValidationError("ip_cap must be non-negative");
  }
};

struct MinIPSolution {
  Clustering clustering;
  long long objective_value = 0;
  long long i_e = 0;
  long long i_p = 0;
  SolveStatus status = SolveStatus::Optimal;
  unsigned long long nodes_explored = 0;
};

namespace detail {

inline constexpr int kSolverMaxWords = 8;  // vertices capped at 512

struct VertexMask {
  std::array<uint64_t, kSolverMaxWords> w{};

  void set(int i) { w[static_cast<size_t>(i >> 6)] |= uint64_t{1} << (i & 63); }
  void clear(int i) { w[static_cast<size_t>(i >> 6)] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const {
    return w[static_cast<size_t>(i >> 6)] >> (i & 63) & 1;
  }
  bool empty(int words) const {
    for (int j = 0; j < words; ++j)
      if (w[static_cast<size_t>(j)]) return false;
    return true;
  }
  int first(int words) const {
    for (int j = 0; j < words; ++j)
      if (w[static_cast<size_t>(j)])
        return j * 64 + __builtin_ctzll(w[static_cast<size_t>(j)]);
    return -1;
  }
  static int overlap(const uint64_t* a, const VertexMask& b, int words) {
    int c = 0;
    for (int j = 0; j < words; ++j)
      c += __builtin_popcountll(a[j] & b.w[static_cast<size_t>(j)]);
    return c;
  }
};

// Branch and bound over partitions into connected clusters. Clusters are
// built one at a time around a seed (the highest-degree unplaced vertex);
// each frontier vertex is either included or permanently excluded, so every
// connected cluster containing the seed is visited exactly once. Optimal
// solutions always have connected clusters: splitting a disconnected cluster
// keeps every intra edge and drops intra pairs.
class ClusterSearch {
 public:
  ClusterSearch(const Graph& g, std::optional<std::chrono::steady_clock::time_point> deadline)
      : g_(g),
        n_(g.vertex_count()),
        words_(static_cast<int>(g.mask_words())),
        m_(g.edge_count()),
        deadline_(deadline) {
    if (n_ > 64 * kSolverMaxWords)
      throw GuardError("solver capped at " +
                       std::to_string(64 * kSolverMaxWords) + " vertices");
    seed_order_.resize(static_cast<size_t>(n_));
    for (int v = 0; v < n_; ++v) seed_order_[static_cast<size_t>(v)] = v;
    std::stable_sort(seed_order_.begin(), seed_order_.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    cid_.assign(static_cast<size_t>(n_), -1);
    for (int v = 0; v < n_; ++v) unassigned_.set(v);
  }

  unsigned long long nodes() const { return nodes_; }

  struct Best {
    std::vector<int> assignment;
    long long obj = 0, ie = 0, ip = 0;
  };

  // exact minimization; returns nullopt when no leaf survives
  std::optional<Best> minimize(long long k, EdgeMode mode, Objective obj,
                               TieMode tie, std::optional<long long> cap,
                               const std::optional<Best>& warm) {
    k_ = k;
    mode_ = mode;
    obj_ = obj;
    tie_ = tie;
    cap_ = cap;
    probe_ = false;
    cap_pruned_ = false;
    best_.reset();
    if (warm && (!cap_ || warm->obj <= *cap_)) best_ = warm;
    recurse_cluster_done();
    return best_;
  }

  bool cap_pruned() const { return cap_pruned_; }

  // is any clustering with exactly k intra edges at all possible
  bool feasible_exactly(long long k) {
    k_ = k;
    mode_ = EdgeMode::Exactly;
    obj_ = Objective::Pairs;
    tie_ = TieMode::None;
    cap_.reset();
    best_.reset();
    probe_ = true;
    found_ = false;
    recurse_cluster_done();
    return found_;
  }

  // maximize intra edges over partitions into cliques
  Best max_clique_partition() {
    clique_ = true;
    probe_ = false;
    best_.reset();
    // maximization is run as minimization of -ie
    k_ = 0;
    mode_ = EdgeMode::AtLeast;
    obj_ = Objective::Pairs;
    tie_ = TieMode::None;
    cap_.reset();
    recurse_cluster_done();
    clique_ = false;
    if (!best_) throw InvariantError("clique partition search found nothing");
    return *best_;
  }

 private:
  bool pruned() {
    if ((++nodes_ & 8191) == 0 && deadline_ &&
        std::chrono::steady_clock::now() > *deadline_)
      throw TimeLimitError();
    if (clique_) {
      return best_ && m_ - inter_ <= best_->ie;  // first-found maximum kept
    }
    if (m_ - inter_ < k_) return true;
    if (mode_ == EdgeMode::Exactly && ie_ > k_) return true;
    if (probe_) return found_;
    long long lb = obj_ == Objective::Pairs ? ip_ + std::max<long long>(0, k_ - ie_)
                                            : ip_ - ie_;
    if (cap_ && lb > *cap_) {
      cap_pruned_ = true;
      return true;
    }
    if (best_) {
      if (lb > best_->obj) return true;
      if (lb == best_->obj &&
          (tie_ == TieMode::None || m_ - inter_ <= best_->ie))
        return true;
    }
    return false;
  }

  void leaf() {
    if (inter_ + ie_ != m_)
      throw InvariantError("edge bookkeeping out of balance at leaf");
    if (probe_) {
      found_ = true;
      return;
    }
    long long obj = clique_ ? -ie_ : (obj_ == Objective::Pairs ? ip_ : ip_ - ie_);
    if (best_) {
      bool better = obj < best_->obj ||
                    (!clique_ && obj == best_->obj && tie_ == TieMode::MaxEdges &&
                     ie_ > best_->ie);
      if (!better) return;
    }
    best_ = Best{cid_, obj, ie_, ip_};
  }

  void recurse_cluster_done() {
    if (pruned()) return;
    int s = -1;
    for (int v : seed_order_)
      if (unassigned_.test(v)) {
        s = v;
        break;
      }
    if (s == -1) {
      leaf();
      return;
    }
    // open a fresh cluster around s; its members are fixed before any
    // later cluster is started
    unassigned_.clear(s);
    cid_[static_cast<size_t>(s)] = next_cid_++;
    cluster_ = VertexMask{};
    cluster_.set(s);
    cluster_size_ = 1;
    VertexMask frontier;
    for (int j = 0; j < words_; ++j)
      frontier.w[static_cast<size_t>(j)] =
          g_.adjacency_mask(s)[j] & unassigned_.w[static_cast<size_t>(j)];
    VertexMask saved_x = excluded_;
    excluded_ = VertexMask{};
    recurse_grow(frontier);
    excluded_ = saved_x;
    --next_cid_;
    cid_[static_cast<size_t>(s)] = -1;
    cluster_size_ = 0;
    unassigned_.set(s);
  }

  void recurse_grow(const VertexMask& frontier) {
    if (pruned()) return;
    int f = frontier.first(words_);
    if (f == -1) {
      // frontier exhausted: the open cluster is final
      VertexMask saved_c = cluster_;
      VertexMask saved_x = excluded_;
      long long saved_size = cluster_size_;
      cluster_ = VertexMask{};
      cluster_size_ = 0;
      recurse_cluster_done();
      cluster_ = saved_c;
      excluded_ = saved_x;
      cluster_size_ = saved_size;
      return;
    }
    const uint64_t* adj = g_.adjacency_mask(f);
    int to_cluster = VertexMask::overlap(adj, cluster_, words_);
    // include f (skipped in clique mode unless f sees the whole cluster)
    if (!clique_ || to_cluster == cluster_size_) {
      int to_excluded = VertexMask::overlap(adj, excluded_, words_);
      ip_ += cluster_size_;
      ie_ += to_cluster;
      inter_ += to_excluded;
      cluster_.set(f);
      ++cluster_size_;
      unassigned_.clear(f);
      cid_[static_cast<size_t>(f)] = next_cid_ - 1;
      VertexMask grown;
      for (int j = 0; j < words_; ++j)
        grown.w[static_cast<size_t>(j)] =
            (frontier.w[static_cast<size_t>(j)] |
             (adj[j] & unassigned_.w[static_cast<size_t>(j)])) &
            ~excluded_.w[static_cast<size_t>(j)];
      grown.clear(f);
      recurse_grow(grown);
      cid_[static_cast<size_t>(f)] = -1;
      unassigned_.set(f);
      --cluster_size_;
      cluster_.clear(f);
      inter_ -= to_excluded;
      ie_ -= to_cluster;
      ip_ -= cluster_size_;
    }
    // exclude f from this cluster for good
    excluded_.set(f);
    inter_ += to_cluster;
    VertexMask rest = frontier;
    rest.clear(f);
    recurse_grow(rest);
    inter_ -= to_cluster;
    excluded_.clear(f);
  }

  const Graph& g_;
  int n_, words_;
  long long m_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<int> seed_order_;

  long long k_ = 0;
  EdgeMode mode_ = EdgeMode::Exactly;
  Objective obj_ = Objective::Pairs;
  TieMode tie_ = TieMode::None;
  std::optional<long long> cap_;
  bool clique_ = false;
  bool probe_ = false;
  bool found_ = false;
  bool cap_pruned_ = false;

  VertexMask unassigned_, cluster_, excluded_;
  long long cluster_size_ = 0;
  long long ip_ = 0, ie_ = 0, inter_ = 0;
  int next_cid_ = 0;
  std::vector<int> cid_;
  std::optional<Best> best_;
  unsigned long long nodes_ = 0;
};

// Feasible warm start for AtLeast mode: grow clusters greedily until the
// intra edge budget is met, everything else stays singleton.
inline std::optional<ClusterSearch::Best> greedy_at_least(const Graph& g,
                                                          long long k) {
  const int n = g.vertex_count();
  std::vector<int> cid(static_cast<size_t>(n), -1);
  std::vector<char> in_cluster(static_cast<size_t>(n), 0);
  long long ie = 0, ip = 0;
  int next = 0;
  std::vector<int> cluster;
  while (ie < k) {
    int pick = -1, gain = -1;
    if (!cluster.empty()) {
      for (int v = 0; v < n; ++v) {
        if (in_cluster[static_cast<size_t>(v)]) continue;
        int e = 0;
        for (int w : cluster)
          if (g.has_edge(v, w)) ++e;
        if (e > gain) {
          gain = e;
          pick = v;
        }
      }
      if (gain <= 0) pick = -1;  // cluster exhausted its component
    }
    if (pick == -1) {
      int best_deg = -1;
      for (int v = 0; v < n; ++v)
        if (!in_cluster[static_cast<size_t>(v)] && g.degree(v) > best_deg) {
          best_deg = g.degree(v);
          pick = v;
        }
      if (pick == -1) break;
      cluster.clear();
      ++next;
      gain = 0;
    }
    ip += static_cast<long long>(cluster.size());
    ie += gain;
    cluster.push_back(pick);
    in_cluster[static_cast<size_t>(pick)] = 1;
    cid[static_cast<size_t>(pick)] = next - 1;
  }
  if (ie < k) return std::nullopt;
  for (int v = 0; v < n; ++v)
    if (cid[static_cast<size_t>(v)] == -1) cid[static_cast<size_t>(v)] = next++;
  return ClusterSearch::Best{std::move(cid), ip, ie, ip};
}

}  // namespace detail

inline MinIPSolution solve(
    const MinIPProblem& prob,
    std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
    const Clustering* warm_start = nullptr) {
  prob.validate();
  const Graph& g = *prob.graph;
  detail::ClusterSearch search(g, deadline);
  std::optional<detail::ClusterSearch::Best> warm;
  if (warm_start) {
    bool feasible = prob.edge_mode == EdgeMode::Exactly
                        ? warm_start->intra_edges == prob.k
                        : warm_start->intra_edges >= prob.k;
    if (feasible)
      warm = detail::ClusterSearch::Best{
          warm_start->assignment,
          prob.objective == Objective::Pairs
              ? warm_start->intra_pairs
              : warm_start->intra_pairs - warm_start->intra_edges,
          warm_start->intra_edges, warm_start->intra_pairs};
  }
  if (!warm && prob.edge_mode == EdgeMode::AtLeast) {
    auto greedy = detail::greedy_at_least(g, prob.k);
    if (greedy) {
      if (prob.objective == Objective::Gap) greedy->obj = greedy->ip - greedy->ie;
      if (!prob.ip_cap || greedy->obj <= *prob.ip_cap) warm = greedy;
    }
  }
  auto best = search.minimize(prob.k, prob.edge_mode, prob.objective,
                              prob.tie_mode, prob.ip_cap, warm);
  MinIPSolution sol;
  if (best) {
    sol.clustering = Clustering::from_assignment(g, best->assignment);
    sol.objective_value = best->obj;
    sol.i_e = best->ie;
    sol.i_p = best->ip;
    sol.status = SolveStatus::Optimal;
    if (sol.clustering.intra_edges != best->ie ||
        sol.clustering.intra_pairs != best->ip)
      throw InvariantError("solution counts disagree with search bookkeeping");
  } else if (prob.edge_mode == EdgeMode::AtLeast) {
    if (!prob.ip_cap)
      throw InvariantError("uncapped at-least search found no solution");
    sol.status = SolveStatus::CapExceeded;  // k <= m is always satisfiable
  } else if (!search.cap_pruned()) {
    sol.status = SolveStatus::Infeasible;
  } else {
    sol.status = search.feasible_exactly(prob.k) ? SolveStatus::CapExceeded
                                                 : SolveStatus::Infeasible;
  }
  sol.nodes_explored = search.nodes();
  return sol;
}

// Largest intra edge count of any partition into cliques, with a witness.
inline std::pair<Clustering, long long> max_clique_partition_edges(const Graph& g) {
  detail::ClusterSearch search(g, std::nullopt);
  auto best = search.max_clique_partition();
  return {Clustering::from_assignment(g, best.assignment), best.ie};
}

}  // namespace surprise
