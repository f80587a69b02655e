#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "surprise/clustering.hpp"
#include "surprise/common.hpp"
#include "surprise/graph.hpp"
#include "surprise/minip.hpp"
#include "surprise/surprise.hpp"
#include "surprise/treedp.hpp"

namespace surprise {

enum class Variant { Exact, Relaxed, Gap };

struct SweepConfig {
  Variant variant = Variant::Gap;
  bool use_psk = false;  // start the sweep at the clique-partition edge count
  bool use_tf = false;   // per-k objective cap derived from the incumbent
  bool use_emi = false;  // prefer edge-rich minimizers (Relaxed/Gap only)

  void validate() const {
    if (use_emi && variant == Variant::Exact)
      throw ValidationError("edge-rich tie-breaking needs the relaxed or gap variant");
  }
};

enum class KAction { Solved, PrunedByBound, PrunedInfeasible };
enum class RunStatus { Optimal, Bounded };

struct KEntry {
  long long k = 0;
  KAction action = KAction::Solved;
  std::optional<SurpriseValue> bound;   // the bound that pruned, when one did
  std::optional<long long> objective;   // solver results, when solved
  std::optional<long long> sol_ie, sol_ip;
  unsigned long long nodes = 0;
};

struct SweepTotals {
  long long solved = 0;
  long long pruned_by_bound = 0;
  long long pruned_infeasible = 0;
  unsigned long long nodes = 0;
  double wall_time_s = 0;
};

struct SweepReport {
  Clustering best_clustering;
  SurpriseValue best_value;
  long long best_ie = 0;
  long long best_ip = 0;
  std::vector<KEntry> per_k;
  SweepTotals totals;
  RunStatus run_status = RunStatus::Optimal;
};

struct SweepLimits {
  std::optional<double> time_limit_s;
};

// Largest ip with surprise_of(ip, k) still below the incumbent, nullopt when
// even ip = k is not below it. Probabilities grow with ip at fixed k > 0,
// so binary search applies.
inline std::optional<long long> lower_bound_ip_cap(const SurpriseValue& incumbent,
                                                   long long k, long long p,
                                                   long long m) {
  if (k < 1) throw ValidationError("ip cap needs k >= 1");
  long long lo = k, hi = p - (m - k);
  if (lo > hi) return std::nullopt;
  if (!(surprise_of({p, m, lo, k}) < incumbent)) return std::nullopt;
  while (lo < hi) {
    long long mid = lo + (hi - lo + 1) / 2;
    if (surprise_of({p, m, mid, k}) < incumbent)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Sweep k = k_start..m, solving one constrained subproblem per k unless a
// bound proves no clustering with exactly k intra edges can beat the
// incumbent. Scores are compared as exact rationals throughout.
inline SweepReport optimize(const Graph& g, const SweepConfig& cfg,
                            const SweepLimits& limits = {}) {
  cfg.validate();
  const long long p = g.pair_count();
  const long long m = g.edge_count();
  auto t0 = std::chrono::steady_clock::now();
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (limits.time_limit_s)
    deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(*limits.time_limit_s));

  SweepReport rep;
  rep.best_clustering = singletons(g);
  rep.best_value = evaluate(g, rep.best_clustering);
  rep.best_ie = rep.best_clustering.intra_edges;
  rep.best_ip = rep.best_clustering.intra_pairs;
  auto consider = [&](const Clustering& z) {
    SurpriseValue s = evaluate(g, z);
    if (s < rep.best_value) {
      rep.best_clustering = z;
      rep.best_value = s;
      rep.best_ie = z.intra_edges;
      rep.best_ip = z.intra_pairs;
    }
  };

  long long k_start = 1;
  if (cfg.use_psk && m > 0) {
    auto [clique_partition, clique_edges] = max_clique_partition_edges(g);
    consider(clique_partition);
    k_start = std::max<long long>(k_start, clique_edges);
  }

  // previous solved subproblem, for the relaxed / gap bounds
  std::optional<long long> prev_bound_stat;  // min ip (Relaxed) or min gap (Gap)
  const Clustering* warm = nullptr;
  std::optional<Clustering> warm_store;

  try {
    for (long long k = k_start; k <= m; ++k) {
      KEntry entry;
      entry.k = k;
      // structural feasibility of the exactly-k count pair is checked via
      // the clamped bound argument below
      if (cfg.variant != Variant::Exact && prev_bound_stat) {
        long long ip_at_k = cfg.variant == Variant::Relaxed
                                ? std::max(*prev_bound_stat, k)
                                : k + *prev_bound_stat;
        PairEdgeCounts c{p, m, ip_at_k, k};
        if (!c.valid()) {
          // no clustering with exactly k intra edges can satisfy the bound
          // counts; the subproblem cannot produce a useful solution either
          entry.action = KAction::PrunedInfeasible;
          rep.per_k.push_back(entry);
          ++rep.totals.pruned_infeasible;
          continue;
        }
        SurpriseValue bound = surprise_of(c);
        if (!(bound < rep.best_value)) {
          entry.action = KAction::PrunedByBound;
          entry.bound = bound;
          rep.per_k.push_back(entry);
          ++rep.totals.pruned_by_bound;
          continue;
        }
        entry.bound = bound;
      }

      MinIPProblem prob;
      prob.graph = &g;
      prob.k = k;
      prob.edge_mode =
          cfg.variant == Variant::Exact ? EdgeMode::Exactly : EdgeMode::AtLeast;
      prob.objective =
          cfg.variant == Variant::Gap ? Objective::Gap : Objective::Pairs;
      prob.tie_mode = cfg.use_emi ? TieMode::MaxEdges : TieMode::None;
      if (cfg.use_tf) {
        auto cap = lower_bound_ip_cap(rep.best_value, k, p, m);
        if (!cap) {
          // even the best conceivable counts at this k lose to the incumbent
          entry.action = KAction::PrunedInfeasible;
          rep.per_k.push_back(entry);
          ++rep.totals.pruned_infeasible;
          continue;
        }
        prob.ip_cap = cfg.variant == Variant::Gap ? *cap - k : *cap;
      }

      MinIPSolution sol = solve(prob, deadline, warm);
      entry.nodes = sol.nodes_explored;
      rep.totals.nodes += sol.nodes_explored;
      if (sol.status == SolveStatus::Optimal) {
        entry.action = KAction::Solved;
        entry.objective = sol.objective_value;
        entry.sol_ie = sol.i_e;
        entry.sol_ip = sol.i_p;
        ++rep.totals.solved;
        consider(sol.clustering);
        if (cfg.variant != Variant::Exact) {
          prev_bound_stat = sol.objective_value;
          warm_store = sol.clustering;
          warm = &*warm_store;
        }
      } else {
        // CapExceeded (or an infeasible exact count): nothing at this k can
        // beat the incumbent; bounds carried from earlier k stay valid
        entry.action = KAction::PrunedInfeasible;
        ++rep.totals.pruned_infeasible;
      }
      rep.per_k.push_back(entry);
    }
  } catch (const TimeLimitError&) {
    rep.run_status = RunStatus::Bounded;
  }

  rep.totals.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Forests bypass the sweep: the tree tables solve every k at once.
inline SweepReport optimize_auto(const Graph& g, const SweepConfig& cfg,
                                 const SweepLimits& limits = {}) {
  cfg.validate();
  if (!is_forest(g)) return optimize(g, cfg, limits);
  auto t0 = std::chrono::steady_clock::now();
  ForestDP dp(g);
  const long long n = g.vertex_count();
  const long long m = g.edge_count();
  SweepReport rep;
  std::optional<long long> best_k;
  for (long long k = 0; k <= m; ++k) {
    long long ip = (dp.value(k) - n) / 2;
    long long ie = m - k;
    SurpriseValue s = surprise_of({g.pair_count(), m, ip, ie});
    KEntry entry;
    entry.k = ie;
    entry.action = KAction::Solved;
    entry.objective = ip;
    entry.sol_ie = ie;
    entry.sol_ip = ip;
    rep.per_k.push_back(entry);
    ++rep.totals.solved;
    if (!best_k || s < rep.best_value) {
      rep.best_value = s;
      rep.best_ie = ie;
      rep.best_ip = ip;
      best_k = k;
    }
  }
  rep.best_clustering = dp.reconstruct(*best_k);
  std::reverse(rep.per_k.begin(), rep.per_k.end());  // ascending intra edges
  rep.totals.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace surprise
