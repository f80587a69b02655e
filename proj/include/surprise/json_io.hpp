#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "surprise/clustering.hpp"
#include "surprise/graph.hpp"
#include "surprise/oracle.hpp"
#include "surprise/surprise.hpp"
#include "surprise/sweep.hpp"
#include "surprise/treedp.hpp"

namespace surprise {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaName = "surprise-exact/1";

inline Json surprise_json(const SurpriseValue& s, int digits = 15,
                          int sci_digits = 6) {
  return Json{{"neg_log10", s.neg_log10(digits)},
              {"probability_sci", s.scientific(sci_digits)}};
}

inline Json graph_json(const Graph& g) {
  return Json{{"n", g.vertex_count()},
              {"m", g.edge_count()},
              {"pairs", g.pair_count()}};
}

inline Json clustering_json(const Graph& g, const Clustering& z) {
  Json clusters = Json::array();
  for (const auto& cluster : z.clusters()) {
    Json members = Json::array();
    for (int v : cluster) members.push_back(g.label(v));
    clusters.push_back(members);
  }
  return Json{{"cluster_count", z.cluster_count},
              {"intra_edges", z.intra_edges},
              {"intra_pairs", z.intra_pairs},
              {"clusters", clusters}};
}

inline Json eval_json(const Graph& g, const Clustering& z, int digits,
                      int sci_digits) {
  Json out;
  out["schema"] = kSchemaName;
  out["command"] = "eval";
  out["graph"] = graph_json(g);
  out["clustering"] = clustering_json(g, z);
  out["surprise"] = surprise_json(evaluate(g, z), digits, sci_digits);
  return out;
}

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Exact: return "exact";
    case Variant::Relaxed: return "relaxed";
    default: return "gap";
  }
}

inline const char* action_name(KAction a) {
  switch (a) {
    case KAction::Solved: return "solved";
    case KAction::PrunedByBound: return "pruned_by_bound";
    default: return "pruned_infeasible";
  }
}

inline Json report_json(const Graph& g, const SweepConfig& cfg,
                        const SweepReport& rep, int digits, int sci_digits) {
  Json out;
  out["schema"] = kSchemaName;
  out["command"] = "optimize";
  out["graph"] = graph_json(g);
  out["config"] = Json{{"variant", variant_name(cfg.variant)},
                       {"psk", cfg.use_psk},
                       {"tf", cfg.use_tf},
                       {"emi", cfg.use_emi}};
  out["status"] = rep.run_status == RunStatus::Optimal ? "optimal" : "bounded";
  Json best = clustering_json(g, rep.best_clustering);
  best["surprise"] = surprise_json(rep.best_value, digits, sci_digits);
  out["best"] = best;
  Json per_k = Json::array();
  for (const auto& e : rep.per_k) {
    Json row;
    row["k"] = e.k;
    row["action"] = action_name(e.action);
    if (e.bound) row["bound"] = surprise_json(*e.bound, digits, sci_digits);
    if (e.objective) row["objective"] = *e.objective;
    if (e.sol_ie) row["intra_edges"] = *e.sol_ie;
    if (e.sol_ip) row["intra_pairs"] = *e.sol_ip;
    row["nodes"] = e.nodes;
    per_k.push_back(row);
  }
  out["per_k"] = per_k;
  out["totals"] = Json{{"solved", rep.totals.solved},
                       {"pruned_by_bound", rep.totals.pruned_by_bound},
                       {"pruned_infeasible", rep.totals.pruned_infeasible},
                       {"nodes", rep.totals.nodes},
                       {"wall_time_s", rep.totals.wall_time_s}};
  return out;
}

inline Json tree_json(const Graph& g, const TreeOptimum& opt, int digits,
                      int sci_digits) {
  Json out;
  out["schema"] = kSchemaName;
  out["command"] = "tree";
  out["graph"] = graph_json(g);
  Json best = clustering_json(g, opt.clustering);
  best["surprise"] = surprise_json(opt.value, digits, sci_digits);
  out["best"] = best;
  out["removed_edges"] = opt.removed_edges;
  return out;
}

inline Json oracle_json(const Graph& g, const OracleOptimum& opt, int digits,
                        int sci_digits) {
  Json out;
  out["schema"] = kSchemaName;
  out["command"] = "oracle";
  out["graph"] = graph_json(g);
  Json best = clustering_json(g, opt.clustering);
  best["surprise"] = surprise_json(opt.value, digits, sci_digits);
  out["best"] = best;
  out["partitions_enumerated"] = opt.partitions;
  return out;
}

inline Json error_json(const std::string& kind, const std::string& message,
                       int line = 0) {
  Json err{{"kind", kind}, {"message", message}};
  if (line > 0) err["line"] = line;
  return Json{{"schema", kSchemaName}, {"error", err}};
}

}  // namespace surprise
