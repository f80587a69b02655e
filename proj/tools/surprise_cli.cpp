#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "surprise/json_io.hpp"
#include "surprise/lp_export.hpp"
#include "surprise/oracle.hpp"
#include "surprise/sweep.hpp"

namespace {

using namespace surprise;

struct IoOptions {
  std::string format = "edge-list";
  bool one_based = false;
  int digits = 15;
  int sci_digits = 6;
};

Graph load_graph(const std::string& path, const IoOptions& io) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  ParseOptions opt;
  opt.format = io.format == "metis" ? GraphFormat::Metis : GraphFormat::EdgeList;
  opt.one_based = io.one_based;
  return parse_graph(in, opt);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
}

void write_json(const std::string& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_partition_file(const std::string& path, const Graph& g,
                          const Clustering& z) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  write_partition(out, g, z);
}

Variant parse_variant(const std::string& s) {
  if (s == "exact") return Variant::Exact;
  if (s == "relaxed") return Variant::Relaxed;
  if (s == "gap") return Variant::Gap;
  throw ValidationError("unknown variant: " + s);
}

struct BenchRow {
  size_t graph_idx;
  SweepConfig cfg;
};

int run_bench(const std::string& list_path, const std::string& out_path,
              const std::string& props_path, std::optional<double> time_limit,
              int threads, const IoOptions& io) {
  std::ifstream in(list_path);
  if (!in) throw ValidationError("cannot open graph list: " + list_path);
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    auto stripped = detail::strip_comment(line, '#');
    std::istringstream ss(stripped);
    std::string tok;
    if (ss >> tok) paths.push_back(tok);
  }
  if (paths.empty()) throw ValidationError("graph list is empty");
  std::vector<Graph> graphs;
  graphs.reserve(paths.size());
  for (const auto& p : paths) graphs.push_back(load_graph(p, io));

  std::vector<BenchRow> rows;
  for (size_t gi = 0; gi < graphs.size(); ++gi)
    for (Variant v : {Variant::Exact, Variant::Relaxed, Variant::Gap})
      for (int psk = 0; psk < 2; ++psk)
        for (int tf = 0; tf < 2; ++tf)
          for (int emi = 0; emi < 2; ++emi) {
            if (emi && v == Variant::Exact) continue;
            rows.push_back({gi, SweepConfig{v, psk != 0, tf != 0, emi != 0}});
          }

  std::vector<SweepReport> reports(rows.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= rows.size()) return;
      SweepLimits limits;
      limits.time_limit_s = time_limit;
      reports[i] = optimize(graphs[rows[i].graph_idx], rows[i].cfg, limits);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "graph,variant,psk,tf,emi,status,solved,pruned_by_bound,"
         "pruned_infeasible,nodes,neg_log10,wall_time_s\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& rep = reports[i];
    csv << paths[r.graph_idx] << ',' << variant_name(r.cfg.variant) << ','
        << (r.cfg.use_psk ? 1 : 0) << ',' << (r.cfg.use_tf ? 1 : 0) << ','
        << (r.cfg.use_emi ? 1 : 0) << ','
        << (rep.run_status == RunStatus::Optimal ? "optimal" : "bounded") << ','
        << rep.totals.solved << ',' << rep.totals.pruned_by_bound << ','
        << rep.totals.pruned_infeasible << ',' << rep.totals.nodes << ','
        << rep.best_value.neg_log10(io.digits) << ',' << rep.totals.wall_time_s
        << "\n";
  }
  write_text(out_path, csv.str());

  if (!props_path.empty()) {
    std::ostringstream props;
    props << "graph,n,m,clusters,intra_edges,intra_pairs,neg_log10,"
             "probability\n";
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
      // reference run: plain gap sweep appears once per graph in the grid
      const SweepReport* ref = nullptr;
      for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].graph_idx == gi && rows[i].cfg.variant == Variant::Gap &&
            !rows[i].cfg.use_psk && !rows[i].cfg.use_tf && !rows[i].cfg.use_emi)
          ref = &reports[i];
      if (!ref) continue;
      props << paths[gi] << ',' << graphs[gi].vertex_count() << ','
            << graphs[gi].edge_count() << ',' << ref->best_clustering.cluster_count
            << ',' << ref->best_ie << ',' << ref->best_ip << ','
            << ref->best_value.neg_log10(io.digits) << ','
            << ref->best_value.scientific(io.sci_digits) << "\n";
    }
    write_text(props_path, props.str());
  }
  for (const auto& rep : reports)
    if (rep.run_status == RunStatus::Bounded) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact surprise clustering toolkit"};
  app.require_subcommand(1);
  IoOptions io;
  app.add_option("--format", io.format, "graph file format")
      ->check(CLI::IsMember({"edge-list", "metis"}))
      ->capture_default_str();
  app.add_flag("--one-based", io.one_based, "edge-list vertex ids start at 1");
  app.add_option("--digits", io.digits, "significant digits for -log10 output")
      ->check(CLI::Range(2, 50))
      ->capture_default_str();
  app.add_option("--sci-digits", io.sci_digits,
                 "significant digits for scientific probabilities")
      ->check(CLI::Range(2, 50))
      ->capture_default_str();

  std::string graph_path, partition_path, out_path, partition_out, props_out;
  std::string variant = "gap", edge_mode = "exactly", objective = "pairs";
  bool psk = false, tf = false, emi = false;
  long long k = 0;
  std::optional<double> time_limit;
  int threads = 1;

  auto* eval = app.add_subcommand("eval", "score a given clustering");
  eval->add_option("graph", graph_path)->required();
  eval->add_option("partition", partition_path)->required();
  eval->add_option("--out", out_path, "output JSON path (default stdout)");

  auto* opt = app.add_subcommand("optimize", "find the surprise optimum");
  opt->add_option("graph", graph_path)->required();
  opt->add_option("--variant", variant)
      ->check(CLI::IsMember({"exact", "relaxed", "gap"}))
      ->capture_default_str();
  opt->add_flag("--psk", psk, "start the sweep at the clique-partition edge count");
  opt->add_flag("--tf", tf, "cap each subproblem using the incumbent");
  opt->add_flag("--emi", emi, "prefer edge-rich minimizers (relaxed/gap)");
  opt->add_option("--time-limit", time_limit, "soft wall-clock budget, seconds");
  opt->add_option("--out", out_path, "output JSON path (default stdout)");
  opt->add_option("--partition-out", partition_out, "write the best partition here");

  auto* tree = app.add_subcommand("tree", "exact optimum for forests");
  tree->add_option("graph", graph_path)->required();
  tree->add_option("--out", out_path, "output JSON path (default stdout)");
  tree->add_option("--partition-out", partition_out, "write the best partition here");

  auto* oracle = app.add_subcommand("oracle", "brute-force optimum (small graphs)");
  oracle->add_option("graph", graph_path)->required();
  oracle->add_option("--out", out_path, "output JSON path (default stdout)");

  auto* lp = app.add_subcommand("export-lp", "write the 0/1 program for one k");
  lp->add_option("graph", graph_path)->required();
  lp->add_option("-k,--k", k, "intra edge count")->required();
  lp->add_option("--mode", edge_mode)
      ->check(CLI::IsMember({"exactly", "at-least"}))
      ->capture_default_str();
  lp->add_option("--objective", objective)
      ->check(CLI::IsMember({"pairs", "gap"}))
      ->capture_default_str();
  lp->add_flag("--emi", emi, "edge-rich tie-breaking objective");
  lp->add_option("--out", out_path, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "sweep a list of graphs, CSV out");
  bench->add_option("list", graph_path, "file with one graph path per line")
      ->required();
  bench->add_option("--out", out_path, "CSV output path (default stdout)");
  bench->add_option("--properties-out", props_out,
                    "per-graph optimum properties CSV");
  bench->add_option("--time-limit", time_limit, "per-run budget, seconds");
  bench->add_option("--threads", threads, "parallel sweep workers")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) {
      Graph g = load_graph(graph_path, io);
      std::ifstream pin(partition_path);
      if (!pin) throw ValidationError("cannot open partition file: " + partition_path);
      Clustering z = parse_partition(pin, g);
      write_json(out_path, eval_json(g, z, io.digits, io.sci_digits));
      return 0;
    }
    if (*opt) {
      Graph g = load_graph(graph_path, io);
      SweepConfig cfg{parse_variant(variant), psk, tf, emi};
      SweepLimits limits;
      limits.time_limit_s = time_limit;
      SweepReport rep = optimize_auto(g, cfg, limits);
      write_json(out_path, report_json(g, cfg, rep, io.digits, io.sci_digits));
      write_partition_file(partition_out, g, rep.best_clustering);
      return rep.run_status == RunStatus::Bounded ? 3 : 0;
    }
    if (*tree) {
      Graph g = load_graph(graph_path, io);
      TreeOptimum best = surprise_optimal_forest(g);
      write_json(out_path, tree_json(g, best, io.digits, io.sci_digits));
      write_partition_file(partition_out, g, best.clustering);
      return 0;
    }
    if (*oracle) {
      Graph g = load_graph(graph_path, io);
      OracleOptimum best = brute_force_surprise_optimum(g);
      write_json(out_path, oracle_json(g, best, io.digits, io.sci_digits));
      return 0;
    }
    if (*lp) {
      Graph g = load_graph(graph_path, io);
      MinIPProblem prob;
      prob.graph = &g;
      prob.k = k;
      prob.edge_mode = edge_mode == "exactly" ? EdgeMode::Exactly : EdgeMode::AtLeast;
      prob.objective = objective == "pairs" ? Objective::Pairs : Objective::Gap;
      prob.tie_mode = emi ? TieMode::MaxEdges : TieMode::None;
      write_text(out_path, export_lp(prob));
      return 0;
    }
    if (*bench)
      return run_bench(graph_path, out_path, props_out, time_limit, threads, io);
  } catch (const ParseError& e) {
    std::cerr << error_json("parse", e.what(), e.line()).dump(2) << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << error_json("validation", e.what()).dump(2) << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << error_json("guard", e.what()).dump(2) << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << error_json("internal", e.what()).dump(2) << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump(2) << "\n";
    return 4;
  }
  return 0;
}
