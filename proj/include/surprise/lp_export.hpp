#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "surprise/graph.hpp"
#include "surprise/minip.hpp"
#include "surprise/separator.hpp"

namespace surprise {

namespace detail {

inline std::string var_name(int u, int v) {
  if (u > v) std::swap(u, v);
  return "x_" + std::to_string(u) + "_" + std::to_string(v);
}

class LpWriter {
 public:
  explicit LpWriter(std::ostringstream& out) : out_(out) {}

  void term(long long coeff, const std::string& var) {
    if (coeff == 0) return;
    std::string t;
    if (first_) {
      if (coeff == -1)
        t = "- ";
      else if (coeff < 0)
        t = "- " + std::to_string(-coeff) + " ";
      else if (coeff != 1)
        t = std::to_string(coeff) + " ";
    } else {
      t = coeff < 0 ? "- " : "+ ";
      long long a = coeff < 0 ? -coeff : coeff;
      if (a != 1) t += std::to_string(a) + " ";
    }
    t += var;
    if (!first_ && col_ + t.size() + 1 > 78) {
      out_ << "\n   ";
      col_ = 3;
    } else if (!first_) {
      out_ << ' ';
      ++col_;
    }
    out_ << t;
    col_ += t.size();
    first_ = false;
  }

  void finish(const std::string& tail) {
    out_ << ' ' << tail << '\n';
    first_ = true;
    col_ = 0;
  }

 private:
  std::ostringstream& out_;
  bool first_ = true;
  size_t col_ = 0;
};

}  // namespace detail

// Text of a 0/1 program over pair variables x_u_v (u < v): x_u_v = 1 iff u
// and v share a cluster. Transitivity is enforced only through minimum
// vertex separators; the intra edge total is pinned to k (or bounded below
// by it). CPLEX LP format.
inline std::string export_lp(const MinIPProblem& prob) {
  prob.validate();
  const Graph& g = *prob.graph;
  const int n = g.vertex_count();
  const long long m = g.edge_count();
  std::ostringstream out;
  out << "\\ pair-variable clustering model\n";
  out << "\\ n=" << n << " m=" << m << " k=" << prob.k << " mode="
      << (prob.edge_mode == EdgeMode::Exactly ? "exactly" : "at-least")
      << " objective="
      << (prob.objective == Objective::Pairs ? "pairs" : "gap")
      << (prob.tie_mode == TieMode::MaxEdges ? " tie=max-edges" : "") << "\n";
  out << "Minimize\n obj: ";
  {
    detail::LpWriter w(out);
    bool wrote = false;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        long long c;
        if (prob.objective == Objective::Pairs)
          c = prob.tie_mode == TieMode::MaxEdges ? (g.has_edge(u, v) ? m - 1 : m)
                                                 : 1;
        else
          c = prob.tie_mode == TieMode::MaxEdges ? (g.has_edge(u, v) ? -1 : m)
                                                 : (g.has_edge(u, v) ? 0 : 1);
        if (c != 0) wrote = true;
        w.term(c, detail::var_name(u, v));
      }
    if (!wrote) w.term(0, "");  // all-zero objective: leave the row empty
    out << "\n";
  }
  out << "Subject To\n";
  std::map<std::pair<int, int>, std::vector<int>> seps;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      auto it = seps.find(key);
      if (it == seps.end())
        it = seps.emplace(key, min_vertex_separator(g, key.first, key.second)).first;
      for (int w : it->second) {
        out << " t_" << u << "_" << v << "_" << w << ": " << detail::var_name(u, w)
            << " + " << detail::var_name(w, v) << " - " << detail::var_name(u, v)
            << " <= 1\n";
      }
    }
  if (m > 0) {
    out << " edges: ";
    detail::LpWriter w(out);
    for (auto [u, v] : g.edges()) w.term(1, detail::var_name(u, v));
    w.finish(std::string(prob.edge_mode == EdgeMode::Exactly ? "=" : ">=") +
             " " + std::to_string(prob.k));
  }
  out << "Binary\n";
  {
    size_t col = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        std::string name = detail::var_name(u, v);
        if (col + name.size() + 1 > 78) {
          out << "\n";
          col = 0;
        }
        out << ' ' << name;
        col += name.size() + 1;
      }
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace surprise
