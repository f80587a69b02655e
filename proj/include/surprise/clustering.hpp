#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "surprise/common.hpp"
#include "surprise/graph.hpp"

namespace surprise {

// Partition of the vertex set. Cluster ids are dense, 0-based, ordered by
// first occurrence along the vertex order.
struct Clustering {
  std::vector<int> assignment;
  int cluster_count = 0;
  long long intra_edges = 0;
  long long intra_pairs = 0;

  static Clustering from_assignment(const Graph& g, const std::vector<int>& raw) {
    const int n = g.vertex_count();
    if (static_cast<int>(raw.size()) != n)
      throw ValidationError("assignment size does not match vertex count");
    Clustering c;
    c.assignment.assign(static_cast<size_t>(n), -1);
    std::map<int, int> remap;
    for (int v = 0; v < n; ++v) {
      auto [it, fresh] = remap.try_emplace(raw[static_cast<size_t>(v)],
                                           static_cast<int>(remap.size()));
      c.assignment[static_cast<size_t>(v)] = it->second;
      (void)fresh;
    }
    c.cluster_count = static_cast<int>(remap.size());
    std::vector<long long> size(static_cast<size_t>(c.cluster_count), 0);
    for (int v = 0; v < n; ++v) ++size[static_cast<size_t>(c.assignment[static_cast<size_t>(v)])];
    for (long long s : size) c.intra_pairs += s * (s - 1) / 2;
    for (auto [u, v] : g.edges())
      if (c.assignment[static_cast<size_t>(u)] == c.assignment[static_cast<size_t>(v)])
        ++c.intra_edges;
    return c;
  }

  std::vector<std::vector<int>> clusters() const {
    std::vector<std::vector<int>> out(static_cast<size_t>(cluster_count));
    for (size_t v = 0; v < assignment.size(); ++v)
      out[static_cast<size_t>(assignment[v])].push_back(static_cast<int>(v));
    return out;
  }

  bool operator==(const Clustering& o) const { return assignment == o.assignment; }
};

inline Clustering singletons(const Graph& g) {
  std::vector<int> a(static_cast<size_t>(g.vertex_count()));
  for (size_t v = 0; v < a.size(); ++v) a[v] = static_cast<int>(v);
  return Clustering::from_assignment(g, a);
}

inline Clustering whole_graph(const Graph& g) {
  return Clustering::from_assignment(
      g, std::vector<int>(static_cast<size_t>(g.vertex_count()), 0));
}

// Partition file: one "label clusterId" pair per line, '#' comments.
inline Clustering parse_partition(std::istream& in, const Graph& g) {
  const int n = g.vertex_count();
  std::map<std::string, int> by_label;
  for (int v = 0; v < n; ++v) {
    if (!by_label.emplace(g.label(v), v).second)
      throw ValidationError("graph labels are not unique");
  }
  std::vector<int> raw(static_cast<size_t>(n));
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(detail::strip_comment(line, '#'));
    std::string label, tok, extra;
    if (!(ss >> label)) continue;
    if (!(ss >> tok)) throw ParseError("expected 'label clusterId'", lineno);
    if (ss >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
    long long cid;
    if (!detail::parse_int_token(tok, cid) || cid < 0)
      throw ParseError("cluster id must be a non-negative integer", lineno);
    auto it = by_label.find(label);
    if (it == by_label.end())
      throw ParseError("unknown vertex label '" + label + "'", lineno);
    if (seen[static_cast<size_t>(it->second)])
      throw ParseError("vertex '" + label + "' assigned twice", lineno);
    seen[static_cast<size_t>(it->second)] = true;
    raw[static_cast<size_t>(it->second)] = static_cast<int>(cid);
  }
  for (int v = 0; v < n; ++v)
    if (!seen[static_cast<size_t>(v)])
      throw ValidationError("vertex '" + g.label(v) + "' missing from partition");
  return Clustering::from_assignment(g, raw);
}

inline void write_partition(std::ostream& out, const Graph& g,
                            const Clustering& c) {
  for (int v = 0; v < g.vertex_count(); ++v)
    out << g.label(v) << ' ' << c.assignment[static_cast<size_t>(v)] << '\n';
}

}  // namespace surprise
