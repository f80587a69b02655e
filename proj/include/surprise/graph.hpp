#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "surprise/common.hpp"

namespace surprise {

enum class GraphFormat { EdgeList, Metis };

struct ParseOptions {
  GraphFormat format = GraphFormat::EdgeList;
  bool one_based = false;  // edge-list ids start at 1 (METIS is always 1-based)
};

// Simple undirected graph, vertices 0..n-1, no self-loops, no multi-edges.
// Original input ids survive as string labels.
class Graph {
 public:
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges,
                          std::vector<std::string> labels = {}) {
    if (n < 1) throw ValidationError("graph needs at least one vertex");
    Graph g;
    g.n_ = n;
    for (auto& [u, v] : edges) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw ValidationError("edge endpoint out of range: " +
                              std::to_string(u) + " " + std::to_string(v));
      if (u == v)
        throw ValidationError("self-loop rejected at vertex " +
                              std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
      if (edges[i] == edges[i - 1])
        throw ValidationError("duplicate edge rejected: " +
                              std::to_string(edges[i].first) + " " +
                              std::to_string(edges[i].second));
    g.edges_ = std::move(edges);
    g.adj_.assign(static_cast<size_t>(n), {});
    for (auto [u, v] : g.edges_) {
      g.adj_[static_cast<size_t>(u)].push_back(v);
      g.adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& a : g.adj_) std::sort(a.begin(), a.end());
    if (labels.empty()) {
      labels.reserve(static_cast<size_t>(n));
      for (int v = 0; v < n; ++v) labels.push_back(std::to_string(v));
    }
    if (static_cast<int>(labels.size()) != n)
      throw ValidationError("label count does not match vertex count");
    g.labels_ = std::move(labels);
    g.words_ = static_cast<size_t>((n + 63) / 64);
    g.bits_.assign(g.words_ * static_cast<size_t>(n), 0);
    for (auto [u, v] : g.edges_) {
      g.bits_[static_cast<size_t>(u) * g.words_ + static_cast<size_t>(v) / 64] |=
          uint64_t{1} << (v % 64);
      g.bits_[static_cast<size_t>(v) * g.words_ + static_cast<size_t>(u) / 64] |=
          uint64_t{1} << (u % 64);
    }
    return g;
  }

  int vertex_count() const { return n_; }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }
  long long pair_count() const {
    return static_cast<long long>(n_) * (n_ - 1) / 2;
  }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const {
    return adj_[static_cast<size_t>(v)];
  }
  int degree(int v) const {
    return static_cast<int>(adj_[static_cast<size_t>(v)].size());
  }
  bool has_edge(int u, int v) const {
    if (u == v) return false;
    return bits_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v) / 64] >>
               (v % 64) &
           1;
  }
  const std::string& label(int v) const { return labels_[static_cast<size_t>(v)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // index of the vertex carrying `label`, -1 if absent
  int vertex_by_label(const std::string& label) const {
    for (int v = 0; v < n_; ++v)
      if (labels_[static_cast<size_t>(v)] == label) return v;
    return -1;
  }
  size_t mask_words() const { return words_; }
  const uint64_t* adjacency_mask(int v) const {
    return bits_.data() + static_cast<size_t>(v) * words_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> labels_;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

namespace detail {

inline std::string strip_comment(const std::string& line, char marker) {
  auto pos = line.find(marker);
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool parse_int_token(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  size_t i = 0;
  if (tok[0] == '-') i = 1;
  if (i == tok.size()) return false;
  long long v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    v = v * 10 + (tok[i] - '0');
    if (v > (1ll << 40)) return false;
  }
  out = tok[0] == '-' ? -v : v;
  return true;
}

inline Graph parse_edge_list(std::istream& in, bool one_based) {
  struct Row {
    long long a, b;
    int line;
  };
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line, '#'));
    std::string ta, tb, extra;
    if (!(ss >> ta)) continue;  // blank
    if (!(ss >> tb)) throw ParseError("expected two integers", lineno);
    if (ss >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
    long long a, b;
    if (!parse_int_token(ta, a) || !parse_int_token(tb, b))
      throw ParseError("non-integer token", lineno);
    rows.push_back({a, b, lineno});
  }
  if (rows.empty()) throw ParseError("no data lines found");
  const long long base = one_based ? 1 : 0;
  // A leading "n m" header is recognized when the remaining line count
  // equals m and every id fits in [base, base+n).
  bool header = false;
  if (rows.size() >= 1 &&
      static_cast<long long>(rows.size()) - 1 == rows[0].b && rows[0].a >= 1) {
    header = true;
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].a < base || rows[i].a >= base + rows[0].a ||
          rows[i].b < base || rows[i].b >= base + rows[0].a) {
        header = false;
        break;
      }
  }
  long long n;
  size_t first = header ? 1 : 0;
  if (header) {
    n = rows[0].a;
  } else {
    n = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (r.a < base || r.b < base)
        throw ParseError("vertex id below " + std::to_string(base), r.line);
      n = std::max({n, r.a - base + 1, r.b - base + 1});
    }
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(rows.size() - first);
  for (size_t i = first; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.a < base || r.a >= base + n || r.b < base || r.b >= base + n)
      throw ParseError("vertex id out of range", r.line);
    if (r.a == r.b) throw ParseError("self-loop rejected", r.line);
    edges.emplace_back(static_cast<int>(r.a - base),
                       static_cast<int>(r.b - base));
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (long long v = 0; v < n; ++v) labels.push_back(std::to_string(v + base));
  return Graph::from_edges(static_cast<int>(n), std::move(edges),
                           std::move(labels));
}

inline Graph parse_metis(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto is_comment_line = [](const std::string& s) {
    auto pos = s.find_first_not_of(" \t\r");
    return pos != std::string::npos && s[pos] == '%';
  };
  // header: n m [fmt]; leading blank/comment lines skipped
  std::string hdr;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_line(line)) continue;
    hdr = strip_comment(line, '%');
    if (hdr.find_first_not_of(" \t\r") != std::string::npos) break;
    hdr.clear();
  }
  if (hdr.empty()) throw ParseError("missing header line");
  std::istringstream hs(hdr);
  long long n = 0, m = 0, fmt = 0;
  std::string tn, tm, tf;
  if (!(hs >> tn >> tm)) throw ParseError("header needs n and m", lineno);
  if (!parse_int_token(tn, n) || !parse_int_token(tm, m))
    throw ParseError("non-integer header token", lineno);
  if (hs >> tf) {
    if (!parse_int_token(tf, fmt) || fmt != 0)
      throw ParseError("weighted formats unsupported", lineno);
    std::string extra;
    if (hs >> extra) throw ParseError("trailing header token", lineno);
  }
  if (n < 1) throw ParseError("header vertex count must be positive", lineno);
  std::vector<std::vector<long long>> nbr(static_cast<size_t>(n));
  for (long long v = 0; v < n; ++v) {
    // comment lines do not count as adjacency rows; blank lines do
    do {
      if (!std::getline(in, line))
        throw ParseError("expected " + std::to_string(n) + " adjacency lines");
      ++lineno;
    } while (is_comment_line(line));
    std::istringstream ss(strip_comment(line, '%'));
    std::string tok;
    while (ss >> tok) {
      long long w;
      if (!parse_int_token(tok, w)) throw ParseError("non-integer token", lineno);
      if (w < 1 || w > n) throw ParseError("neighbor id out of range", lineno);
      if (w == v + 1) throw ParseError("self-loop rejected", lineno);
      nbr[static_cast<size_t>(v)].push_back(w - 1);
    }
  }
  long long half_edges = 0;
  std::vector<std::pair<int, int>> edges;
  for (long long v = 0; v < n; ++v) {
    auto& a = nbr[static_cast<size_t>(v)];
    std::sort(a.begin(), a.end());
    for (size_t i = 1; i < a.size(); ++i)
      if (a[i] == a[i - 1])
        throw ValidationError("duplicate neighbor " + std::to_string(a[i] + 1) +
                              " in adjacency of vertex " + std::to_string(v + 1));
    half_edges += static_cast<long long>(a.size());
    for (long long w : a) {
      const auto& back = nbr[static_cast<size_t>(w)];
      if (!std::binary_search(back.begin(), back.end(), v))
        throw ValidationError("asymmetric adjacency between vertices " +
                              std::to_string(v + 1) + " and " +
                              std::to_string(w + 1));
      if (v < w) edges.emplace_back(static_cast<int>(v), static_cast<int>(w));
    }
  }
  if (half_edges != 2 * m)
    throw ValidationError("header edge count " + std::to_string(m) +
                          " does not match adjacency (" +
                          std::to_string(half_edges) + " entries)");
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (long long v = 1; v <= n; ++v) labels.push_back(std::to_string(v));
  return Graph::from_edges(static_cast<int>(n), std::move(edges),
                           std::move(labels));
}

}  // namespace detail

inline Graph parse_graph(std::istream& in, const ParseOptions& opt = {}) {
  return opt.format == GraphFormat::Metis ? detail::parse_metis(in)
                                          : detail::parse_edge_list(in, opt.one_based);
}

// Canonical "n m" header plus sorted 0-based edge lines.
inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

// Components ordered by smallest member; members ascending.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<size_t>(s)] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    stack.push_back(s);
    comp[static_cast<size_t>(s)] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[static_cast<size_t>(id)].push_back(v);
      for (int w : g.neighbors(v))
        if (comp[static_cast<size_t>(w)] == -1) {
          comp[static_cast<size_t>(w)] = id;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline bool is_forest(const Graph& g) {
  auto comps = connected_components(g);
  return g.edge_count() ==
         g.vertex_count() - static_cast<long long>(comps.size());
}

inline bool is_tree(const Graph& g) {
  return is_forest(g) && g.edge_count() == g.vertex_count() - 1;
}

}  // namespace surprise
