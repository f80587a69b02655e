#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "surprise/graph.hpp"

namespace testutil {

using surprise::Graph;

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

inline Graph grid_graph(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, e);
}

// G(n, p), possibly disconnected
inline Graph random_graph(uint64_t seed, int n, double p) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

// uniform random labelled tree via a Pruefer sequence
inline Graph random_tree(uint64_t seed, int n) {
  if (n == 1) return Graph::from_edges(1, {});
  std::mt19937_64 rng(seed);
  std::vector<int> pruefer(static_cast<size_t>(n - 2));
  for (auto& x : pruefer) x = static_cast<int>(rng() % static_cast<uint64_t>(n));
  std::vector<int> degree(static_cast<size_t>(n), 1);
  for (int x : pruefer) ++degree[static_cast<size_t>(x)];
  std::vector<std::pair<int, int>> e;
  for (int x : pruefer) {
    for (int leaf = 0; leaf < n; ++leaf)
      if (degree[static_cast<size_t>(leaf)] == 1) {
        e.emplace_back(std::min(leaf, x), std::max(leaf, x));
        --degree[static_cast<size_t>(leaf)];
        --degree[static_cast<size_t>(x)];
        break;
      }
  }
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v)
    if (degree[static_cast<size_t>(v)] == 1) (a == -1 ? a : b) = v;
  e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

// min sum of squared component sizes over all ways to delete exactly k edges
inline long long min_square_sum_after_deletions(const Graph& g, long long k) {
  const auto& edges = g.edges();
  const int m = static_cast<int>(edges.size());
  const int n = g.vertex_count();
  long long best = -1;
  for (uint32_t mask = 0; mask < (uint32_t{1} << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> cid(static_cast<size_t>(n), -1);
    std::vector<int> stack;
    int next = 0;
    for (int s = 0; s < n; ++s) {
      if (cid[static_cast<size_t>(s)] != -1) continue;
      cid[static_cast<size_t>(s)] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int t = 0; t < m; ++t) {
          if (mask >> t & 1) continue;
          auto [a, b] = edges[static_cast<size_t>(t)];
          int w = a == v ? b : b == v ? a : -1;
          if (w != -1 && cid[static_cast<size_t>(w)] == -1) {
            cid[static_cast<size_t>(w)] = next;
            stack.push_back(w);
          }
        }
      }
      ++next;
    }
    std::vector<long long> size(static_cast<size_t>(next), 0);
    for (int v = 0; v < n; ++v) ++size[static_cast<size_t>(cid[static_cast<size_t>(v)])];
    long long total = 0;
    for (long long s : size) total += s * s;
    if (best == -1 || total < best) best = total;
  }
  return best;
}

// every connected graph with n vertices, one representative per isomorphism
// class, keyed by the minimum edge bitmask over all vertex relabelings
inline std::vector<Graph> connected_graphs_up_to_iso(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int np = static_cast<int>(pairs.size());
  std::vector<int> pair_id(static_cast<size_t>(n * n), -1);
  for (int t = 0; t < np; ++t) {
    pair_id[static_cast<size_t>(pairs[t].first * n + pairs[t].second)] = t;
    pair_id[static_cast<size_t>(pairs[t].second * n + pairs[t].first)] = t;
  }
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto connected = [&](uint32_t mask) {
    std::vector<int> seen(static_cast<size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int t = 0; t < np; ++t)
        if (mask >> t & 1) {
          int w = -1;
          if (pairs[static_cast<size_t>(t)].first == v) w = pairs[static_cast<size_t>(t)].second;
          if (pairs[static_cast<size_t>(t)].second == v) w = pairs[static_cast<size_t>(t)].first;
          if (w != -1 && !seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            ++count;
            stack.push_back(w);
          }
        }
    }
    return count == n;
  };

  std::vector<Graph> out;
  for (uint32_t mask = 0; mask < (uint32_t{1} << np); ++mask) {
    if (n > 1 && !connected(mask)) continue;
    uint32_t canon = mask;
    for (const auto& pm : perms) {
      uint32_t remapped = 0;
      for (int t = 0; t < np; ++t)
        if (mask >> t & 1) {
          int u = pm[static_cast<size_t>(pairs[static_cast<size_t>(t)].first)];
          int v = pm[static_cast<size_t>(pairs[static_cast<size_t>(t)].second)];
          remapped |= uint32_t{1} << pair_id[static_cast<size_t>(u * n + v)];
        }
      canon = std::min(canon, remapped);
    }
    if (canon != mask) continue;
    std::vector<std::pair<int, int>> e;
    for (int t = 0; t < np; ++t)
      if (mask >> t & 1) e.push_back(pairs[static_cast<size_t>(t)]);
    out.push_back(Graph::from_edges(n, e));
  }
  return out;
}

}  // namespace testutil
