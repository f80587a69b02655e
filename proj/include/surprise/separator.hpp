#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "surprise/common.hpp"
#include "surprise/graph.hpp"

namespace surprise {

namespace detail {

// Unit-capacity max flow, BFS augmenting paths. Small graphs only.
class FlowNet {
 public:
  explicit FlowNet(int nodes) : head_(static_cast<size_t>(nodes), -1) {}

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, head_[static_cast<size_t>(from)], cap});
    head_[static_cast<size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[static_cast<size_t>(to)], 0});
    head_[static_cast<size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int s, int t) {
    int total = 0;
    while (true) {
      std::vector<int> via(head_.size(), -1);
      std::queue<int> q;
      q.push(s);
      via[static_cast<size_t>(s)] = -2;
      while (!q.empty() && via[static_cast<size_t>(t)] == -1) {
        int v = q.front();
        q.pop();
        for (int a = head_[static_cast<size_t>(v)]; a != -1; a = arcs_[static_cast<size_t>(a)].next)
          if (arcs_[static_cast<size_t>(a)].cap > 0) {
            int w = arcs_[static_cast<size_t>(a)].to;
            if (via[static_cast<size_t>(w)] == -1) {
              via[static_cast<size_t>(w)] = a;
              q.push(w);
            }
          }
      }
      if (via[static_cast<size_t>(t)] == -1) return total;
      for (int v = t; v != s;) {
        int a = via[static_cast<size_t>(v)];
        --arcs_[static_cast<size_t>(a)].cap;
        ++arcs_[static_cast<size_t>(a ^ 1)].cap;
        v = arcs_[static_cast<size_t>(a ^ 1)].to;
      }
      ++total;
    }
  }

  std::vector<bool> residual_reach(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[static_cast<size_t>(s)] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int a = head_[static_cast<size_t>(v)]; a != -1; a = arcs_[static_cast<size_t>(a)].next)
        if (arcs_[static_cast<size_t>(a)].cap > 0 &&
            !seen[static_cast<size_t>(arcs_[static_cast<size_t>(a)].to)]) {
          seen[static_cast<size_t>(arcs_[static_cast<size_t>(a)].to)] = true;
          q.push(arcs_[static_cast<size_t>(a)].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to, next, cap;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

// Minimum u-v vertex separator. When {u,v} is an edge it is ignored, i.e.
// the cut is computed in G minus that edge. Returns sorted vertices; empty
// when u and v end up disconnected. Deterministic for a given graph.
inline std::vector<int> min_vertex_separator(const Graph& g, int u, int v) {
  const int n = g.vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw ValidationError("separator endpoint out of range");
  if (u == v) throw ValidationError("separator endpoints must differ");
  const int INF = n + 1;
  // split vertices: w_in = 2w, w_out = 2w+1
  detail::FlowNet net(2 * n);
  for (int w = 0; w < n; ++w)
    net.add_arc(2 * w, 2 * w + 1, (w == u || w == v) ? INF : 1);
  for (auto [a, b] : g.edges()) {
    if ((a == u && b == v) || (a == v && b == u)) continue;
    net.add_arc(2 * a + 1, 2 * b, INF);
    net.add_arc(2 * b + 1, 2 * a, INF);
  }
  int flow = net.max_flow(2 * u + 1, 2 * v);
  auto reach = net.residual_reach(2 * u + 1);
  std::vector<int> sep;
  for (int w = 0; w < n; ++w) {
    if (w == u || w == v) continue;
    if (reach[static_cast<size_t>(2 * w)] && !reach[static_cast<size_t>(2 * w + 1)])
      sep.push_back(w);
  }
  if (static_cast<int>(sep.size()) != flow)
    throw InvariantError("separator size disagrees with max flow");
  return sep;
}

}  // namespace surprise
