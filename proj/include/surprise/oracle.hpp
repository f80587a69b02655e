#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "surprise/clustering.hpp"
#include "surprise/common.hpp"
#include "surprise/graph.hpp"
#include "surprise/surprise.hpp"

namespace surprise {

inline constexpr int kOracleMaxVertices = 14;

// Visits every set partition of {0..n-1} as a restricted growth string in
// lexicographic order, from all zeros (one cluster) to 0,1,...,n-1.
inline void enumerate_partitions(int n,
                                 const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1) throw ValidationError("partition enumeration needs n >= 1");
  if (n > kOracleMaxVertices)
    throw GuardError("partition enumeration capped at n <= " +
                     std::to_string(kOracleMaxVertices));
  std::vector<int> a(static_cast<size_t>(n), 0);  // cluster ids
  std::vector<int> b(static_cast<size_t>(n), 1);  // b[i] = 1 + max(a[0..i-1])
  b[0] = 0;
  while (true) {
    visit(a);
    int i = n - 1;
    while (i > 0 && a[static_cast<size_t>(i)] == b[static_cast<size_t>(i)]) --i;
    if (i == 0) return;
    ++a[static_cast<size_t>(i)];
    int grown = std::max(b[static_cast<size_t>(i)], a[static_cast<size_t>(i)] + 1);
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<size_t>(j)] = 0;
      b[static_cast<size_t>(j)] = grown;
    }
  }
}

struct OracleOptimum {
  Clustering clustering;  // first minimizer in enumeration order
  SurpriseValue value;
  long long i_e = 0;
  long long i_p = 0;
  long long partitions = 0;
};

inline OracleOptimum brute_force_surprise_optimum(const Graph& g) {
  const int n = g.vertex_count();
  const long long p = g.pair_count();
  const long long m = g.edge_count();
  std::map<std::pair<long long, long long>, SurpriseValue> cache;
  std::optional<OracleOptimum> best;
  long long count = 0;
  enumerate_partitions(n, [&](const std::vector<int>& a) {
    ++count;
    Clustering z = Clustering::from_assignment(g, a);
    auto key = std::make_pair(z.intra_pairs, z.intra_edges);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, surprise_of({p, m, z.intra_pairs, z.intra_edges})).first;
    if (!best || it->second < best->value)
      best = OracleOptimum{std::move(z), it->second, key.second, key.first, 0};
  });
  best->partitions = count;
  return *best;
}

struct OracleMinIP {
  Clustering clustering;  // first minimizer in enumeration order
  long long i_p = 0;
  long long i_e = 0;
};

// Min intra pairs over partitions with exactly k (or at least k) intra edges.
inline std::optional<OracleMinIP> brute_force_minip(const Graph& g, long long k,
                                                    bool at_least = false) {
  std::optional<OracleMinIP> best;
  enumerate_partitions(g.vertex_count(), [&](const std::vector<int>& a) {
    Clustering z = Clustering::from_assignment(g, a);
    if (at_least ? z.intra_edges < k : z.intra_edges != k) return;
    if (!best || z.intra_pairs < best->i_p) {
      long long ip = z.intra_pairs, ie = z.intra_edges;
      best = OracleMinIP{std::move(z), ip, ie};
    }
  });
  return best;
}

}  // namespace surprise
