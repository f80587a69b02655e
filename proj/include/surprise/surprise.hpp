#pragma once

#include <algorithm>
#include <compare>
#include <string>

#include "surprise/bigmath.hpp"
#include "surprise/clustering.hpp"
#include "surprise/common.hpp"
#include "surprise/graph.hpp"

namespace surprise {

// The four counts the score depends on: total vertex pairs p, total edges m,
// intra-cluster pairs ip and intra-cluster edges ie.
struct PairEdgeCounts {
  long long p = 0;
  long long m = 0;
  long long ip = 0;
  long long ie = 0;

  bool valid() const {
    return 0 <= ie && ie <= ip && ip <= p && ie <= m && m - ie <= p - ip;
  }
  void validate() const {
    if (!valid())
      throw ValidationError(
          "inconsistent counts: p=" + std::to_string(p) + " m=" +
          std::to_string(m) + " ip=" + std::to_string(ip) + " ie=" +
          std::to_string(ie));
  }
};

// Exact tail probability, plus decimal renderings computed on demand.
// Lower is better; comparisons are exact rational comparisons.
struct SurpriseValue {
  Rational probability;

  std::string neg_log10(int digits = 15) const {
    return neg_log10_decimal(probability, digits);
  }
  double neg_log10_value() const { return neg_log10_approx(probability); }
  std::string scientific(int digits = 6) const {
    return to_scientific(probability, digits);
  }

  friend bool operator==(const SurpriseValue& a, const SurpriseValue& b) {
    return a.probability == b.probability;
  }
  friend bool operator<(const SurpriseValue& a, const SurpriseValue& b) {
    return a.probability < b.probability;
  }
  friend bool operator<=(const SurpriseValue& a, const SurpriseValue& b) {
    return a.probability <= b.probability;
  }
  friend bool operator>(const SurpriseValue& a, const SurpriseValue& b) {
    return a.probability > b.probability;
  }
  friend bool operator>=(const SurpriseValue& a, const SurpriseValue& b) {
    return a.probability >= b.probability;
  }
};

// P[X >= ie] for X hypergeometric with population p, ip marked, m draws.
// Summed over the feasible range with one running product; everything exact.
inline SurpriseValue surprise_of(const PairEdgeCounts& c) {
  c.validate();
  if (c.ie == 0 || c.p - c.ip == c.m - c.ie) return {Rational(1)};
  const long long lo = std::max(c.ie, c.m - (c.p - c.ip));
  const long long hi = std::min(c.m, c.ip);
  if (lo > hi) throw InvariantError("empty summation range for valid counts");
  BigInt term = binomial(static_cast<uint64_t>(c.ip), static_cast<uint64_t>(lo)) *
                binomial(static_cast<uint64_t>(c.p - c.ip),
                         static_cast<uint64_t>(c.m - lo));
  BigInt sum = term;
  for (long long i = lo; i < hi; ++i) {
    // C(ip,i+1)C(p-ip,m-i-1) from C(ip,i)C(p-ip,m-i)
    term *= static_cast<long>(c.ip - i);
    term *= static_cast<long>(c.m - i);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(),
                    static_cast<unsigned long>(i + 1));
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(),
                    static_cast<unsigned long>(c.p - c.ip - c.m + i + 1));
    sum += term;
  }
  Rational q(sum, binomial(static_cast<uint64_t>(c.p), static_cast<uint64_t>(c.m)));
  q.canonicalize();
  return {q};
}

inline PairEdgeCounts counts_of(const Graph& g, const Clustering& z) {
  return {g.pair_count(), g.edge_count(), z.intra_pairs, z.intra_edges};
}

inline SurpriseValue evaluate(const Graph& g, const Clustering& z) {
  return surprise_of(counts_of(g, z));
}

// Best score any clustering with exactly kp intra edges can reach, given that
// min intra pairs over clusterings with at least k intra edges was ip_at_k
// (computed for some k <= kp). Clamped so the counts stay consistent.
inline SurpriseValue bound_relaxed(long long ip_at_k, long long kp, long long p,
                                   long long m) {
  PairEdgeCounts c{p, m, std::max(ip_at_k, kp), kp};
  c.validate();
  return surprise_of(c);
}

// Same role for the gap objective: gap_at_k = min (ip - ie) over clusterings
// with at least k intra edges.
inline SurpriseValue bound_gap(long long gap_at_k, long long kp, long long p,
                               long long m) {
  PairEdgeCounts c{p, m, kp + gap_at_k, kp};
  c.validate();
  return surprise_of(c);
}

}  // namespace surprise
