#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <utility>

#include "surprise/common.hpp"

namespace surprise {

using BigInt = mpz_class;
using Rational = mpq_class;

namespace detail {

struct U64PairHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& p) const {
    uint64_t h = p.first * 0x9e3779b97f4a7c15ull;
    h ^= p.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

inline std::unordered_map<std::pair<uint64_t, uint64_t>, BigInt, U64PairHash>&
binomial_memo() {
  thread_local std::unordered_map<std::pair<uint64_t, uint64_t>, BigInt,
                                  U64PairHash>
      memo;
  return memo;
}

}  // namespace detail

// C(n, k) by iterative multiply / exact divide, memoized per thread.
inline const BigInt& binomial(uint64_t n, uint64_t k) {
  static const BigInt zero = 0;
  if (k > n) return zero;
  if (k > n - k) k = n - k;
  auto& memo = detail::binomial_memo();
  auto key = std::make_pair(n, k);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  BigInt r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(n - k + i));
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return memo.emplace(key, std::move(r)).first->second;
}

namespace detail {

class MpfrReal {
 public:
  explicit MpfrReal(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  ~MpfrReal() { mpfr_clear(x_); }
  MpfrReal(const MpfrReal&) = delete;
  MpfrReal& operator=(const MpfrReal&) = delete;
  mpfr_ptr get() { return x_; }

 private:
  mpfr_t x_;
};

// Digit string + decimal exponent, value = 0.d1d2... * 10^exp.
struct Digits {
  std::string digits;
  long exp = 0;
  bool negative = false;
  bool operator==(const Digits&) const = default;
};

inline Digits get_digits(mpfr_ptr x, int sig) {
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(sig), x, MPFR_RNDN);
  if (!s) throw InvariantError("mpfr_get_str failed");
  Digits d;
  d.negative = (s[0] == '-');
  d.digits = d.negative ? s + 1 : s;
  d.exp = static_cast<long>(e);
  mpfr_free_str(s);
  return d;
}

// Plain decimal when the exponent is moderate, else d.ddde[+-]XX.
inline std::string format_digits(const Digits& d, int sig) {
  const std::string& m = d.digits;
  long exp = d.exp;
  std::string out = d.negative ? "-" : "";
  if (exp > 21 || exp < -4) {
    out += m.substr(0, 1);
    if (sig > 1) out += "." + m.substr(1);
    long e10 = exp - 1;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "e%+03ld", e10);
    out += buf;
  } else if (exp <= 0) {
    out += "0.";
    out.append(static_cast<size_t>(-exp), '0');
    out += m;
  } else if (static_cast<size_t>(exp) >= m.size()) {
    out += m;
    out.append(static_cast<size_t>(exp) - m.size(), '0');
  } else {
    out += m.substr(0, static_cast<size_t>(exp)) + "." +
           m.substr(static_cast<size_t>(exp));
  }
  return out;
}

}  // namespace detail

// -log10(q) for q in (0,1], rendered with `sig` guaranteed significant digits.
// Lower/upper interval bounds are widened (directed rounding) and the
// precision doubled until both bounds print identically.
inline std::string neg_log10_decimal(const Rational& q, int sig = 15) {
  if (sig < 2) sig = 2;
  if (sgn(q) <= 0) throw InvariantError("neg_log10 of non-positive value");
  if (q == 1) return "0";
  const BigInt num = q.get_num();
  const BigInt den = q.get_den();
  for (mpfr_prec_t prec = 192; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
    detail::MpfrReal a(prec), b(prec), lo(prec), hi(prec);
    // lower bound: log10(den) rounded down minus log10(num) rounded up
    mpfr_set_z(a.get(), den.get_mpz_t(), MPFR_RNDD);
    mpfr_log10(a.get(), a.get(), MPFR_RNDD);
    mpfr_set_z(b.get(), num.get_mpz_t(), MPFR_RNDU);
    mpfr_log10(b.get(), b.get(), MPFR_RNDU);
    mpfr_sub(lo.get(), a.get(), b.get(), MPFR_RNDD);
    // upper bound: the opposite roundings
    mpfr_set_z(a.get(), den.get_mpz_t(), MPFR_RNDU);
    mpfr_log10(a.get(), a.get(), MPFR_RNDU);
    mpfr_set_z(b.get(), num.get_mpz_t(), MPFR_RNDD);
    mpfr_log10(b.get(), b.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.get(), b.get(), MPFR_RNDU);
    auto dl = detail::get_digits(lo.get(), sig);
    auto dh = detail::get_digits(hi.get(), sig);
    if (dl == dh) return detail::format_digits(dl, sig);
  }
  throw InvariantError("neg_log10 interval failed to converge");
}

// q in scientific notation d.ddd...e[+-]XX with `sig` guaranteed digits.
inline std::string to_scientific(const Rational& q, int sig = 6) {
  if (sig < 2) sig = 2;
  if (sgn(q) < 0) throw InvariantError("to_scientific of negative value");
  if (sgn(q) == 0) return "0";
  for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
    detail::MpfrReal lo(prec), hi(prec);
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    auto dl = detail::get_digits(lo.get(), sig);
    auto dh = detail::get_digits(hi.get(), sig);
    if (dl == dh) {
      std::string out = dl.digits.substr(0, 1);
      if (sig > 1) out += "." + dl.digits.substr(1);
      char buf[32];
      std::snprintf(buf, sizeof(buf), "e%+03ld", dl.exp - 1);
      return out + buf;
    }
  }
  throw InvariantError("scientific interval failed to converge");
}

inline double neg_log10_approx(const Rational& q) {
  if (sgn(q) <= 0) throw InvariantError("neg_log10 of non-positive value");
  detail::MpfrReal a(256), b(256);
  mpfr_set_z(a.get(), q.get_den().get_mpz_t(), MPFR_RNDN);
  mpfr_log10(a.get(), a.get(), MPFR_RNDN);
  mpfr_set_z(b.get(), q.get_num().get_mpz_t(), MPFR_RNDN);
  mpfr_log10(b.get(), b.get(), MPFR_RNDN);
  mpfr_sub(a.get(), a.get(), b.get(), MPFR_RNDN);
  return mpfr_get_d(a.get(), MPFR_RNDN);
}

}  // namespace surprise
