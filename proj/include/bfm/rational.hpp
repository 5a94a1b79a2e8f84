#pragma once
// Rational parsing/rendering and the sampling-threshold factor.

#include <cstdint>
#include <string>

#include "bfm/types.hpp"

namespace bfm {

// Accepts "p", "-p", "p/q" with optional sign on p; q > 0 after normalization.
inline Q parse_rational(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  std::size_t slash = s.find('/');
  auto digits_ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) {  // cpp_int's parser rejects a leading '+'
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  try {
    if (slash == std::string::npos) {
      if (!digits_ok(s, true)) throw input_error("bad rational literal '" + s + "'");
      return Q(BigInt(strip_plus(s)));
    }
    std::string p = strip_plus(s.substr(0, slash)), q = s.substr(slash + 1);
    if (!digits_ok(p, true) || !digits_ok(q, false))
      throw input_error("bad rational literal '" + s + "'");
    BigInt den(q);
    if (den == 0) throw input_error("zero denominator in '" + s + "'");
    return Q(BigInt(p), den);
  } catch (const input_error&) {
    throw;
  } catch (const std::exception&) {
    throw input_error("bad rational literal '" + s + "'");
  }
}

inline std::string to_string(const Q& q) { return q.str(); }  // canonical p/q

// Exact fixed-point decimal rendering (no floats): `digits` fractional digits,
// rounded half away from zero.
inline std::string decimal_string(const Q& q, int digits = 9) {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = numerator(q) * scale * 2;
  BigInt den = denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scaled = (num / den + 1) / 2;  // round half away from zero
  BigInt ip = scaled / scale, fp = scaled % scale;
  std::string frac = fp.str();
  frac.insert(frac.begin(), std::size_t(digits) - frac.size(), '0');
  // trim trailing zeros but keep at least one digit
  std::size_t last = frac.find_last_not_of('0');
  frac.erase(last == std::string::npos ? 1 : last + 1);
  return (neg ? "-" : "") + ip.str() + "." + frac;
}

inline BigInt floor_q(const Q& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt t = n / d;
  if (n % d != 0 && n < 0) --t;
  return t;
}

inline BigInt ceil_q(const Q& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt t = n / d;
  if (n % d != 0 && n > 0) ++t;
  return t;
}

namespace detail {
// log2(x) for integer x >= 1 in Q32.32 fixed point, truncated.
inline std::uint64_t log2_fix32(std::uint64_t x) {
  int ip = 63 - std::countl_zero(x);
  // mantissa in [1,2) as Q1.63
  unsigned __int128 m = static_cast<unsigned __int128>(x) << (63 - ip);
  std::uint64_t frac = 0;
  for (int i = 0; i < 32; ++i) {
    m = (m * m) >> 63;  // stays below 2^128 since m < 2^64
    frac <<= 1;
    if (m >= (static_cast<unsigned __int128>(1) << 64)) {
      frac |= 1;
      m >>= 1;
    }
  }
  return (static_cast<std::uint64_t>(ip) << 32) | frac;
}
}  // namespace detail

// Threshold factor used by the subadditive sampling mechanism:
// min(1/80, log2(log2 n) / (80 log2 n)) with both logs evaluated in Q32.32
// fixed point and the quotient taken exactly. Zero for n <= 2 (log log <= 0);
// the clamp cannot bind for n >= 3.
inline Q theta_factor(int n) {
  if (n <= 2) return Q(0);
  std::uint64_t L = detail::log2_fix32(static_cast<std::uint64_t>(n));
  std::uint64_t LL = detail::log2_fix32(L) - (std::uint64_t{32} << 32);
  Q t(BigInt(LL), BigInt(L) * 80);
  Q cap(1, 80);
  return t < cap ? t : cap;
}

}  // namespace bfm
