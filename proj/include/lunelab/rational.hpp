#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lunelab {

using BigInt = boost::multiprecision::cpp_int;
// canonical form (lowest terms, positive denominator) is maintained by the backend
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// floor division of integers, exact toward -inf
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt rat_floor(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }

inline BigInt rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

struct RatParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// accepts "num/den" or a bare integer; den must be nonzero
inline Rat parse_rat(const std::string& text) {
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](const std::string& s) { return s[0] == '+' ? s.substr(1) : s; };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) throw RatParseError("not a rational: '" + text + "'");
      return Rat(BigInt(strip_plus(text)));
    }
    const std::string ns = text.substr(0, slash);
    const std::string ds = text.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds)) throw RatParseError("not a rational: '" + text + "'");
    BigInt n(strip_plus(ns)), d(strip_plus(ds));
    if (d == 0) throw RatParseError("zero denominator: '" + text + "'");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rat(n, d);
  } catch (const std::runtime_error&) {
    throw RatParseError("not a rational: '" + text + "'");
  }
}

// always "num/den", canonical lowest terms
inline std::string format_rat(const Rat& q) {
  return rat_num(q).str() + "/" + rat_den(q).str();
}

// plain decimal with the given number of significant digits, round half away from zero.
// no exponent notation; suited for SVG coordinates.
inline std::string rat_to_decimal(const Rat& q, int sig_digits) {
  if (sig_digits < 1) throw std::invalid_argument("sig_digits must be >= 1");
  if (q == 0) return "0";
  const bool neg = q < 0;
  const Rat a = neg ? Rat(-q) : q;
  // exponent e: 10^e <= a < 10^(e+1)
  int e = 0;
  {
    Rat v = a;
    while (v >= 10) { v /= 10; ++e; }
    while (v < 1) { v *= 10; --e; }
  }
  // want digits up to 10^(e - sig_digits + 1); round at that scale
  const int frac = sig_digits - 1 - e;  // decimal places kept (may be negative)
  Rat scaled = a;
  BigInt pow10 = 1;
  if (frac >= 0) {
    for (int i = 0; i < frac; ++i) pow10 *= 10;
    scaled = a * Rat(pow10);
  } else {
    for (int i = 0; i < -frac; ++i) pow10 *= 10;
    scaled = a / Rat(pow10);
  }
  BigInt units = rat_floor(scaled + Rat(1, 2));
  std::string digits = units.str();
  std::string out;
  if (frac <= 0) {
    // integer with trailing zeros
    out = digits;
    for (int i = 0; i < -frac; ++i) out += '0';
  } else {
    while ((int)digits.size() <= frac) digits.insert(digits.begin(), '0');
    out = digits.substr(0, digits.size() - frac) + "." + digits.substr(digits.size() - frac);
    // strip trailing zeros of the fraction
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return neg ? "-" + out : out;
}

}  // namespace lunelab
