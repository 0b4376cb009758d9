#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace cubical {

using Rational = boost::rational<std::int64_t>;

/// Three-way comparison without boost's overflow-avoiding slow path:
/// denominators are positive, so cross-multiplying in 128 bits is exact.
inline int compare(const Rational& a, const Rational& b) {
  if (a.denominator() == b.denominator())
    return a.numerator() < b.numerator() ? -1 : (b.numerator() < a.numerator() ? 1 : 0);
  const __int128 l = static_cast<__int128>(a.numerator()) * b.denominator();
  const __int128 r = static_cast<__int128>(b.numerator()) * a.denominator();
  return l < r ? -1 : (r < l ? 1 : 0);
}

/// Renders `q` as "n" when integral, "p/q" otherwise (always lowest terms).
inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Parses "n", "-n", "p/q". Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::int64_t v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace cubical
