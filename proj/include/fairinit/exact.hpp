#pragma once

// Exact integer helpers. Nothing in this library uses floating point; every
// fractional comparison is done by cross-multiplication in 128-bit integers.

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace fairinit {

using Value = std::int64_t;
__extension__ using Wide = __int128;

// floor(a / b) for b > 0 and any sign of a.
constexpr Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && (a < 0))
    --q;
  return q;
}

// ceil(a / b) for b > 0 and any sign of a.
constexpr Value ceil_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && (a > 0))
    ++q;
  return q;
}

// Sign of a*b - c*d, computed without overflow.
constexpr int compare_products(Value a, Value b, Value c, Value d) {
  const Wide lhs = static_cast<Wide>(a) * b;
  const Wide rhs = static_cast<Wide>(c) * d;
  return (lhs > rhs) - (lhs < rhs);
}

// Non-negative rational p/q in lowest terms, q > 0.
struct Ratio {
  Value num = 0;
  Value den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(Value n, Value d = 1) : num(n), den(d) {
    if (den == 0)
      throw InputError("ratio with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Value g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend constexpr bool operator==(const Ratio&, const Ratio&) = default;

  friend constexpr bool operator<(const Ratio& a, const Ratio& b) {
    return compare_products(a.num, b.den, b.num, a.den) < 0;
  }
  friend constexpr bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

namespace detail {
inline Value parse_integer(std::string_view s, std::string_view whole) {
  Value out = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (s.empty() || ec != std::errc{} || ptr != last)
    throw InputError("not an exact rational (expected p/q or integer): '" + std::string(whole) + "'");
  return out;
}
} // namespace detail

// Parses "p/q" or "p". Decimal notation is rejected on purpose: the value
// has to be representable exactly.
inline Ratio parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Ratio(detail::parse_integer(text, text));
  return Ratio(detail::parse_integer(text.substr(0, slash), text),
               detail::parse_integer(text.substr(slash + 1), text));
}

} // namespace fairinit
