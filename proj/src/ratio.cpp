#include "clocklab/ratio.hpp"

#include <cstdlib>
#include <numeric>

#include "clocklab/errors.hpp"

namespace clocklab {

static Ratio normalized(std::int64_t num, std::int64_t den) {
  if (den == 0) throw validation_error("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Ratio{num, den};
}

bool operator==(const Ratio& a, const Ratio& b) {
  const Ratio x = normalized(a.num, a.den);
  const Ratio y = normalized(b.num, b.den);
  return x.num == y.num && x.den == y.den;
}

Ratio parse_ratio(const std::string& text) {
  if (text.empty()) throw validation_error("empty numeric literal");
  bool neg = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool any_digit = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) throw validation_error("malformed numeric literal: " + text);
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw validation_error("malformed numeric literal: " + text);
    if (num > (INT64_MAX - 9) / 10 || (seen_dot && den > INT64_MAX / 10))
      throw validation_error("numeric literal out of range: " + text);
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    any_digit = true;
  }
  if (!any_digit) throw validation_error("malformed numeric literal: " + text);
  return normalized(neg ? -num : num, den);
}

std::string to_string(const Ratio& r) {
  const Ratio n = normalized(r.num, r.den);
  std::string out = n.num < 0 ? "-" : "";
  std::int64_t num = n.num < 0 ? -n.num : n.num;
  out += std::to_string(num / n.den);
  std::int64_t rem = num % n.den;
  if (rem == 0) return out;
  out += '.';
  // Denominators from parse_ratio are powers of ten times a gcd factor;
  // emit digits until the remainder terminates (cap well past int64 range).
  for (int k = 0; rem != 0 && k < 30; ++k) {
    rem *= 10;
    out += static_cast<char>('0' + rem / n.den);
    rem %= n.den;
  }
  return out;
}

std::int64_t div_half_even(std::int64_t num, std::int64_t den) {
  if (den == 0) throw validation_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t q = num / den;
  std::int64_t r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  // q = floor, r in [0, den): round on 2r vs den, ties to even q.
  if (2 * r > den || (2 * r == den && (q % 2 != 0))) q += 1;
  return q;
}

} // namespace clocklab
