#include "rfb/fraction.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "rfb/errors.hpp"

namespace rfb {

namespace {

using i128 = __int128;

constexpr std::int64_t kMaxI64 = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMinI64 = std::numeric_limits<std::int64_t>::min();

std::int64_t narrow(i128 v, const char* what) {
  if (v > static_cast<i128>(kMaxI64) || v < static_cast<i128>(kMinI64)) {
    throw OverflowError(std::string("integer overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t gcd_nonneg(std::int64_t a, std::int64_t b) {
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  return narrow(static_cast<i128>(a) * b, "multiplication");
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  return narrow(static_cast<i128>(a) + b, "addition");
}

std::int64_t checked_gcd(std::int64_t a, std::int64_t b) {
  if (a == kMinI64 || b == kMinI64) throw OverflowError("gcd of INT64_MIN");
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  return gcd_nonneg(a, b);
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = checked_gcd(a, b);
  return checked_mul(a < 0 ? -a : a, (b < 0 ? -b : b) / g);
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  std::int64_t r = num % den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

std::int64_t fraction_floor(const Fraction& f) { return floor_div(f.num, f.den); }

Bezout extended_gcd(std::int64_t x, std::int64_t y) {
  // Iterative extended Euclid on non-negative values.
  std::int64_t old_r = x, r = y;
  std::int64_t old_a = 1, a = 0;
  std::int64_t old_b = 0, b = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t;
    t = old_r - q * r; old_r = r; r = t;
    t = old_a - q * a; old_a = a; a = t;
    t = old_b - q * b; old_b = b; b = t;
  }
  Bezout out{old_r, old_a, old_b};
  // Reduce the first coefficient to the representative of smallest absolute
  // value; valid coefficients differ by multiples of y/g.
  if (y != 0 && out.g != 0) {
    std::int64_t step = y / out.g;
    if (step < 0) step = -step;
    if (step != 0) {
      std::int64_t m = pos_mod(out.a, step);
      std::int64_t cand1 = m;            // smallest non-negative
      std::int64_t cand2 = m - step;     // its negative counterpart
      std::int64_t best = (cand1 <= -cand2) ? cand1 : cand2;
      out.a = best;
      out.b = (out.g - checked_mul(out.a, x)) / y;
    }
  }
  return out;
}

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw ParseError("fraction with zero denominator");
  if (d < 0) {
    if (n == kMinI64 || d == kMinI64) throw OverflowError("fraction normalization");
    n = -n;
    d = -d;
  }
  std::int64_t g = checked_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Fraction Fraction::operator+(const Fraction& o) const {
  i128 n = static_cast<i128>(num) * o.den + static_cast<i128>(o.num) * den;
  i128 d = static_cast<i128>(den) * o.den;
  // Reduce in 128 bits first so values that cancel do not spuriously overflow.
  i128 an = n < 0 ? -n : n;
  i128 g = an;
  i128 dd = d;
  while (dd != 0) {
    i128 t = g % dd;
    g = dd;
    dd = t;
  }
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Fraction(narrow(n, "fraction addition"), narrow(d, "fraction addition"));
}

Fraction Fraction::operator-() const { return Fraction(-num, den); }

Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::operator*(const Fraction& o) const {
  // Cross-reduce before multiplying.
  std::int64_t g1 = checked_gcd(num, o.den);
  std::int64_t g2 = checked_gcd(o.num, den);
  return Fraction(checked_mul(num / g1, o.num / g2), checked_mul(den / g2, o.den / g1));
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.num == 0) throw ParseError("division of fraction by zero");
  return *this * Fraction(o.den, o.num);
}

bool Fraction::operator<(const Fraction& o) const {
  return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
}

Fraction wrap_unit(const Fraction& x) {
  // x - 2*floor((x + 1) / 2)
  Fraction shifted = (x + Fraction::of(1)) / Fraction::of(2);
  std::int64_t k = fraction_floor(shifted);
  return x - Fraction(checked_mul(2, k), 1);
}

Fraction parse_fraction(const std::string& text) {
  std::size_t slash = text.find('/');
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty()) throw ParseError("empty number in fraction '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("bad fraction '" + text + "'");
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("bad fraction '" + text + "'");
      }
    }
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0 || end == nullptr || *end != '\0') {
      throw ParseError("fraction out of range '" + text + "'");
    }
    return v;
  };
  if (slash == std::string::npos) {
    return Fraction(parse_int(text), 1);
  }
  std::int64_t n = parse_int(text.substr(0, slash));
  std::int64_t d = parse_int(text.substr(slash + 1));
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  return Fraction(n, d);
}

std::string to_string(const Fraction& f) {
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

}  // namespace rfb
