#ifndef RFB_FRACTION_HPP
#define RFB_FRACTION_HPP

#include <cstdint>
#include <string>

namespace rfb {

// Exact rational number on int64 with overflow detection. All band-edge and
// dimension arithmetic goes through this type; no floating point enters the
// planning path.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;  // > 0 after normalization; gcd(num, den) == 1

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);
  static Fraction of(std::int64_t n) { return Fraction(n, 1); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;
  Fraction operator-() const;

  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const;
  bool operator<=(const Fraction& o) const { return *this < o || *this == o; }
  bool operator>(const Fraction& o) const { return o < *this; }
  bool operator>=(const Fraction& o) const { return o <= *this; }
};

std::int64_t checked_gcd(std::int64_t a, std::int64_t b);
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

// Non-negative remainder, r in [0, m) for m > 0.
std::int64_t pos_mod(std::int64_t a, std::int64_t m);

// Extended Euclid: returns (g, a, b) with a*x + b*y = g = gcd(x, y) and |a|
// minimal among valid coefficients (a is reduced modulo y/g toward the
// smallest absolute value).
struct Bezout {
  std::int64_t g = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
};
Bezout extended_gcd(std::int64_t x, std::int64_t y);

// Largest integer <= num/den.
std::int64_t floor_div(std::int64_t num, std::int64_t den);
std::int64_t fraction_floor(const Fraction& f);

// Reduce x into the half-open window [-1, 1) modulo 2. Used for frequencies
// expressed in units of pi.
Fraction wrap_unit(const Fraction& x);

// Parses "num/den" or a bare integer "num". Throws ParseError.
Fraction parse_fraction(const std::string& text);
std::string to_string(const Fraction& f);

}  // namespace rfb

#endif  // RFB_FRACTION_HPP
