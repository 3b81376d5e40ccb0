#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ddt {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a GMP rational and demoted again as soon as
/// it fits. The representation is canonical, so equality and hashing can
/// compare representations directly.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(int value) : Rational(static_cast<std::int64_t>(value)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed
  /// input or a zero denominator.
  static Rational parse(std::string_view text);

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  bool is_small() const { return big_ == nullptr; }

  /// Largest integer not greater than this value.
  Rational floor() const;
  Rational ceil() const { return -(-*this).floor(); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational reciprocal() const;
  Rational pow(unsigned exponent) const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;
  std::string to_string() const;
  std::size_t hash() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void assign(const mpq_class& value);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Certified bracket [lower, upper] of sqrt(value) with width at most
/// 2^-bits relative to the denominator scale. Requires value >= 0.
struct SqrtBounds {
  Rational lower;
  Rational upper;
};
SqrtBounds sqrt_bounds(const Rational& value, unsigned bits);

}  // namespace ddt

template <>
struct std::hash<ddt::Rational> {
  std::size_t operator()(const ddt::Rational& value) const noexcept { return value.hash(); }
};
