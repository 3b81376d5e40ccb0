#pragma once

#include <string>

#include "ddt/geometry.hpp"

namespace ddt {

/// A norm paired with a strictly increasing transform h such that
/// h(||x||) is rational for rational x.
///   kMax: h(t) = t^power.
///   kP:   h(t) = t^power with power a positive multiple of p, so that
///         h(||x||_p) = (sum |x_i|^p)^(power / p).
struct NormSpec {
  enum class Kind { kMax, kP };
  Kind kind = Kind::kP;
  unsigned p = 2;
  unsigned power = 2;

  static NormSpec euclid2() { return {Kind::kP, 2, 2}; }
  static NormSpec max() { return {Kind::kMax, 1, 1}; }
  static NormSpec p_norm(unsigned p) { return {Kind::kP, p, p}; }

  /// Parses "euclid2", "max", "p:<int>". Throws InputError otherwise.
  static NormSpec parse(const std::string& text);
  std::string to_string() const;

  /// Throws InputError for an unsupported pairing.
  void validate() const;

  /// h(||x||).
  Rational h_norm(const Point& x) const;
  Rational h_distance(const Point& a, const Point& b) const { return h_norm(a - b); }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

}  // namespace ddt
