#include "ddt/norm.hpp"

#include "ddt/errors.hpp"

namespace ddt {

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "euclid2") return euclid2();
  if (text == "max") return max();
  if (text.rfind("p:", 0) == 0) {
    const std::string digits = text.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 3) {
      throw InputError("malformed norm '" + text + "'");
    }
    unsigned p = static_cast<unsigned>(std::stoul(digits));
    NormSpec spec = p_norm(p);
    spec.validate();
    return spec;
  }
  throw InputError("unknown norm '" + text + "' (expected euclid2, max or p:<int>)");
}

std::string NormSpec::to_string() const {
  if (kind == Kind::kMax) return power == 1 ? "max" : "max^" + std::to_string(power);
  if (p == 2 && power == 2) return "euclid2";
  std::string s = "p:" + std::to_string(p);
  return power == p ? s : s + "^" + std::to_string(power);
}

void NormSpec::validate() const {
  if (power == 0) throw InputError("norm transform power must be positive");
  if (kind == Kind::kP) {
    if (p == 0) throw InputError("p-norm needs p >= 1");
    if (power % p != 0) throw InputError("p-norm transform power must be a multiple of p");
  }
}

Rational NormSpec::h_norm(const Point& x) const {
  if (kind == Kind::kMax) {
    Rational m;
    for (const auto& c : x.coords()) m = ddt::max(m, c.abs());
    return m.pow(power);
  }
  Rational s;
  for (const auto& c : x.coords()) s += c.abs().pow(p);
  return s.pow(power / p);
}

}  // namespace ddt
