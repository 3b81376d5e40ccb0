#include "ddt/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace ddt {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// INT64_MIN is excluded from the inline range so negation never overflows.
bool fits(i128 v) { return v <= kMax && v >= -kMax; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool mpz_fits(const mpz_class& z, std::int64_t& out) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
  long v = z.get_si();
  if (v == std::numeric_limits<long>::min()) return false;
  out = v;
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) {
  if (value == std::numeric_limits<std::int64_t>::min()) {
    assign(mpq_class(mpz_class(static_cast<long>(value))));
  } else {
    num_ = value;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  assign(q);
}

Rational::Rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  assign(q);
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Rational::assign(const mpq_class& value) {
  std::int64_t n = 0;
  std::int64_t d = 0;
  if (mpz_fits(value.get_num(), n) && mpz_fits(value.get_den(), d)) {
    num_ = n;
    den_ = d;
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(value);
  }
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  std::string s(text.substr(b, e - b));
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' ) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  mpz_class n(strip_plus(num), 10);
  mpz_class d(strip_plus(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Rational(mpq_class(n, d));
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

Rational Rational::floor() const {
  if (!big_) {
    if (den_ == 1) return *this;
    std::int64_t q = num_ / den_;
    if (num_ < 0) --q;  // C++ division truncates toward zero
    return Rational(q);
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (!big_) {
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  return Rational(mpq_class(1) / *big_);
}

Rational Rational::pow(unsigned exponent) const {
  Rational result(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      i128 s = static_cast<i128>(num_) + rhs.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_;
    u128 d = static_cast<u128>(den_) * static_cast<u128>(rhs.den_);
    u128 g = gcd128(uabs(n), d);
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= g;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (fits(n) && d <= static_cast<u128>(kMax)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    mpq_class q(to_mpz(n), to_mpz(static_cast<i128>(d)));
    assign(q);
    return *this;
  }
  assign(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    std::uint64_t g1 = gcd64(static_cast<std::uint64_t>(num_ < 0 ? -num_ : num_),
                             static_cast<std::uint64_t>(rhs.den_));
    std::uint64_t g2 = gcd64(static_cast<std::uint64_t>(rhs.num_ < 0 ? -rhs.num_ : rhs.num_),
                             static_cast<std::uint64_t>(den_));
    i128 n = static_cast<i128>(num_ / static_cast<std::int64_t>(g1)) *
             (rhs.num_ / static_cast<std::int64_t>(g2));
    i128 d = static_cast<i128>(den_ / static_cast<std::int64_t>(g2)) *
             (rhs.den_ / static_cast<std::int64_t>(g1));
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    assign(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  assign(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.reciprocal(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never equals an inline one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

SqrtBounds sqrt_bounds(const Rational& value, unsigned bits) {
  if (value.sign() < 0) throw std::domain_error("sqrt of negative rational");
  // sqrt(p/q) = sqrt(p*q)/q; scale by 2^bits to bracket the integer root.
  mpz_class p = value.numerator();
  mpz_class q = value.denominator();
  mpz_class scaled = p * q;
  scaled <<= 2 * bits;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  mpz_class scale = q;
  scale <<= bits;
  SqrtBounds b;
  b.lower = Rational(mpq_class(root, scale));
  if (root * root == scaled) {
    b.upper = b.lower;
  } else {
    b.upper = Rational(mpq_class(root + 1, scale));
  }
  return b;
}

}  // namespace ddt
