#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ospcoh {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). Thin value wrapper over mpq_class so that expression
/// templates never leak into `auto` variables.
class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q", "-p/q" or an integer literal. No decimals.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
      while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
      while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto valid_int = [](std::string_view t) {
      std::size_t i = 0;
      if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    trim(num);
    trim(den);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-')
      throw std::invalid_argument("malformed rational literal: " + s);
    if (num.front() == '+') num.erase(num.begin());
    if (den.front() == '+') den.erase(den.begin());
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("rational literal with zero denominator: " + s);
    return Rational(mpq_class(n, d));
  }

  [[nodiscard]] const mpq_class& raw() const { return q_; }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }

  /// Integer value; throws if not an integer or out of range.
  [[nodiscard]] long to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
      throw std::domain_error("Rational is not a machine integer: " + str());
    return q_.get_num().get_si();
  }

  /// Smallest integer >= value.
  [[nodiscard]] mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  [[nodiscard]] std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class q_{0};
};

/// (-1)^e for a small integer exponent.
constexpr int parity_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace ospcoh

template <>
struct std::hash<ospcoh::Rational> {
  std::size_t operator()(const ospcoh::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};
