#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oaid {

// Exact rational scalar. Thin canonicalizing wrapper over GMP's mpq so the
// rest of the code can rely on two invariants: the value is always in lowest
// terms and the denominator is always positive. Construction from a zero
// denominator throws.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n) { v_ = from_ll(n); }      // NOLINT(google-explicit-constructor)
  Rational(int n) : v_(n) {}                      // NOLINT(google-explicit-constructor)

  Rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(from_ll(num), from_ll(den));
    v_.canonicalize();
  }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p", "-p" or "p/q". Throws on malformed input or q == 0.
  static Rational parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s), 1));
      mpz_class num(s.substr(0, slash));
      mpz_class den(s.substr(slash + 1));
      return Rational(num, den);
    } catch (const std::invalid_argument&) {
      throw std::domain_error("Rational: cannot parse '" + s + "'");
    }
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // "p" when integral, "p/q" otherwise.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return v_ < 0 ? Rational(mpq_class(-v_)) : *this; }

  const mpq_class& raw() const { return v_; }

 private:
  static mpz_class from_ll(long long n) {
    // mpz_class has no long long constructor on LP64 this matters only in
    // theory, but keep it portable.
    mpz_class z;
    if (n >= 0) {
      z = static_cast<unsigned long>(n);
    } else {
      z = static_cast<unsigned long>(-(n + 1));
      z += 1;
      z = -z;
    }
    return z;
  }

  mpq_class v_;
};

}  // namespace oaid
