#pragma once

#include "qtangent/error.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace qtangent {

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator (GMP canonical form).
class Rational {
public:
  Rational() = default;
  Rational(long v) : v_(v) {} // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& v) : v_(v) {}

  /// Parses "a" or "a/b".
  static Rational parse(std::string_view text) {
    std::string s(text);
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw InputError("not a rational number: '" + s + "'");
    if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
  }

  [[nodiscard]] const mpq_class& raw() const { return v_; }
  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(v_); }

  [[nodiscard]] std::string str() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline std::string to_string(const Rational& r) { return r.str(); }
/// Rationals are compatible with every other rational.
inline bool same_tower(const Rational&, const Rational&) { return true; }
/// Identifier of the scalar tower a value forces; 0 means compatible with all.
inline unsigned tower_id(const Rational&) { return 0; }

} // namespace qtangent
