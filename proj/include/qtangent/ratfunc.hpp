#pragma once

#include "qtangent/polynomial.hpp"

#include <string>
#include <utility>

namespace qtangent {

/// Element of Q(s), s = q^{1/2}. Kept in lowest terms with a monic denominator.
class RatFuncS {
public:
  RatFuncS() : den_(1) {}
  RatFuncS(Rational c) : num_(std::move(c)), den_(1) {} // NOLINT(google-explicit-constructor)
  RatFuncS(int c) : RatFuncS(Rational(c)) {}             // NOLINT(google-explicit-constructor)
  explicit RatFuncS(Polynomial num) : num_(std::move(num)), den_(1) {}
  RatFuncS(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
  }

  static RatFuncS s() { return RatFuncS(Polynomial::x()); }
  static RatFuncS q() { return RatFuncS(Polynomial::monomial(1, 2)); }
  /// s^k for any integer k.
  static RatFuncS s_pow(long k) {
    if (k >= 0) return RatFuncS(Polynomial::monomial(1, static_cast<std::size_t>(k)));
    return RatFuncS(Polynomial(1), Polynomial::monomial(1, static_cast<std::size_t>(-k)));
  }
  static RatFuncS q_pow(long k) { return s_pow(2 * k); }

  [[nodiscard]] const Polynomial& numerator() const { return num_; }
  [[nodiscard]] const Polynomial& denominator() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  [[nodiscard]] RatFuncS inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return {den_, num_};
  }

  [[nodiscard]] RatFuncS pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    RatFuncS r(1), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }

  RatFuncS& operator+=(const RatFuncS& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  RatFuncS& operator-=(const RatFuncS& o) { return *this += -o; }
  RatFuncS& operator*=(const RatFuncS& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFuncS();
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  RatFuncS& operator/=(const RatFuncS& o) { return *this *= o.inverse(); }

  friend RatFuncS operator+(RatFuncS a, const RatFuncS& b) { return a += b; }
  friend RatFuncS operator-(RatFuncS a, const RatFuncS& b) { return a -= b; }
  friend RatFuncS operator*(RatFuncS a, const RatFuncS& b) { return a *= b; }
  friend RatFuncS operator/(RatFuncS a, const RatFuncS& b) { return a /= b; }
  friend RatFuncS operator-(RatFuncS a) {
    a.num_ = -a.num_;
    return a;
  }
  friend bool operator==(const RatFuncS& a, const RatFuncS& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Value at s = 1; throws PoleError if s = 1 is a pole.
  [[nodiscard]] Rational specialize_s1() const {
    Rational d = den_.eval(1);
    if (d.is_zero()) throw PoleError("pole at s=1 in " + str());
    return num_.eval(1) / d;
  }

  /// d/ds at s = 1; throws PoleError if s = 1 is a pole.
  [[nodiscard]] Rational derivative_at_s1() const {
    Rational d = den_.eval(1);
    if (d.is_zero()) throw PoleError("pole at s=1 in " + str());
    Rational n = num_.eval(1);
    return (num_.derivative().eval(1) * d - n * den_.derivative().eval(1)) / (d * d);
  }

  [[nodiscard]] std::string str() const {
    if (den_.is_constant()) return num_.str("s");
    return "(" + num_.str("s") + ")/(" + den_.str("s") + ")";
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (!den_.is_constant()) {
      Polynomial g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
      }
    }
    if (!den_.is_monic()) {
      Rational inv = Rational(1) / den_.leading();
      num_ *= inv;
      den_ *= inv;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

inline bool is_zero(const RatFuncS& f) { return f.is_zero(); }
inline std::string to_string(const RatFuncS& f) { return f.str(); }
inline bool same_tower(const RatFuncS&, const RatFuncS&) { return true; }
inline unsigned tower_id(const RatFuncS&) { return 0; }

} // namespace qtangent
