#pragma once

#include "qtangent/polynomial.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>

namespace qtangent {

/// The number field Q(zeta_n), presented as Q[z] / Phi_n(z).
struct CyclotomicField {
  unsigned conductor = 1;
  Polynomial modulus; // Phi_n
  explicit CyclotomicField(unsigned n) : conductor(n), modulus(cyclotomic_polynomial(n)) {}

  [[nodiscard]] unsigned degree() const { return static_cast<unsigned>(modulus.degree()); }
};

using CyclotomicFieldPtr = std::shared_ptr<const CyclotomicField>;

inline CyclotomicFieldPtr make_cyclotomic_field(unsigned n) {
  return std::make_shared<const CyclotomicField>(n);
}

/// Element of a cyclotomic field Q(zeta_n), stored as its unique remainder
/// modulo Phi_n. Elements without a field are rationals and embed into every
/// Q(zeta_n); two irrational elements must share a conductor.
class Cyclotomic {
public:
  Cyclotomic() = default;
  Cyclotomic(Rational r) : value_(std::move(r)) {} // NOLINT(google-explicit-constructor)
  Cyclotomic(int r) : value_(Rational(r)) {}       // NOLINT(google-explicit-constructor)
  Cyclotomic(CyclotomicFieldPtr field, Polynomial value) : field_(std::move(field)) {
    value_ = field_ ? value % field_->modulus : std::move(value);
    if (!field_ && !value_.is_constant()) throw InputError("non-constant cyclotomic without a field");
  }

  /// zeta_n^k
  static Cyclotomic zeta(const CyclotomicFieldPtr& field, long k) {
    long n = static_cast<long>(field->conductor);
    long e = ((k % n) + n) % n;
    return Cyclotomic(field, Polynomial::monomial(1, static_cast<std::size_t>(e)));
  }

  [[nodiscard]] unsigned conductor() const { return field_ ? field_->conductor : 1U; }
  [[nodiscard]] const CyclotomicFieldPtr& field() const { return field_; }
  [[nodiscard]] const Polynomial& value() const { return value_; }
  [[nodiscard]] bool is_zero() const { return value_.is_zero(); }
  [[nodiscard]] bool is_rational() const { return value_.is_constant(); }
  [[nodiscard]] Rational rational_value() const {
    if (!is_rational()) throw InputError("cyclotomic value is not rational: " + str());
    return value_.coeff(0);
  }
  /// Coefficient of z^k in the canonical representation.
  [[nodiscard]] Rational coeff(std::size_t k) const { return value_.coeff(k); }

  /// Image under the automorphism zeta -> zeta^k (k coprime to the conductor).
  [[nodiscard]] Cyclotomic galois(long k) const {
    if (!field_ || is_rational()) return *this;
    long n = static_cast<long>(field_->conductor);
    long kk = ((k % n) + n) % n;
    if (std::gcd(kk, n) != 1) throw InputError("galois exponent not coprime to conductor");
    Polynomial r;
    const auto& c = value_.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero()) continue;
      auto e = static_cast<std::size_t>((static_cast<long>(i) * kk) % n);
      r += Polynomial::monomial(c[i], e);
    }
    return Cyclotomic(field_, r);
  }
  /// Complex conjugate (zeta -> zeta^{-1}).
  [[nodiscard]] Cyclotomic conj() const { return galois(-1); }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    adopt(o);
    value_ += o.value_;
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    adopt(o);
    value_ -= o.value_;
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    adopt(o);
    if (o.is_rational()) {
      value_ *= o.value_.coeff(0);
    } else if (is_rational()) {
      value_ = o.value_ * value_.coeff(0);
    } else {
      value_ = (value_ * o.value_) % field_->modulus;
    }
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  [[nodiscard]] Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero("cyclotomic division by zero");
    if (is_rational()) return Cyclotomic(field_, Polynomial(Rational(1) / value_.coeff(0)));
    auto [g, u, v] = extended_gcd(value_, field_->modulus);
    if (g.degree() != 0) throw ConsistencyError("non-invertible cyclotomic element");
    return Cyclotomic(field_, u);
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend Cyclotomic operator-(const Cyclotomic& a) { return Cyclotomic(a.field_, -a.value_); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    check_compatible(a, b);
    return a.value_ == b.value_;
  }

  /// "c0+c1*z^1+..." in the power basis; "0" for zero.
  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    const auto& c = value_.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k].is_zero()) continue;
      std::string term = c[k].str();
      if (k > 0) term += "*z^" + std::to_string(k);
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out;
  }

  /// Inverse of str(); the field gives the conductor.
  static Cyclotomic parse(std::string_view text, const CyclotomicFieldPtr& field) {
    std::string s(text);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw InputError("empty cyclotomic string");
    Polynomial acc;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t next = pos + 1;
      while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
      std::string term = s.substr(pos, next - pos);
      if (!term.empty() && term.front() == '+') term.erase(0, 1);
      std::size_t zpos = term.find("*z^");
      if (zpos == std::string::npos) {
        acc += Polynomial(Rational::parse(term));
      } else {
        Rational c = Rational::parse(term.substr(0, zpos));
        const std::string exp = term.substr(zpos + 3);
        if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos)
          throw InputError("bad exponent in cyclotomic string: " + s);
        unsigned long e = std::stoul(exp);
        acc += Polynomial::monomial(c, e);
      }
      pos = next;
    }
    if (!field) {
      if (!acc.is_constant()) throw InputError("irrational cyclotomic string without conductor: " + s);
      return Cyclotomic(acc.coeff(0));
    }
    return Cyclotomic(field, acc);
  }

private:
  static void check_compatible(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.field_ && b.field_ && a.field_->conductor != b.field_->conductor && !a.is_rational() &&
        !b.is_rational()) {
      throw MixedTowerError("cyclotomic conductors " + std::to_string(a.field_->conductor) + " and " +
                            std::to_string(b.field_->conductor) + " mixed");
    }
  }
  void adopt(const Cyclotomic& o) {
    check_compatible(*this, o);
    if (!o.field_) return;
    if (!field_ || (is_rational() && !o.is_rational())) field_ = o.field_;
  }

  CyclotomicFieldPtr field_;
  Polynomial value_;
};

inline bool is_zero(const Cyclotomic& c) { return c.is_zero(); }
inline std::string to_string(const Cyclotomic& c) { return c.str(); }
inline bool same_tower(const Cyclotomic& a, const Cyclotomic& b) {
  return a.is_rational() || b.is_rational() || a.conductor() == b.conductor();
}
inline unsigned tower_id(const Cyclotomic& c) { return c.is_rational() ? 0U : c.conductor(); }

} // namespace qtangent
