#pragma once

#include "qtangent/rational.hpp"

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qtangent {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// The zero polynomial has no coefficients; otherwise the leading coefficient
/// is nonzero.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(Rational c) { // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  Polynomial(int c) : Polynomial(Rational(c)) {} // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// c * x^k
  static Polynomial monomial(const Rational& c, std::size_t k) {
    if (c.is_zero()) return {};
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(1, 1); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
  [[nodiscard]] Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(); }
  [[nodiscard]] const Rational& leading() const { return c_.back(); }
  [[nodiscard]] bool is_constant() const { return c_.size() <= 1; }
  [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  [[nodiscard]] Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial r = *this;
    Rational inv = Rational(1) / leading();
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder).
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<Rational> rem = c_;
    std::vector<Rational> quo(c_.size() - d.c_.size() + 1);
    Rational inv = Rational(1) / d.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
      Rational f = rem[k + d.c_.size() - 1] * inv;
      quo[k] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

  /// Monic gcd (zero if both are zero).
  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = a % b;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  /// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic.
  friend std::tuple<Polynomial, Polynomial, Polynomial> extended_gcd(const Polynomial& a,
                                                                     const Polynomial& b) {
    Polynomial r0 = a, r1 = b, s0 = 1, s1, t0, t1 = 1;
    while (!r1.is_zero()) {
      auto [q, r] = r0.divmod(r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      Polynomial s2 = s0 - q * s1;
      Polynomial t2 = t0 - q * t1;
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = Rational(1) / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
  }

  /// Human readable form in the given variable, highest degree first.
  [[nodiscard]] std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      std::string mag = (c.sign() < 0 ? (-c).str() : c.str());
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? "-" : "+";
      }
      if (k == 0) {
        out += mag;
      } else {
        if (mag != "1") out += mag + "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// n-th cyclotomic polynomial, computed as (x^n - 1) / prod_{d | n, d < n} Phi_d.
inline Polynomial cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InputError("cyclotomic polynomial of order 0");
  Polynomial p = Polynomial::monomial(1, n) - Polynomial(1);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) p = p.divmod(cyclotomic_polynomial(d)).first;
  }
  return p;
}

} // namespace qtangent
