#pragma once

#include "qtangent/exact_fields.hpp"

#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace qtangent::uq {

/// F^f K^{k2/2} E^e. The K exponent is stored doubled so half-integer powers are representable.
struct Mono {
  unsigned f = 0;
  int k2 = 0;
  unsigned e = 0;
  auto operator<=>(const Mono&) const = default;
};

inline std::string to_string(const Mono& m) {
  std::string out;
  auto power = [&](const std::string& g, const std::string& exp) {
    if (!out.empty()) out += " ";
    out += exp == "1" ? g : g + "^" + exp;
  };
  if (m.f) power("F", std::to_string(m.f));
  if (m.k2) power("K", m.k2 % 2 == 0 ? std::to_string(m.k2 / 2) : std::to_string(m.k2) + "/2");
  if (m.e) power("E", std::to_string(m.e));
  return out.empty() ? "1" : out;
}

class PBWElement;
PBWElement operator*(const PBWElement& x, const PBWElement& y);

/// Element of U_q(sl2) over Q(s), s^2 = q, in the normal-ordered basis F^a K^b E^c.
/// Relations: KE = qEK, KF = q^{-1}FK, EF - FE = (K^2 - K^{-2})/(q - q^{-1}).
class PBWElement {
public:
  PBWElement() = default;
  PBWElement(RatFuncS c) { add(Mono{}, c); } // NOLINT(google-explicit-constructor)
  PBWElement(int c) : PBWElement(RatFuncS(c)) {} // NOLINT(google-explicit-constructor)

  static PBWElement mono(Mono m, const RatFuncS& c = RatFuncS(1)) {
    PBWElement x;
    x.add(m, c);
    return x;
  }
  static PBWElement E() { return mono({0, 0, 1}); }
  static PBWElement F() { return mono({1, 0, 0}); }
  /// K^n
  static PBWElement K(int n = 1) { return mono({0, 2 * n, 0}); }
  /// K^{k2/2}
  static PBWElement K_half(int k2) { return mono({0, k2, 0}); }

  /// Product of the letters E, F, K with optional exponents, e.g. "E F K^-1 K^1/2".
  static PBWElement from_word(std::string_view w) {
    PBWElement x(1);
    std::size_t i = 0;
    while (i < w.size()) {
      char ch = w[i];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
        ++i;
        continue;
      }
      if (ch != 'E' && ch != 'F' && ch != 'K') throw InputError(std::string("unknown generator '") + ch + "'");
      ++i;
      long num = 1, den = 1;
      if (i < w.size() && w[i] == '^') {
        ++i;
        std::size_t j = i;
        if (j < w.size() && (w[j] == '-' || w[j] == '+')) ++j;
        while (j < w.size() && std::isdigit(static_cast<unsigned char>(w[j]))) ++j;
        if (j == i || (j == i + 1 && !std::isdigit(static_cast<unsigned char>(w[i]))))
          throw InputError("malformed exponent in word");
        num = std::stol(std::string(w.substr(i, j - i)));
        i = j;
        if (i < w.size() && w[i] == '/') {
          ++i;
          j = i;
          while (j < w.size() && std::isdigit(static_cast<unsigned char>(w[j]))) ++j;
          if (j == i) throw InputError("malformed exponent in word");
          den = std::stol(std::string(w.substr(i, j - i)));
          i = j;
        }
      }
      if (ch == 'K') {
        if (den != 1 && den != 2) throw InputError("K exponents must be multiples of 1/2");
        x = x * K_half(static_cast<int>(num * (2 / den)));
      } else {
        if (den != 1 || num < 0) throw InputError("E and F exponents must be nonnegative integers");
        PBWElement g = ch == 'E' ? E() : F();
        for (long k = 0; k < num; ++k) x = x * g;
      }
    }
    return x;
  }

  [[nodiscard]] const std::map<Mono, RatFuncS>& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  [[nodiscard]] RatFuncS coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? RatFuncS() : it->second;
  }
  void add(const Mono& m, const RatFuncS& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }

  [[nodiscard]] RatFuncS counit() const {
    RatFuncS r;
    for (const auto& [m, c] : t_)
      if (m.f == 0 && m.e == 0) r = r + c;
    return r;
  }

  [[nodiscard]] std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (m != Mono{}) out += "*" + to_string(m);
    }
    return out;
  }

  PBWElement& operator+=(const PBWElement& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  PBWElement& operator-=(const PBWElement& o) {
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
  }
  friend PBWElement operator+(PBWElement a, const PBWElement& b) { return a += b; }
  friend PBWElement operator-(PBWElement a, const PBWElement& b) { return a -= b; }
  friend PBWElement operator-(const PBWElement& a) { return RatFuncS(-1) * a; }
  friend PBWElement operator*(const RatFuncS& s, const PBWElement& a) {
    PBWElement r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.t_) r.t_.emplace(m, s * c);
    return r;
  }
  friend bool operator==(const PBWElement& a, const PBWElement& b) { return a.t_ == b.t_; }

private:
  std::map<Mono, RatFuncS> t_;
};

namespace detail {

/// (K^2 - K^{-2})-type correction in E F^a = F^a E + F^{a-1} P_a(K).
inline PBWElement ef_correction(unsigned a) {
  PBWElement p;
  const RatFuncS inv = (RatFuncS::q() - RatFuncS::q_pow(-1)).inverse();
  for (unsigned j = 0; j < a; ++j) {
    long m = static_cast<long>(a - 1 - j);
    p.add({0, 4, 0}, RatFuncS::q_pow(-2 * m) * inv);
    p.add({0, -4, 0}, -(RatFuncS::q_pow(2 * m) * inv));
  }
  return p;
}

PBWElement mono_product(const Mono& x, const Mono& y);

/// E^c F^a in normal order.
inline PBWElement e_pow_f_pow(unsigned c, unsigned a) {
  if (c == 0 || a == 0) return PBWElement::mono({a, 0, c});
  PBWElement head = e_pow_f_pow(c - 1, a);
  PBWElement out;
  for (const auto& [m, k] : head.terms()) out += k * mono_product(m, {0, 0, 1});
  PBWElement lower = e_pow_f_pow(c - 1, a - 1);
  PBWElement corr = ef_correction(a);
  for (const auto& [m, k] : lower.terms())
    for (const auto& [n, w] : corr.terms()) out += (k * w) * mono_product(m, n);
  return out;
}

/// (F^a K^b E^c)(F^a' K^b' E^c') with K^b F^i = q^{-b i} F^i K^b and E^k K^b' = q^{-b' k} K^b' E^k.
inline PBWElement mono_product(const Mono& x, const Mono& y) {
  if (x.e == 0 || y.f == 0) {
    RatFuncS c = RatFuncS::s_pow(-static_cast<long>(x.k2) * y.f - static_cast<long>(y.k2) * x.e);
    return PBWElement::mono({x.f + y.f, x.k2 + y.k2, x.e + y.e}, c);
  }
  PBWElement mid = e_pow_f_pow(x.e, y.f);
  PBWElement out;
  for (const auto& [m, c] : mid.terms()) {
    RatFuncS w = c * RatFuncS::s_pow(-static_cast<long>(x.k2) * m.f - static_cast<long>(y.k2) * m.e);
    out.add({x.f + m.f, x.k2 + m.k2 + y.k2, m.e + y.e}, w);
  }
  return out;
}

} // namespace detail

inline PBWElement operator*(const PBWElement& x, const PBWElement& y) {
  PBWElement r;
  for (const auto& [m, c] : x.terms())
    for (const auto& [n, d] : y.terms()) r += (c * d) * detail::mono_product(m, n);
  return r;
}

inline PBWElement pow(const PBWElement& x, unsigned n) {
  PBWElement r(1);
  for (unsigned i = 0; i < n; ++i) r = r * x;
  return r;
}

inline PBWElement commutator(const PBWElement& x, const PBWElement& y) { return x * y - y * x; }

/// Element of U (x) U.
class PBWTensor {
public:
  using Key = std::pair<Mono, Mono>;

  [[nodiscard]] const std::map<Key, RatFuncS>& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  void add(const Mono& a, const Mono& b, const RatFuncS& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(Key{a, b}, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
  void add(const PBWElement& x, const PBWElement& y, const RatFuncS& c = RatFuncS(1)) {
    for (const auto& [m, a] : x.terms())
      for (const auto& [n, b] : y.terms()) add(m, n, c * a * b);
  }
  PBWTensor& operator+=(const PBWTensor& o) {
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
  }
  friend PBWTensor operator-(PBWTensor a, const PBWTensor& b) {
    for (const auto& [k, c] : b.t_) a.add(k.first, k.second, -c);
    return a;
  }
  friend PBWTensor operator*(const PBWTensor& x, const PBWTensor& y) {
    PBWTensor r;
    for (const auto& [k1, a] : x.t_)
      for (const auto& [k2, b] : y.t_)
        r.add(detail::mono_product(k1.first, k2.first), detail::mono_product(k1.second, k2.second), a * b);
    return r;
  }
  friend bool operator==(const PBWTensor& a, const PBWTensor& b) { return a.t_ == b.t_; }

private:
  std::map<Key, RatFuncS> t_;
};

/// Delta K = K (x) K, Delta E = E (x) K + K^{-1} (x) E, Delta F = F (x) K + K^{-1} (x) F.
inline PBWTensor coproduct(const PBWElement& x) {
  PBWTensor de, df;
  de.add({0, 0, 1}, {0, 2, 0}, RatFuncS(1));
  de.add({0, -2, 0}, {0, 0, 1}, RatFuncS(1));
  df.add({1, 0, 0}, {0, 2, 0}, RatFuncS(1));
  df.add({0, -2, 0}, {1, 0, 0}, RatFuncS(1));
  PBWTensor out;
  for (const auto& [m, c] : x.terms()) {
    PBWTensor t;
    t.add(Mono{0, m.k2, 0}, Mono{0, m.k2, 0}, c);
    PBWTensor left;
    left.add(Mono{}, Mono{}, RatFuncS(1));
    for (unsigned i = 0; i < m.f; ++i) left = left * df;
    PBWTensor right;
    right.add(Mono{}, Mono{}, RatFuncS(1));
    for (unsigned i = 0; i < m.e; ++i) right = right * de;
    out += left * t * right;
  }
  return out;
}

/// S E = -qE, S F = -q^{-1}F, S K = K^{-1}; S is an antihomomorphism.
inline PBWElement antipode(const PBWElement& x) {
  PBWElement out;
  const PBWElement se = -RatFuncS::q() * PBWElement::E();
  const PBWElement sf = -RatFuncS::q_pow(-1) * PBWElement::F();
  for (const auto& [m, c] : x.terms()) out += c * (pow(se, m.e) * PBWElement::K_half(-m.k2) * pow(sf, m.f));
  return out;
}

/// Images of E, F, K, K^{-1} in a finite-dimensional representation.
struct Rep {
  Matrix<RatFuncS> e, f, k, kinv;
  [[nodiscard]] std::size_t dim() const { return k.rows(); }
};

/// rho(E) = e12, rho(F) = e21, rho(K) = diag(s, 1/s).
inline Rep spin_half() {
  Rep r{Matrix<RatFuncS>(2, 2), Matrix<RatFuncS>(2, 2), Matrix<RatFuncS>(2, 2), Matrix<RatFuncS>(2, 2)};
  r.e(0, 1) = RatFuncS(1);
  r.f(1, 0) = RatFuncS(1);
  r.k(0, 0) = RatFuncS::s();
  r.k(1, 1) = RatFuncS::s_pow(-1);
  r.kinv(0, 0) = RatFuncS::s_pow(-1);
  r.kinv(1, 1) = RatFuncS::s();
  return r;
}

/// rho*(h) = rho(S h)^T.
inline Rep dual(const Rep& r) {
  return {(-RatFuncS::q() * r.e).transpose(), (-RatFuncS::q_pow(-1) * r.f).transpose(), r.kinv.transpose(),
          r.k.transpose()};
}

/// (a (x) b) o Delta.
inline Rep tensor(const Rep& a, const Rep& b) {
  return {kron(a.e, b.k) + kron(a.kinv, b.e), kron(a.f, b.k) + kron(a.kinv, b.f), kron(a.k, b.k),
          kron(a.kinv, b.kinv)};
}

inline Matrix<RatFuncS> mat_pow(const Matrix<RatFuncS>& m, long n) {
  auto r = Matrix<RatFuncS>::identity(m.rows());
  for (long i = 0; i < n; ++i) r = r * m;
  return r;
}

/// Image of x; half-integer K powers have no value over Q(s) and throw InputError.
inline Matrix<RatFuncS> represent(const Rep& r, const PBWElement& x) {
  Matrix<RatFuncS> out(r.dim(), r.dim());
  for (const auto& [m, c] : x.terms()) {
    if (m.k2 % 2 != 0) throw InputError("half-integer power of K has no matrix value over Q(s)");
    long b = m.k2 / 2;
    auto term = mat_pow(r.f, m.f) * (b >= 0 ? mat_pow(r.k, b) : mat_pow(r.kinv, -b)) * mat_pow(r.e, m.e);
    out = out + c * term;
  }
  return out;
}

} // namespace qtangent::uq
