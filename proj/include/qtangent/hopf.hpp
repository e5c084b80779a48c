#pragma once

#include "qtangent/finite_group.hpp"
#include "qtangent/exact_fields.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qtangent {

/// Basis type of a finite-group Hopf algebra element: group elements g of CG,
/// or delta functions of C(G). Both are indexed by the group's element list.
enum class Basis { Group, Function };

inline Basis dual(Basis b) { return b == Basis::Group ? Basis::Function : Basis::Group; }
inline std::string to_string(Basis b) { return b == Basis::Group ? "CG" : "C(G)"; }

/// Which algebra carries the calculus: "functions" means A = C(G), H = CG;
/// "group_algebra" means A = CG, H = C(G).
enum class Side { Functions, GroupAlgebra };

inline Basis h_basis(Side s) { return s == Side::Functions ? Basis::Group : Basis::Function; }
inline Basis a_basis(Side s) { return s == Side::Functions ? Basis::Function : Basis::Group; }
inline std::string to_string(Side s) { return s == Side::Functions ? "functions" : "group_algebra"; }
inline Side side_from_string(const std::string& s) {
  if (s == "functions") return Side::Functions;
  if (s == "group_algebra") return Side::GroupAlgebra;
  throw InputError("unknown side '" + s + "' (expected functions or group_algebra)");
}

/// Sparse element of CG or C(G); zero coefficients are never stored.
template <class F>
class HopfElement {
public:
  explicit HopfElement(Basis b = Basis::Group) : basis_(b) {}
  HopfElement(Basis b, std::size_t index, F c = F(1)) : basis_(b) { add(index, std::move(c)); }

  [[nodiscard]] Basis basis() const { return basis_; }
  [[nodiscard]] const std::map<std::size_t, F>& terms() const { return c_; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] F coeff(std::size_t i) const {
    auto it = c_.find(i);
    return it == c_.end() ? F() : it->second;
  }

  void add(std::size_t i, const F& c) {
    if (detail::scalar_is_zero(c)) return;
    auto [it, fresh] = c_.emplace(i, c);
    if (fresh) return;
    it->second += c;
    if (detail::scalar_is_zero(it->second)) c_.erase(it);
  }

  [[nodiscard]] Vec<F> dense(std::size_t n) const {
    Vec<F> v(n);
    for (const auto& [i, c] : c_) v[i] = c;
    return v;
  }
  static HopfElement from_dense(Basis b, const Vec<F>& v) {
    HopfElement e(b);
    for (std::size_t i = 0; i < v.size(); ++i) e.add(i, v[i]);
    return e;
  }

  HopfElement& operator+=(const HopfElement& o) {
    check(o);
    for (const auto& [i, c] : o.c_) add(i, c);
    return *this;
  }
  HopfElement& operator-=(const HopfElement& o) {
    check(o);
    for (const auto& [i, c] : o.c_) add(i, -c);
    return *this;
  }
  friend HopfElement operator+(HopfElement a, const HopfElement& b) { return a += b; }
  friend HopfElement operator-(HopfElement a, const HopfElement& b) { return a -= b; }
  friend HopfElement operator*(const F& s, const HopfElement& a) {
    HopfElement r(a.basis_);
    for (const auto& [i, c] : a.c_) r.add(i, s * c);
    return r;
  }
  friend HopfElement operator-(const HopfElement& a) { return F(-1) * a; }
  friend bool operator==(const HopfElement& a, const HopfElement& b) {
    return a.basis_ == b.basis_ && a.c_ == b.c_;
  }

private:
  void check(const HopfElement& o) const {
    if (o.basis_ != basis_) throw SideMismatch("adding elements of " + to_string(basis_) + " and " + to_string(o.basis_));
  }

  Basis basis_;
  std::map<std::size_t, F> c_;
};

/// Sparse element of X (x) Y for X, Y among CG and C(G).
template <class F>
class TensorElement {
public:
  TensorElement(Basis l, Basis r) : left_(l), right_(r) {}

  [[nodiscard]] Basis left() const { return left_; }
  [[nodiscard]] Basis right() const { return right_; }
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, F>& terms() const { return c_; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }

  void add(std::size_t i, std::size_t j, const F& c) {
    if (detail::scalar_is_zero(c)) return;
    auto [it, fresh] = c_.emplace(std::make_pair(i, j), c);
    if (fresh) return;
    it->second += c;
    if (detail::scalar_is_zero(it->second)) c_.erase(it);
  }
  /// Adds c * (x (x) y).
  void add(const HopfElement<F>& x, const HopfElement<F>& y, const F& c = F(1)) {
    if (x.basis() != left_ || y.basis() != right_) throw SideMismatch("tensor factor on the wrong algebra");
    for (const auto& [i, a] : x.terms())
      for (const auto& [j, b] : y.terms()) add(i, j, c * a * b);
  }
  TensorElement& operator+=(const TensorElement& o) {
    if (o.left_ != left_ || o.right_ != right_) throw SideMismatch("adding tensors of different types");
    for (const auto& [k, c] : o.c_) add(k.first, k.second, c);
    return *this;
  }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) {
    for (const auto& [k, c] : b.c_) a.add(k.first, k.second, -c);
    return a;
  }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.c_ == b.c_;
  }

private:
  Basis left_, right_;
  std::map<std::pair<std::size_t, std::size_t>, F> c_;
};

/// CG and C(G) for one finite group, with the pairing <g, delta_h> = [g = h].
template <class F>
class HopfPair {
public:
  using Elem = HopfElement<F>;
  using Tensor = TensorElement<F>;

  explicit HopfPair(std::shared_ptr<const FiniteGroup> g) : g_(std::move(g)) {}

  [[nodiscard]] const FiniteGroup& group() const { return *g_; }
  [[nodiscard]] const std::shared_ptr<const FiniteGroup>& group_ptr() const { return g_; }
  [[nodiscard]] std::size_t dim() const { return g_->order(); }

  [[nodiscard]] Elem one(Basis b) const {
    if (b == Basis::Group) return Elem(b, g_->identity());
    Elem r(b);
    for (std::size_t i = 0; i < dim(); ++i) r.add(i, F(1));
    return r;
  }
  [[nodiscard]] Elem basis_element(Basis b, std::size_t i) const { return Elem(b, i); }

  /// Convolution on CG, pointwise on C(G).
  [[nodiscard]] Elem product(const Elem& x, const Elem& y) const {
    if (x.basis() != y.basis()) throw SideMismatch("product of elements of different algebras");
    Elem r(x.basis());
    if (x.basis() == Basis::Group) {
      for (const auto& [i, a] : x.terms())
        for (const auto& [j, b] : y.terms()) r.add(g_->mul(i, j), a * b);
    } else {
      for (const auto& [i, a] : x.terms()) {
        auto it = y.terms().find(i);
        if (it != y.terms().end()) r.add(i, a * it->second);
      }
    }
    return r;
  }

  [[nodiscard]] F counit(const Elem& x) const {
    if (x.basis() == Basis::Function) return x.coeff(g_->identity());
    F s;
    for (const auto& [i, c] : x.terms()) s += c;
    return s;
  }

  /// S g = g^{-1}, S delta_g = delta_{g^{-1}}.
  [[nodiscard]] Elem antipode(const Elem& x) const {
    Elem r(x.basis());
    for (const auto& [i, c] : x.terms()) r.add(g_->inv(i), c);
    return r;
  }
  /// S^{-1}; equal to S for finite groups but kept separate where formulas call for it.
  [[nodiscard]] Elem antipode_inverse(const Elem& x) const { return antipode(x); }

  /// Basis-level coproduct legs: Delta g = g (x) g, Delta delta_g = sum_{uv=g} delta_u (x) delta_v.
  template <class Fn>
  void for_each_coproduct(Basis b, std::size_t i, Fn&& fn) const {
    if (b == Basis::Group) {
      fn(i, i);
      return;
    }
    for (std::size_t u = 0; u < dim(); ++u) fn(u, g_->mul(g_->inv(u), i));
  }
  /// Basis-level second iterated coproduct legs.
  template <class Fn>
  void for_each_coproduct2(Basis b, std::size_t i, Fn&& fn) const {
    if (b == Basis::Group) {
      fn(i, i, i);
      return;
    }
    for (std::size_t u = 0; u < dim(); ++u)
      for (std::size_t v = 0; v < dim(); ++v) fn(u, v, g_->mul(g_->inv(g_->mul(u, v)), i));
  }

  [[nodiscard]] Tensor coproduct(const Elem& x) const {
    Tensor t(x.basis(), x.basis());
    for (const auto& [i, c] : x.terms()) for_each_coproduct(x.basis(), i, [&](std::size_t u, std::size_t v) { t.add(u, v, c); });
    return t;
  }

  /// Bilinear pairing between opposite algebras (argument order is free).
  [[nodiscard]] F pairing(const Elem& x, const Elem& y) const {
    if (x.basis() == y.basis()) throw SideMismatch("pairing needs one element of CG and one of C(G)");
    F s;
    for (const auto& [i, a] : x.terms()) {
      auto it = y.terms().find(i);
      if (it != y.terms().end()) s += a * it->second;
    }
    return s;
  }
  /// <x (x) y, a (x) b> = <x,a><y,b>.
  [[nodiscard]] F pairing(const Tensor& s, const Tensor& t) const {
    if (s.left() == t.left() || s.right() == t.right()) throw SideMismatch("tensor pairing needs opposite algebras");
    F r;
    for (const auto& [k, c] : s.terms()) {
      auto it = t.terms().find(k);
      if (it != t.terms().end()) r += c * it->second;
    }
    return r;
  }

  [[nodiscard]] Tensor tensor_product(const Tensor& s, const Tensor& t) const {
    if (s.left() != t.left() || s.right() != t.right()) throw SideMismatch("tensor product of different tensor types");
    Tensor r(s.left(), s.right());
    for (const auto& [k1, a] : s.terms())
      for (const auto& [k2, b] : t.terms()) {
        Elem l = product(Elem(s.left(), k1.first), Elem(s.left(), k2.first));
        Elem rr = product(Elem(s.right(), k1.second), Elem(s.right(), k2.second));
        r.add(l, rr, a * b);
      }
    return r;
  }

private:
  std::shared_ptr<const FiniteGroup> g_;
};

/// Element of the double H |><| A^op on H (x) A; keys are (H index, A index).
template <class F>
using DoubleElement = TensorElement<F>;

/// Quantum double acting on ker(eps) of H and on A for a chosen side.
template <class F>
class QuantumDouble {
public:
  using Elem = HopfElement<F>;

  QuantumDouble(HopfPair<F> pair, Side side) : p_(std::move(pair)), side_(side) {}

  [[nodiscard]] const HopfPair<F>& hopf() const { return p_; }
  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] Basis hb() const { return h_basis(side_); }
  [[nodiscard]] Basis ab() const { return a_basis(side_); }
  [[nodiscard]] std::size_t dim() const { return p_.dim(); }

  /// ker(eps) in H: {g - e} for H = CG, {delta_g : g != e} for H = C(G).
  [[nodiscard]] std::vector<Elem> keps_basis(Basis b) const {
    std::vector<Elem> out;
    const std::size_t e = p_.group().identity();
    for (std::size_t g = 0; g < dim(); ++g) {
      if (g == e) continue;
      Elem x(b, g);
      if (b == Basis::Group) x.add(e, F(-1));
      out.push_back(std::move(x));
    }
    return out;
  }
  [[nodiscard]] std::vector<Elem> keps_basis() const { return keps_basis(hb()); }

  /// Coordinates of an element of ker(eps) on keps_basis: the coefficients at g != e.
  [[nodiscard]] Vec<F> keps_coords(const Elem& x) const {
    if (!is_zero(p_.counit(x))) throw InputError("element is not in ker(eps)");
    Vec<F> v(dim() - 1);
    const std::size_t e = p_.group().identity();
    for (const auto& [i, c] : x.terms())
      if (i != e) v[i < e ? i : i - 1] = c;
    return v;
  }
  [[nodiscard]] Elem from_keps_coords(Basis b, const Vec<F>& v) const {
    auto basis = keps_basis(b);
    Elem x(b);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) x += v[i] * basis[i];
    return x;
  }

  /// h |> x = h_(1) x S h_(2).
  [[nodiscard]] Elem act_h(const Elem& h, const Elem& x) const {
    require(h, hb(), "acting element");
    require_keps(x);
    Elem r(hb());
    for (const auto& [i, c] : h.terms())
      p_.for_each_coproduct(hb(), i, [&](std::size_t u, std::size_t v) {
        Elem t = p_.product(p_.product(Elem(hb(), u), x), p_.antipode(Elem(hb(), v)));
        r += c * t;
      });
    return r;
  }

  /// a |> x = <a, x_(1)> x_(2) - <a, x> 1.
  [[nodiscard]] Elem act_a(const Elem& a, const Elem& x) const {
    require(a, ab(), "acting element");
    require_keps(x);
    Elem r(hb());
    for (const auto& [i, c] : x.terms())
      p_.for_each_coproduct(hb(), i, [&](std::size_t u, std::size_t v) {
        F w = a.coeff(u);
        if (!is_zero(w)) r.add(v, c * w);
      });
    r -= p_.pairing(a, x) * p_.one(hb());
    return r;
  }

  /// (h (x) a) |> x = h |> (a |> x).
  [[nodiscard]] Elem act(const DoubleElement<F>& d, const Elem& x) const {
    Elem r(hb());
    for (const auto& [k, c] : d.terms()) r += c * act_h(Elem(hb(), k.first), act_a(Elem(ab(), k.second), x));
    return r;
  }

  /// (h (x) a)(g (x) b) = h g_(2) (x) b a_(2) <g_(1), a_(1)> <g_(3), S a_(3)>.
  [[nodiscard]] DoubleElement<F> product(const DoubleElement<F>& x, const DoubleElement<F>& y) const {
    DoubleElement<F> r(hb(), ab());
    const auto& grp = p_.group();
    for (const auto& [k1, c1] : x.terms())
      for (const auto& [k2, c2] : y.terms()) {
        // The pairing forces g_(1) = a_(1) and g_(3) = a_(3)^{-1}. One of g, a is
        // group-like; the other's middle leg is then fixed by u v w = index.
        auto emit = [&](std::size_t g2, std::size_t a2) {
          Elem h = p_.product(Elem(hb(), k1.first), Elem(hb(), g2));
          Elem a = p_.product(Elem(ab(), k2.second), Elem(ab(), a2));
          r.add(h, a, c1 * c2);
        };
        if (hb() == Basis::Group) {
          std::size_t g = k2.first, k = k1.second;
          emit(g, grp.mul(grp.mul(grp.inv(g), k), g));
        } else {
          std::size_t a = k1.second, y = k2.first;
          emit(grp.mul(grp.mul(grp.inv(a), y), a), a);
        }
      }
    return r;
  }

  [[nodiscard]] DoubleElement<F> pure(std::size_t h, std::size_t a) const {
    DoubleElement<F> d(hb(), ab());
    d.add(h, a, F(1));
    return d;
  }
  [[nodiscard]] DoubleElement<F> unit() const {
    DoubleElement<F> d(hb(), ab());
    d.add(p_.one(hb()), p_.one(ab()));
    return d;
  }

  /// h |> a = <S h, a_(1)> a_(2) on A.
  [[nodiscard]] Elem schroedinger_h(const Elem& h, const Elem& a) const {
    require(h, hb(), "acting element");
    require(a, ab(), "target");
    Elem sh = p_.antipode(h);
    Elem r(ab());
    for (const auto& [i, c] : a.terms())
      p_.for_each_coproduct(ab(), i, [&](std::size_t u, std::size_t v) {
        F w = sh.coeff(u);
        if (!is_zero(w)) r.add(v, c * w);
      });
    return r;
  }
  /// b |> a = (S^{-1} b_(2)) a b_(1) on A.
  [[nodiscard]] Elem schroedinger_a(const Elem& b, const Elem& a) const {
    require(b, ab(), "acting element");
    require(a, ab(), "target");
    Elem r(ab());
    for (const auto& [i, c] : b.terms())
      p_.for_each_coproduct(ab(), i, [&](std::size_t u, std::size_t v) {
        Elem t = p_.product(p_.product(p_.antipode_inverse(Elem(ab(), v)), a), Elem(ab(), u));
        r += c * t;
      });
    return r;
  }
  [[nodiscard]] Elem schroedinger(const DoubleElement<F>& d, const Elem& a) const {
    Elem r(ab());
    for (const auto& [k, c] : d.terms()) r += c * schroedinger_h(Elem(hb(), k.first), schroedinger_a(Elem(ab(), k.second), a));
    return r;
  }

private:
  static void require(const Elem& x, Basis b, const char* what) {
    if (x.basis() != b) throw SideMismatch(std::string(what) + " must lie in " + to_string(b));
  }
  void require_keps(const Elem& x) const {
    require(x, hb(), "target");
    if (!is_zero(p_.counit(x))) throw InputError("double action target is not in ker(eps)");
  }

  HopfPair<F> p_;
  Side side_;
};

/// Failure of the double module law at basis pairs (h1,a1), (h2,a2) and ker(eps) basis vector x.
struct ModuleLawWitness {
  std::size_t h1, a1, h2, a2, x;
};

/// Checks (p1 p2) |> x = p1 |> (p2 |> x) for all basis pairs p1, p2 of the double
/// and all x in the ker(eps) basis, via the sparse matrices of the basis pairs.
template <class F>
std::optional<ModuleLawWitness> double_module_law(const QuantumDouble<F>& qd) {
  using Col = std::map<std::size_t, F>;
  const std::size_t n = qd.dim(), m = n - 1;
  auto basis = qd.keps_basis();
  // rho[h * n + a][x] = keps coordinates of (h (x) a) |> basis[x]
  std::vector<std::vector<Col>> rho(n * n, std::vector<Col>(m));
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < m; ++x) {
        auto v = qd.keps_coords(qd.act(qd.pure(h, a), basis[x]));
        for (std::size_t i = 0; i < m; ++i)
          if (!is_zero(v[i])) rho[h * n + a][x].emplace(i, v[i]);
      }
  auto apply = [&](const std::vector<Col>& mat, const Col& col) {
    Col out;
    for (const auto& [j, c] : col)
      for (const auto& [i, d] : mat[j]) {
        auto& slot = out[i];
        slot += c * d;
      }
    for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
  };
  for (std::size_t h1 = 0; h1 < n; ++h1)
    for (std::size_t a1 = 0; a1 < n; ++a1)
      for (std::size_t h2 = 0; h2 < n; ++h2)
        for (std::size_t a2 = 0; a2 < n; ++a2) {
          auto prod = qd.product(qd.pure(h1, a1), qd.pure(h2, a2));
          for (std::size_t x = 0; x < m; ++x) {
            Col lhs;
            for (const auto& [k, c] : prod.terms())
              for (const auto& [i, d] : rho[k.first * n + k.second][x]) lhs[i] += c * d;
            for (auto it = lhs.begin(); it != lhs.end();) it = is_zero(it->second) ? lhs.erase(it) : std::next(it);
            if (lhs != apply(rho[h1 * n + a1], rho[h2 * n + a2][x])) return ModuleLawWitness{h1, a1, h2, a2, x};
          }
        }
  return std::nullopt;
}

} // namespace qtangent
