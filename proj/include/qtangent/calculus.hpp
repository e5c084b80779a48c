#pragma once

#include "qtangent/tangent.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtangent {

/// Sparse vector keyed by basis index.
template <class F>
using SparseVec = std::map<std::size_t, F>;

template <class F>
void sparse_add(SparseVec<F>& v, std::size_t i, const F& c) {
  if (detail::scalar_is_zero(c)) return;
  auto [it, fresh] = v.emplace(i, c);
  if (fresh) return;
  it->second += c;
  if (detail::scalar_is_zero(it->second)) v.erase(it);
}

template <class F>
void sparse_axpy(SparseVec<F>& v, const F& c, const SparseVec<F>& x) {
  for (const auto& [i, w] : x) sparse_add(v, i, c * w);
}

/// Linear operator stored by the images of the basis vectors.
template <class F>
struct SparseOp {
  std::vector<SparseVec<F>> cols;

  [[nodiscard]] SparseVec<F> apply(const SparseVec<F>& v) const {
    SparseVec<F> r;
    for (const auto& [i, c] : v) sparse_axpy(r, c, cols[i]);
    return r;
  }
  /// this o b
  [[nodiscard]] SparseOp after(const SparseOp& b) const {
    SparseOp r;
    r.cols.reserve(b.cols.size());
    for (const auto& c : b.cols) r.cols.push_back(apply(c));
    return r;
  }
  SparseOp& add(const F& s, const SparseOp& o) {
    if (cols.empty()) cols.resize(o.cols.size());
    for (std::size_t k = 0; k < o.cols.size(); ++k) sparse_axpy(cols[k], s, o.cols[k]);
    return *this;
  }
  friend bool operator==(const SparseOp& a, const SparseOp& b) { return a.cols == b.cols; }
};

/// Outcome of one verification check.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string counterexample;
};

/// The ids accepted by verify_calculus, in report order.
inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> ids{"stability", "leibniz",  "bracket",      "jacobi",
                                            "ybe",       "bimodule", "surjectivity", "inner"};
  return ids;
}

/// Bicovariant first order calculus Gamma = Lin(L, A) for a double-stable L.
/// Gamma has basis e_{i,g} : x_i -> g (index i * n + g), with x_i the canonical basis of L.
template <class F>
class FirstOrderCalculus {
public:
  using Elem = HopfElement<F>;
  using Gamma = SparseVec<F>;

  explicit FirstOrderCalculus(TangentSpace<F> t) : t_(std::move(t)) {
    if (!t_.stable()) throw StabilityError("tangent space is not double-stable: " + *t_.stability_witness());
    const auto& qd = t_.qd();
    n_ = qd.dim();
    d_ = t_.dim();
    xs_ = t_.elements();
    act_a_.resize(n_);
    act_h_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      act_a_[u] = Matrix<F>(d_, d_);
      act_h_[u] = Matrix<F>(d_, d_);
      for (std::size_t i = 0; i < d_; ++i) {
        auto ca = coords(qd.act_a(Elem(qd.ab(), u), xs_[i]));
        auto ch = coords(qd.act_h(Elem(qd.hb(), u), xs_[i]));
        for (std::size_t j = 0; j < d_; ++j) {
          act_a_[u](j, i) = ca[j];
          act_h_[u](j, i) = ch[j];
        }
      }
    }
    bracket_.assign(d_, std::vector<Vec<F>>(d_, Vec<F>(d_)));
    for (std::size_t i = 0; i < d_; ++i)
      for (const auto& [u, c] : xs_[i].terms())
        for (std::size_t j = 0; j < d_; ++j)
          for (std::size_t k = 0; k < d_; ++k) bracket_[i][j][k] += c * act_h_[u](k, j);
    // Psi(x_i (x) x_j) = sum_k (e_k |> x_j) (x) (f^k |> x_i)
    psi_ = Matrix<F>(d_ * d_, d_ * d_);
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
          for (std::size_t l = 0; l < d_; ++l) {
            if (detail::scalar_is_zero(act_h_[k](l, j))) continue;
            for (std::size_t m = 0; m < d_; ++m)
              psi_(l * d_ + m, i * d_ + j) += act_h_[k](l, j) * act_a_[k](m, i);
          }
  }

  [[nodiscard]] const TangentSpace<F>& tangent() const { return t_; }
  [[nodiscard]] const QuantumDouble<F>& qd() const { return t_.qd(); }
  [[nodiscard]] std::size_t dim() const { return d_; }
  [[nodiscard]] std::size_t order() const { return n_; }
  [[nodiscard]] std::size_t gamma_dim() const { return d_ * n_; }
  [[nodiscard]] const Elem& basis(std::size_t i) const { return xs_.at(i); }

  /// Coordinates of x in the basis of L; throws StabilityError if x is not in L.
  [[nodiscard]] Vec<F> coords(const Elem& x) const {
    auto c = t_.space().coordinates(t_.qd().keps_coords(x));
    if (!c) throw StabilityError("element is not in the tangent space");
    return *c;
  }

  /// u |> x_i for an A basis element u, as a matrix on L coordinates (column i).
  [[nodiscard]] const Matrix<F>& a_action(std::size_t u) const { return act_a_.at(u); }
  [[nodiscard]] const Matrix<F>& h_action(std::size_t u) const { return act_h_.at(u); }

  /// L coordinates of [x_i, x_j] = x_i |> x_j.
  [[nodiscard]] const Vec<F>& bracket(std::size_t i, std::size_t j) const { return bracket_.at(i).at(j); }
  /// Braiding on L (x) L, columns indexed by i * dim + j.
  [[nodiscard]] const Matrix<F>& braiding() const { return psi_; }

  /// Partial derivative along x (L coordinates): d_x a = <x, a_(1)> a_(2).
  [[nodiscard]] Elem partial(const Vec<F>& x, const Elem& a) const {
    require_a(a);
    Elem r(qd().ab());
    const auto& p = qd().hopf();
    for (std::size_t i = 0; i < d_; ++i) {
      if (detail::scalar_is_zero(x[i])) continue;
      for (const auto& [b, c] : a.terms())
        p.for_each_coproduct(qd().ab(), b, [&](std::size_t u, std::size_t v) {
          F w = xs_[i].coeff(u);
          if (!detail::scalar_is_zero(w)) r.add(v, x[i] * c * w);
        });
    }
    return r;
  }
  [[nodiscard]] Elem partial(std::size_t i, const Elem& a) const { return partial(unit_vec(i), a); }

  [[nodiscard]] Gamma differential(const Elem& a) const {
    Gamma g;
    for (std::size_t i = 0; i < d_; ++i) {
      Elem di = partial(i, a);
      for (const auto& [b, c] : di.terms()) sparse_add(g, i * n_ + b, c);
    }
    return g;
  }
  /// The Gamma element x_i -> a_i.
  [[nodiscard]] Gamma gamma(const std::vector<Elem>& values) const {
    Gamma g;
    for (std::size_t i = 0; i < d_ && i < values.size(); ++i)
      for (const auto& [b, c] : values[i].terms()) sparse_add(g, i * n_ + b, c);
    return g;
  }
  [[nodiscard]] Elem evaluate(const Gamma& g, std::size_t i) const {
    Elem r(qd().ab());
    for (const auto& [k, c] : g)
      if (k / n_ == i) r.add(k % n_, c);
    return r;
  }

  // ---------------------------------------------------------------- bimodule and bicomodule structure
  // Operators on Gamma for basis elements; extended linearly by the *_op(Elem) overloads.

  /// (a . gamma)(x) = a_(2) gamma(a_(1) |> x)
  [[nodiscard]] const SparseOp<F>& left_a(std::size_t a) const { return cached(left_a_, a, [&] { return build_left_a(a); }); }
  /// (gamma . a)(x) = gamma(x) a
  [[nodiscard]] const SparseOp<F>& right_a(std::size_t a) const { return cached(right_a_, a, [&] { return build_right_a(a); }); }
  /// (h . gamma)(x) = <h_(2), gamma(h_(1) |> x)_(1)> gamma(h_(1) |> x)_(2)
  [[nodiscard]] const SparseOp<F>& left_h(std::size_t h) const { return cached(left_h_, h, [&] { return build_left_h(h); }); }
  /// (gamma . h)(x) = gamma(x)_(1) <gamma(x)_(2), h>
  [[nodiscard]] const SparseOp<F>& right_h(std::size_t h) const { return cached(right_h_, h, [&] { return build_right_h(h); }); }

  [[nodiscard]] SparseOp<F> left_a_op(const Elem& a) const { return combine(a, [&](std::size_t i) -> const SparseOp<F>& { return left_a(i); }); }
  [[nodiscard]] SparseOp<F> right_a_op(const Elem& a) const { return combine(a, [&](std::size_t i) -> const SparseOp<F>& { return right_a(i); }); }
  [[nodiscard]] SparseOp<F> left_h_op(const Elem& h) const { return combine(h, [&](std::size_t i) -> const SparseOp<F>& { return left_h(i); }); }
  [[nodiscard]] SparseOp<F> right_h_op(const Elem& h) const { return combine(h, [&](std::size_t i) -> const SparseOp<F>& { return right_h(i); }); }

  [[nodiscard]] Gamma left_mul(const Elem& a, const Gamma& g) const { return left_a_op(a).apply(g); }
  [[nodiscard]] Gamma right_mul(const Gamma& g, const Elem& a) const { return right_a_op(a).apply(g); }

  /// h |> a = <h, a_(1)> a_(2) and a <| h = a_(1) <a_(2), h> on A.
  [[nodiscard]] Elem hit_left(std::size_t h, const Elem& a) const {
    Elem r(qd().ab());
    for (const auto& [b, c] : a.terms())
      qd().hopf().for_each_coproduct(qd().ab(), b, [&](std::size_t u, std::size_t v) {
        if (u == h) r.add(v, c);
      });
    return r;
  }
  [[nodiscard]] Elem hit_right(const Elem& a, std::size_t h) const {
    Elem r(qd().ab());
    for (const auto& [b, c] : a.terms())
      qd().hopf().for_each_coproduct(qd().ab(), b, [&](std::size_t u, std::size_t v) {
        if (v == h) r.add(u, c);
      });
    return r;
  }

  // ---------------------------------------------------------------- braidings

  /// Psi(x_i (x) a) = a_(2) (x) (S a_(1)) |> x_i, as A-components on the L basis.
  [[nodiscard]] std::vector<Elem> psi_la(std::size_t i, const Elem& a) const {
    std::vector<Elem> out(d_, Elem(qd().ab()));
    const auto& p = qd().hopf();
    const auto& g = p.group();
    for (const auto& [b, c] : a.terms())
      p.for_each_coproduct(qd().ab(), b, [&](std::size_t u, std::size_t v) {
        const auto& m = act_a_[g.inv(u)];
        for (std::size_t k = 0; k < d_; ++k)
          if (!detail::scalar_is_zero(m(k, i))) out[k].add(v, c * m(k, i));
      });
    return out;
  }
  /// Psi^{-1}(a (x) x_i) = a_(1) |> x_i (x) a_(2), as A-components on the L basis.
  [[nodiscard]] std::vector<Elem> psi_inv_al(const Elem& a, std::size_t i) const {
    std::vector<Elem> out(d_, Elem(qd().ab()));
    for (const auto& [b, c] : a.terms())
      qd().hopf().for_each_coproduct(qd().ab(), b, [&](std::size_t u, std::size_t v) {
        const auto& m = act_a_[u];
        for (std::size_t k = 0; k < d_; ++k)
          if (!detail::scalar_is_zero(m(k, i))) out[k].add(v, c * m(k, i));
      });
    return out;
  }
  /// Psi(a (x) x_i) = a_(1) |> x_i (x) a_(2) read as an element of L (x) A: the braiding of A past L.
  [[nodiscard]] std::vector<Elem> psi_al(const Elem& a, std::size_t i) const { return psi_inv_al(a, i); }

  /// Rank of id - Psi on L (x) L.
  [[nodiscard]] std::size_t exterior_rank2() const {
    return rank(Matrix<F>::identity(d_ * d_) - psi_);
  }

  // ---------------------------------------------------------------- checks

  [[nodiscard]] CheckResult check_leibniz() const {
    CheckResult r{"leibniz"};
    const auto& p = qd().hopf();
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        Elem ea(qd().ab(), a), eb(qd().ab(), b);
        Elem ab = p.product(ea, eb);
        for (std::size_t i = 0; i < d_; ++i) {
          Elem rhs = p.product(partial(i, ea), eb);
          auto cs = psi_inv_al(ea, i);
          for (std::size_t k = 0; k < d_; ++k)
            if (!cs[k].is_zero()) rhs += p.product(cs[k], partial(k, eb));
          if (!(partial(i, ab) == rhs)) {
            r.passed = false;
            r.counterexample = "a=" + str(ea) + " b=" + str(eb) + " x=" + str(xs_[i]);
            return r;
          }
        }
      }
    return r;
  }

  /// Closure, [x,y] = xy - m(Psi(x (x) y)) and Psi(x (x) y) = [x_(1), y] (x) x_(2) - [x, y] (x) 1.
  [[nodiscard]] CheckResult check_bracket() const {
    CheckResult r{"bracket"};
    const auto& p = qd().hopf();
    const Basis hb = qd().hb();
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        auto fail = [&](const std::string& what) {
          r.passed = false;
          r.counterexample = what + " for x=" + str(xs_[i]) + " y=" + str(xs_[j]);
          return r;
        };
        Elem br = qd().act_h(xs_[i], xs_[j]);
        if (!t_.contains(br)) return fail("bracket leaves L");
        Elem mpsi(hb);
        TensorElement<F> lhs(hb, hb);
        for (std::size_t l = 0; l < d_; ++l)
          for (std::size_t m = 0; m < d_; ++m) {
            const F& c = psi_(l * d_ + m, i * d_ + j);
            if (detail::scalar_is_zero(c)) continue;
            mpsi += c * p.product(xs_[l], xs_[m]);
            lhs.add(xs_[l], xs_[m], c);
          }
        if (!(p.product(xs_[i], xs_[j]) - mpsi == br)) return fail("xy - m(Psi(x,y)) differs from [x,y]");
        TensorElement<F> rhs(hb, hb);
        for (const auto& [u, c] : xs_[i].terms())
          p.for_each_coproduct(hb, u, [&](std::size_t s, std::size_t t) {
            rhs.add(qd().act_h(Elem(hb, s), xs_[j]), Elem(hb, t), c);
          });
        rhs.add(br, p.one(hb), F(-1));
        if (!(lhs == rhs)) return fail("Psi(x,y) differs from [x_(1),y] (x) x_(2) - [x,y] (x) 1");
      }
    return r;
  }

  /// [x,[y,z]] = [[x,y],z] + [Psi1, [Psi2, z]].
  [[nodiscard]] CheckResult check_jacobi() const {
    CheckResult r{"jacobi"};
    auto br = [&](const Vec<F>& a, const Vec<F>& b) {
      Vec<F> out(d_);
      for (std::size_t i = 0; i < d_; ++i) {
        if (detail::scalar_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < d_; ++j) {
          if (detail::scalar_is_zero(b[j])) continue;
          for (std::size_t k = 0; k < d_; ++k) out[k] += a[i] * b[j] * bracket_[i][j][k];
        }
      }
      return out;
    };
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        for (std::size_t k = 0; k < d_; ++k) {
          Vec<F> x = unit_vec(i), y = unit_vec(j), z = unit_vec(k);
          Vec<F> lhs = br(x, br(y, z));
          Vec<F> rhs = br(br(x, y), z);
          for (std::size_t l = 0; l < d_; ++l)
            for (std::size_t m = 0; m < d_; ++m) {
              const F& c = psi_(l * d_ + m, i * d_ + j);
              if (detail::scalar_is_zero(c)) continue;
              Vec<F> t = br(unit_vec(l), br(unit_vec(m), z));
              for (std::size_t q = 0; q < d_; ++q) rhs[q] += c * t[q];
            }
          if (lhs != rhs) {
            r.passed = false;
            r.counterexample = "x=" + str(xs_[i]) + " y=" + str(xs_[j]) + " z=" + str(xs_[k]);
            return r;
          }
        }
    return r;
  }

  /// Invertibility and braid relation of Psi on L (x) L, and Psi o Psi^{-1} = id on A (x) L.
  [[nodiscard]] CheckResult check_ybe() const {
    CheckResult r{"ybe"};
    const std::size_t dd = d_ * d_;
    if (rank(psi_) != dd) {
      r.passed = false;
      r.counterexample = "braiding on L (x) L is singular";
      return r;
    }
    std::vector<SparseVec<F>> cols(dd);
    for (std::size_t c = 0; c < dd; ++c)
      for (std::size_t rr = 0; rr < dd; ++rr) sparse_add(cols[c], rr, psi_(rr, c));
    auto psi12 = [&](const SparseVec<F>& v) {
      SparseVec<F> out;
      for (const auto& [k, c] : v)
        for (const auto& [t, w] : cols[k / d_]) sparse_add(out, t * d_ + k % d_, c * w);
      return out;
    };
    auto psi23 = [&](const SparseVec<F>& v) {
      SparseVec<F> out;
      for (const auto& [k, c] : v)
        for (const auto& [t, w] : cols[k % dd]) sparse_add(out, (k / dd) * dd + t, c * w);
      return out;
    };
    for (std::size_t k = 0; k < dd * d_; ++k) {
      SparseVec<F> e{{k, F(1)}};
      if (psi12(psi23(psi12(e))) != psi23(psi12(psi23(e)))) {
        r.passed = false;
        r.counterexample = "braid relation fails on basis tensor " + std::to_string(k / dd) + "," +
                           std::to_string(k / d_ % d_) + "," + std::to_string(k % d_);
        return r;
      }
    }
    for (std::size_t a = 0; a < n_; ++a) {
      Elem ea(qd().ab(), a);
      for (std::size_t i = 0; i < d_; ++i) {
        auto la = psi_inv_al(ea, i);
        std::vector<Elem> back(d_, Elem(qd().ab()));
        for (std::size_t k = 0; k < d_; ++k)
          for (const auto& [b, c] : la[k].terms()) {
            auto t = psi_la(k, Elem(qd().ab(), b));
            for (std::size_t m = 0; m < d_; ++m) back[m] += c * t[m];
          }
        for (std::size_t m = 0; m < d_; ++m)
          if (!(back[m] == (m == i ? ea : Elem(qd().ab())))) {
            r.passed = false;
            r.counterexample = "Psi o Psi^-1 is not the identity on a=" + str(ea) + " x=" + str(xs_[i]);
            return r;
          }
      }
    }
    return r;
  }

  /// Bimodule, bicomodule (dual actions of H) and compatibility laws, d as a bicomodule map
  /// and the Leibniz rule d(ab) = da.b + a.db, all on basis elements.
  [[nodiscard]] CheckResult check_bimodule() const {
    CheckResult r{"bimodule"};
    const auto& p = qd().hopf();
    const Basis ab = qd().ab(), hb = qd().hb();
    auto fail = [&](const std::string& law, const std::string& at) {
      r.passed = false;
      r.counterexample = law + " fails at " + at;
      return r;
    };
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        Elem ea(ab, a), eb(ab, b);
        Elem prod = p.product(ea, eb);
        std::string at = "a=" + str(ea) + " b=" + str(eb);
        if (!(left_a(a).after(left_a(b)) == left_a_op(prod))) return fail("a.(b.w) = (ab).w", at);
        if (!(right_a(b).after(right_a(a)) == right_a_op(prod))) return fail("(w.a).b = w.(ab)", at);
        if (!(right_a(b).after(left_a(a)) == left_a(a).after(right_a(b)))) return fail("(a.w).b = a.(w.b)", at);
        Gamma dab = differential(prod);
        Gamma rhs = right_a(b).apply(differential(ea));
        sparse_axpy(rhs, F(1), left_a(a).apply(differential(eb)));
        if (dab != rhs) return fail("d(ab) = da.b + a.db", at);
      }
    for (std::size_t h = 0; h < n_; ++h)
      for (std::size_t k = 0; k < n_; ++k) {
        Elem eh(hb, h), ek(hb, k);
        Elem kh = p.product(ek, eh);
        std::string at = "h=" + str(eh) + " g=" + str(ek);
        if (!(left_h(h).after(left_h(k)) == left_h_op(kh))) return fail("h.(g.w) = (gh).w", at);
        if (!(right_h(k).after(right_h(h)) == right_h_op(kh))) return fail("(w.h).g = w.(gh)", at);
        if (!(right_h(k).after(left_h(h)) == left_h(h).after(right_h(k)))) return fail("(h.w).g = h.(w.g)", at);
      }
    for (std::size_t h = 0; h < n_; ++h) {
      Elem eh(hb, h);
      for (std::size_t a = 0; a < n_; ++a) {
        Elem ea(ab, a);
        std::string at = "h=" + str(eh) + " a=" + str(ea);
        SparseOp<F> l1, l2, r1, r2;
        p.for_each_coproduct(hb, h, [&](std::size_t u, std::size_t v) {
          l1.add(F(1), left_a_op(hit_left(u, ea)).after(left_h(v)));
          l2.add(F(1), right_a_op(hit_left(v, ea)).after(left_h(u)));
          r1.add(F(1), left_a_op(hit_right(ea, u)).after(right_h(v)));
          r2.add(F(1), right_a_op(hit_right(ea, v)).after(right_h(u)));
        });
        if (!(left_h(h).after(left_a(a)) == l1)) return fail("h.(a.w) = (h_(1)|>a).(h_(2).w)", at);
        if (!(left_h(h).after(right_a(a)) == l2)) return fail("h.(w.a) = (h_(1).w).(h_(2)|>a)", at);
        if (!(right_h(h).after(left_a(a)) == r1)) return fail("(a.w).h = (a<|h_(1)).(w.h_(2))", at);
        if (!(right_h(h).after(right_a(a)) == r2)) return fail("(w.a).h = (w.h_(1)).(a<|h_(2))", at);
        if (left_h(h).apply(differential(ea)) != differential(hit_left(h, ea))) return fail("h.da = d(h|>a)", at);
        if (right_h(h).apply(differential(ea)) != differential(hit_right(ea, h))) return fail("da.h = d(a<|h)", at);
      }
    }
    return r;
  }

  /// Gamma = span{a.db}.
  [[nodiscard]] CheckResult check_surjectivity() const {
    CheckResult r{"surjectivity"};
    const std::size_t total = gamma_dim();
    EchelonBuilder<F> eb(total);
    for (std::size_t b = 0; b < n_ && eb.rank() < total; ++b) {
      Gamma db = differential(Elem(qd().ab(), b));
      if (db.empty()) continue;
      for (std::size_t a = 0; a < n_ && eb.rank() < total; ++a) eb.add(dense(left_a(a).apply(db)));
    }
    if (eb.rank() < total) {
      r.passed = false;
      r.counterexample = "span{a.db} has dimension " + std::to_string(eb.rank()) + " < " + std::to_string(total);
    }
    return r;
  }

  /// For inner tangents with shift kappa (0 for type I and its extension, lambda for type II):
  /// (eps(alpha) + kappa) da = a_(1) alpha (x) a_(2) - alpha (x) a read in Lin(L, A),
  /// a.w - w.a = kappa da and w = (d alpha_(1)) S alpha_(2) = <., alpha> 1.
  [[nodiscard]] CheckResult check_inner() const {
    CheckResult r{"inner"};
    const auto& inner = t_.inner();
    if (!inner) {
      r.counterexample = "not an inner construction";
      return r;
    }
    const auto& p = qd().hopf();
    const Basis ab = qd().ab();
    const Elem& alpha = inner->alpha;
    F kappa = inner->variant == InnerData<F>::Variant::TypeII ? inner->lambda : F();
    F total = p.counit(alpha) + kappa;
    auto fail = [&](const std::string& what) {
      r.passed = false;
      r.counterexample = what;
      return r;
    };
    std::vector<Elem> vals;
    for (const auto& x : xs_) vals.push_back(p.pairing(x, alpha) * p.one(ab));
    Gamma w = gamma(vals);
    Gamma w2;
    for (const auto& [i, c] : alpha.terms())
      p.for_each_coproduct(ab, i, [&](std::size_t u, std::size_t v) {
        sparse_axpy(w2, c, right_a_op(p.antipode(Elem(ab, v))).apply(differential(Elem(ab, u))));
      });
    if (w != w2) return fail("(d alpha_(1)) S alpha_(2) differs from <., alpha> 1");
    for (std::size_t a = 0; a < n_; ++a) {
      Elem ea(ab, a);
      Gamma da = differential(ea);
      std::vector<Elem> lifted(d_, Elem(ab));
      for (std::size_t i = 0; i < d_; ++i) {
        p.for_each_coproduct(ab, a, [&](std::size_t u, std::size_t v) {
          F c = p.pairing(xs_[i], p.product(Elem(ab, u), alpha));
          if (!detail::scalar_is_zero(c)) lifted[i].add(v, c);
        });
        lifted[i] -= p.pairing(xs_[i], alpha) * ea;
      }
      Gamma lhs;
      sparse_axpy(lhs, total, da);
      if (lhs != gamma(lifted)) return fail("lifted inner identity fails at a=" + str(ea));
      Gamma comm = left_a(a).apply(w);
      sparse_axpy(comm, F(-1), right_a(a).apply(w));
      Gamma kda;
      sparse_axpy(kda, kappa, da);
      if (comm != kda) return fail("a.w - w.a differs from the shifted differential at a=" + str(ea));
    }
    return r;
  }

  /// (a, b, x) with d_x(ab) != (d_x a) b + a d_x b, if one exists.
  [[nodiscard]] std::optional<std::string> unbraided_leibniz_witness() const {
    const auto& p = qd().hopf();
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        Elem ea(qd().ab(), a), eb(qd().ab(), b);
        for (std::size_t i = 0; i < d_; ++i) {
          Elem naive = p.product(partial(i, ea), eb) + p.product(ea, partial(i, eb));
          if (!(partial(i, p.product(ea, eb)) == naive))
            return "a=" + str(ea) + " b=" + str(eb) + " x=" + str(xs_[i]);
        }
      }
    return std::nullopt;
  }

  [[nodiscard]] std::string str(const Elem& x) const { return element_str(t_.group(), x); }

private:
  void require_a(const Elem& a) const {
    if (a.basis() != qd().ab()) throw SideMismatch("element must lie in A");
  }
  [[nodiscard]] Vec<F> unit_vec(std::size_t i) const {
    Vec<F> v(d_);
    v.at(i) = F(1);
    return v;
  }
  [[nodiscard]] Vec<F> dense(const Gamma& g) const {
    Vec<F> v(gamma_dim());
    for (const auto& [k, c] : g) v[k] = c;
    return v;
  }

  template <class Build>
  const SparseOp<F>& cached(std::vector<std::optional<SparseOp<F>>>& cache, std::size_t i, Build&& build) const {
    if (cache.empty()) cache.resize(n_);
    auto& slot = cache.at(i);
    if (!slot) slot = build();
    return *slot;
  }
  template <class Get>
  SparseOp<F> combine(const Elem& x, Get&& get) const {
    SparseOp<F> r;
    r.cols.resize(gamma_dim());
    for (const auto& [i, c] : x.terms()) r.add(c, get(i));
    return r;
  }

  SparseOp<F> build_left_a(std::size_t a) const {
    const auto& p = qd().hopf();
    SparseOp<F> op;
    op.cols.resize(gamma_dim());
    p.for_each_coproduct(qd().ab(), a, [&](std::size_t u, std::size_t v) {
      const auto& m = act_a_[u];
      for (std::size_t g = 0; g < n_; ++g) {
        Elem vg = p.product(Elem(qd().ab(), v), Elem(qd().ab(), g));
        if (vg.is_zero()) continue;
        for (std::size_t j = 0; j < d_; ++j)
          for (std::size_t i = 0; i < d_; ++i) {
            if (detail::scalar_is_zero(m(j, i))) continue;
            for (const auto& [b, c] : vg.terms()) sparse_add(op.cols[j * n_ + g], i * n_ + b, m(j, i) * c);
          }
      }
    });
    return op;
  }
  SparseOp<F> build_right_a(std::size_t a) const {
    const auto& p = qd().hopf();
    SparseOp<F> op;
    op.cols.resize(gamma_dim());
    for (std::size_t g = 0; g < n_; ++g) {
      Elem ga = p.product(Elem(qd().ab(), g), Elem(qd().ab(), a));
      for (std::size_t j = 0; j < d_; ++j)
        for (const auto& [b, c] : ga.terms()) sparse_add(op.cols[j * n_ + g], j * n_ + b, c);
    }
    return op;
  }
  SparseOp<F> build_left_h(std::size_t h) const {
    const auto& p = qd().hopf();
    SparseOp<F> op;
    op.cols.resize(gamma_dim());
    p.for_each_coproduct(qd().hb(), h, [&](std::size_t u, std::size_t v) {
      const auto& m = act_h_[u];
      for (std::size_t g = 0; g < n_; ++g)
        p.for_each_coproduct(qd().ab(), g, [&](std::size_t s, std::size_t t) {
          if (s != v) return;
          for (std::size_t j = 0; j < d_; ++j)
            for (std::size_t i = 0; i < d_; ++i)
              if (!detail::scalar_is_zero(m(j, i))) sparse_add(op.cols[j * n_ + g], i * n_ + t, m(j, i));
        });
    });
    return op;
  }
  SparseOp<F> build_right_h(std::size_t h) const {
    const auto& p = qd().hopf();
    SparseOp<F> op;
    op.cols.resize(gamma_dim());
    for (std::size_t g = 0; g < n_; ++g)
      p.for_each_coproduct(qd().ab(), g, [&](std::size_t s, std::size_t t) {
        if (t != h) return;
        for (std::size_t j = 0; j < d_; ++j) sparse_add(op.cols[j * n_ + g], j * n_ + s, F(1));
      });
    return op;
  }

  TangentSpace<F> t_;
  std::size_t n_ = 0, d_ = 0;
  std::vector<Elem> xs_;
  std::vector<Matrix<F>> act_a_, act_h_;
  std::vector<std::vector<Vec<F>>> bracket_;
  Matrix<F> psi_;
  mutable std::vector<std::optional<SparseOp<F>>> left_a_, right_a_, left_h_, right_h_;
};

/// Runs the named checks (all_checks() ids); an unstable tangent space reports only the stability failure.
template <class F>
std::vector<CheckResult> verify_calculus(const TangentSpace<F>& t, const std::vector<std::string>& checks = all_checks()) {
  for (const auto& c : checks)
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
      throw InputError("unknown check: " + c);
  auto wanted = [&](const std::string& id) { return std::find(checks.begin(), checks.end(), id) != checks.end(); };
  std::vector<CheckResult> out;
  if (!t.stable()) {
    out.push_back({"stability", false, *t.stability_witness()});
    return out;
  }
  if (wanted("stability")) out.push_back({"stability", true, ""});
  if (t.dim() == 0) {
    for (const auto& id : all_checks())
      if (id != "stability" && wanted(id)) out.push_back({id, true, "zero tangent space"});
    return out;
  }
  FirstOrderCalculus<F> calc(t);
  for (const auto& id : all_checks()) {
    if (id == "stability" || !wanted(id)) continue;
    if (id == "leibniz") out.push_back(calc.check_leibniz());
    if (id == "bracket") out.push_back(calc.check_bracket());
    if (id == "jacobi") out.push_back(calc.check_jacobi());
    if (id == "ybe") out.push_back(calc.check_ybe());
    if (id == "bimodule") out.push_back(calc.check_bimodule());
    if (id == "surjectivity") out.push_back(calc.check_surjectivity());
    if (id == "inner" && t.inner()) out.push_back(calc.check_inner());
  }
  return out;
}

} // namespace qtangent
