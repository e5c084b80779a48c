#pragma once

#include "qtangent/character_table.hpp"
#include "qtangent/hopf.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtangent {

/// "c*(1,2)" terms for CG, "c*d(1,2)" for delta functions in C(G).
template <class F>
std::string element_str(const FiniteGroup& g, const HopfElement<F>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : x.terms()) {
    std::string coeff = to_string(c);
    if (coeff.find_first_of("+-", 1) != std::string::npos) coeff = "(" + coeff + ")";
    std::string term = coeff + "*" + (x.basis() == Basis::Function ? "d" : "") + g.element(i).str();
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

/// Data of an inner construction, kept so the inner identities can be checked.
template <class F>
struct InnerData {
  enum class Variant { TypeI, TypeIExtended, TypeII };
  HopfElement<F> alpha;
  Variant variant = Variant::TypeI;
  F lambda = F(1);
};

/// Subspace L of ker(eps) in H, in keps coordinates (the coefficients at g != e),
/// with the result of the double-stability test.
template <class F>
class TangentSpace {
public:
  using Elem = HopfElement<F>;

  TangentSpace(QuantumDouble<F> qd, Subspace<F> space, std::string provenance)
      : qd_(std::move(qd)), space_(std::move(space)), provenance_(std::move(provenance)) {
    if (space_.ambient() != qd_.dim() - 1) throw SideMismatch("tangent space ambient is not ker(eps)");
    compute_stability();
  }
  /// Span of the given elements of ker(eps) in H.
  static TangentSpace span(const QuantumDouble<F>& qd, const std::vector<Elem>& xs, std::string provenance) {
    std::vector<Vec<F>> rows;
    for (const auto& x : xs) rows.push_back(qd.keps_coords(x));
    return {qd, Subspace<F>(qd.dim() - 1, rows), std::move(provenance)};
  }

  [[nodiscard]] const QuantumDouble<F>& qd() const { return qd_; }
  [[nodiscard]] const FiniteGroup& group() const { return qd_.hopf().group(); }
  [[nodiscard]] Side side() const { return qd_.side(); }
  [[nodiscard]] const Subspace<F>& space() const { return space_; }
  [[nodiscard]] std::size_t dim() const { return space_.dim(); }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }
  [[nodiscard]] bool stable() const { return !witness_.has_value(); }
  /// Description of the first stability failure, in basis order.
  [[nodiscard]] const std::optional<std::string>& stability_witness() const { return witness_; }

  [[nodiscard]] const std::optional<InnerData<F>>& inner() const { return inner_; }
  void set_inner(InnerData<F> d) { inner_ = std::move(d); }

  [[nodiscard]] Elem element(std::size_t i) const { return qd_.from_keps_coords(qd_.hb(), space_.vector(i)); }
  [[nodiscard]] std::vector<Elem> elements() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(element(i));
    return out;
  }
  [[nodiscard]] bool contains(const Elem& x) const { return space_.contains(qd_.keps_coords(x)); }

  friend bool operator==(const TangentSpace& a, const TangentSpace& b) {
    return a.side() == b.side() && a.space_ == b.space_;
  }

private:
  void compute_stability() {
    const auto& g = group();
    for (std::size_t i = 0; i < dim() && !witness_; ++i) {
      Elem x = element(i);
      for (std::size_t h = 0; h < qd_.dim(); ++h) {
        Elem y = qd_.act_h(Elem(qd_.hb(), h), x);
        if (!contains(y)) {
          witness_ = element_str(g, Elem(qd_.hb(), h)) + " |> " + element_str(g, x) + " = " + element_str(g, y) +
                     " is not in L";
          break;
        }
        y = qd_.act_a(Elem(qd_.ab(), h), x);
        if (!contains(y)) {
          witness_ = element_str(g, Elem(qd_.ab(), h)) + " |> " + element_str(g, x) + " = " + element_str(g, y) +
                     " is not in L";
          break;
        }
      }
    }
  }

  QuantumDouble<F> qd_;
  Subspace<F> space_;
  std::string provenance_;
  std::optional<std::string> witness_;
  std::optional<InnerData<F>> inner_;
};

/// Subspace M of ker(eps) in A, in keps coordinates, with its handedness.
template <class F>
struct QuotientIdeal {
  enum class Hand { Left, Right };
  QuantumDouble<F> qd;
  Subspace<F> space;
  Hand hand = Hand::Left;

  [[nodiscard]] std::size_t dim() const { return space.dim(); }
  [[nodiscard]] HopfElement<F> element(std::size_t i) const { return qd.from_keps_coords(qd.ab(), space.vector(i)); }
  [[nodiscard]] bool contains(const HopfElement<F>& a) const { return space.contains(qd.keps_coords(a)); }
  friend bool operator==(const QuotientIdeal& a, const QuotientIdeal& b) {
    return a.hand == b.hand && a.space == b.space;
  }
};

template <class F>
QuotientIdeal<F> make_ideal(const QuantumDouble<F>& qd, const std::vector<HopfElement<F>>& xs,
                            typename QuotientIdeal<F>::Hand hand) {
  std::vector<Vec<F>> rows;
  for (const auto& x : xs) rows.push_back(qd.keps_coords(x));
  return {qd, Subspace<F>(qd.dim() - 1, rows), hand};
}

namespace detail {

/// <x, a> as a matrix on keps coordinates of H and A.
template <class F>
Matrix<F> keps_pairing(const QuantumDouble<F>& qd) {
  const std::size_t m = qd.dim() - 1;
  auto hs = qd.keps_basis(qd.hb()), as = qd.keps_basis(qd.ab());
  Matrix<F> p(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) p(i, j) = qd.hopf().pairing(hs[i], as[j]);
  return p;
}

/// Solution space in ker(eps) of H of the linear conditions cond(x) = 0, where
/// cond maps an element of ker(eps) to a vector of scalars.
template <class F, class Cond>
Subspace<F> solve_in_keps(const QuantumDouble<F>& qd, Basis b, Cond&& cond) {
  auto basis = qd.keps_basis(b);
  const std::size_t m = basis.size();
  std::vector<Vec<F>> cols;
  for (const auto& x : basis) cols.push_back(cond(x));
  const std::size_t r = cols.empty() ? 0 : cols[0].size();
  Matrix<F> sys(r, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < r; ++i) sys(i, j) = cols[j][i];
  if (r == 0) return Subspace<F>::full(m);
  return kernel(sys);
}

/// Ad(v) = v_(1) S v_(3) (x) v_(2) on A, as a tensor.
template <class F>
TensorElement<F> ad_left(const HopfPair<F>& p, Basis ab, const HopfElement<F>& v) {
  TensorElement<F> t(ab, ab);
  for (const auto& [i, c] : v.terms())
    p.for_each_coproduct2(ab, i, [&](std::size_t u, std::size_t w, std::size_t z) {
      t.add(p.product(HopfElement<F>(ab, u), p.antipode(HopfElement<F>(ab, z))), HopfElement<F>(ab, w), c);
    });
  return t;
}

/// Ad_R(a) = a_(2) (x) (S a_(1)) a_(3) on A.
template <class F>
TensorElement<F> ad_right(const HopfPair<F>& p, Basis ab, const HopfElement<F>& v) {
  TensorElement<F> t(ab, ab);
  for (const auto& [i, c] : v.terms())
    p.for_each_coproduct2(ab, i, [&](std::size_t u, std::size_t w, std::size_t z) {
      t.add(HopfElement<F>(ab, w), p.product(p.antipode(HopfElement<F>(ab, u)), HopfElement<F>(ab, z)), c);
    });
  return t;
}

} // namespace detail

// ---------------------------------------------------------------- classification

/// One tangent space span{g - e : g in C} per nontrivial conjugacy class, in class order.
template <class F>
std::vector<TangentSpace<F>> class_tangents(const QuantumDouble<F>& qd) {
  if (qd.side() != Side::Functions) throw SideMismatch("class tangents live on the functions side");
  const auto& g = qd.hopf().group();
  std::vector<TangentSpace<F>> out;
  for (std::size_t c = 1; c < g.class_count(); ++c) {
    std::vector<HopfElement<F>> xs;
    for (auto k : g.classes()[c]) xs.push_back(HopfElement<F>(Basis::Group, k) - HopfElement<F>(Basis::Group, 0));
    out.push_back(TangentSpace<F>::span(qd, xs, "conjugacy-class"));
  }
  return out;
}

/// Result of the rank-one search for a character.
struct LambdaChoice {
  std::size_t subgroup_generator = 0; ///< generator of the cyclic subgroup used
  std::size_t subgroup_order = 1;
  std::size_t phi_index = 0;           ///< phi(g^k) = zeta_|H|^{phi_index k}
  Rational multiplicity;
};

/// Searches cyclic subgroups (trivial first, by generator index) and their linear
/// characters phi for multiplicity <chi|_H, phi> = 1; returns lambda = sum phi(h^{-1}) h.
/// If none has multiplicity 1 the smallest positive multiplicity is used.
inline std::pair<HopfElement<Cyclotomic>, LambdaChoice> instantiate_lambda(const FiniteGroup& g,
                                                                            const CharacterTable& t,
                                                                            std::size_t row) {
  if (row == 0) throw InputError("lambda instantiation needs a nontrivial character");
  const long m = t.conductor;
  std::optional<std::pair<HopfElement<Cyclotomic>, LambdaChoice>> best;
  for (const auto& [gen, powers] : g.cyclic_subgroups()) {
    const long k = static_cast<long>(powers.size());
    for (long j = 0; j < k; ++j) {
      // phi(gen^l) = zeta_m^{(m/k) j l}
      auto phi = [&](long l) { return Cyclotomic::zeta(t.field, (m / k) * j * l); };
      Cyclotomic s;
      for (long l = 0; l < k; ++l) s += t.value(g, row, powers[static_cast<std::size_t>(l)]) * phi(l).conj();
      s = s * Cyclotomic(Rational(1, k));
      Rational mult = s.rational_value();
      if (mult.is_zero()) continue;
      if (best && !(mult < best->second.multiplicity)) continue;
      HopfElement<Cyclotomic> lam(Basis::Group);
      for (long l = 0; l < k; ++l) lam.add(powers[static_cast<std::size_t>(l)], phi(-l));
      best = std::make_pair(lam, LambdaChoice{gen, static_cast<std::size_t>(k), static_cast<std::size_t>(j), mult});
      if (mult.is_one()) return *best;
    }
  }
  if (!best) throw ConsistencyError("character restricts to zero on every cyclic subgroup");
  return *best;
}

/// chi extended linearly to CG.
inline Cyclotomic character_of(const FiniteGroup& g, const CharacterTable& t, std::size_t row,
                               const HopfElement<Cyclotomic>& x) {
  Cyclotomic s;
  for (const auto& [i, c] : x.terms()) s += c * t.value(g, row, i);
  return s;
}

/// L = span{u -> chi(g u lambda) - chi(g lambda) : g in G} in ker(eps) of C(G).
inline TangentSpace<Cyclotomic> tangent_from_lambda(const QuantumDouble<Cyclotomic>& qd, const CharacterTable& t,
                                                    std::size_t row, const HopfElement<Cyclotomic>& lambda) {
  if (qd.side() != Side::GroupAlgebra) throw SideMismatch("character tangents live on the group_algebra side");
  if (lambda.is_zero()) throw InputError("lambda must be nonzero");
  if (lambda.basis() != Basis::Group) throw SideMismatch("lambda must lie in CG");
  const auto& g = qd.hopf().group();
  const auto& p = qd.hopf();
  std::vector<HopfElement<Cyclotomic>> xs;
  for (std::size_t a = 0; a < g.order(); ++a) {
    HopfElement<Cyclotomic> ga(Basis::Group, a);
    Cyclotomic base = character_of(g, t, row, p.product(ga, lambda));
    HopfElement<Cyclotomic> x(Basis::Function);
    for (std::size_t u = 0; u < g.order(); ++u)
      x.add(u, character_of(g, t, row, p.product(p.product(ga, HopfElement<Cyclotomic>(Basis::Group, u)), lambda)) - base);
    xs.push_back(std::move(x));
  }
  auto ts = TangentSpace<Cyclotomic>::span(qd, xs, "character-family");
  if (ts.dim() == 0) throw EmptyTangentError("lambda is annihilated by the character: tangent space is zero");
  return ts;
}

// ---------------------------------------------------------------- duality

/// M = {a in ker(eps) of A : <x, a> = 0 for all x in L}; a left ideal for stable L.
template <class F>
QuotientIdeal<F> ideal_from_tangent(const TangentSpace<F>& t) {
  if (!t.stable()) throw StabilityError("tangent space is not double-stable: " + *t.stability_witness());
  return {t.qd(), annihilator(t.space(), detail::keps_pairing(t.qd())), QuotientIdeal<F>::Hand::Left};
}

/// Left ideal M stable under a |-> a_(1) S a_(3) (x) a_(2): first failure, if any.
template <class F>
std::optional<std::string> ideal_instability(const QuotientIdeal<F>& m) {
  const auto& qd = m.qd;
  const auto& p = qd.hopf();
  const auto& g = p.group();
  using Hand = typename QuotientIdeal<F>::Hand;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    HopfElement<F> v = m.element(i);
    for (std::size_t b = 0; b < qd.dim(); ++b) {
      HopfElement<F> ab(qd.ab(), b);
      HopfElement<F> prod = m.hand == Hand::Left ? p.product(ab, v) : p.product(v, ab);
      if (!m.contains(prod)) return "ideal not closed under multiplication by " + element_str(g, ab);
    }
    auto ad = m.hand == Hand::Left ? detail::ad_left(p, qd.ab(), v) : detail::ad_right(p, qd.ab(), v);
    for (std::size_t h = 0; h < qd.dim(); ++h) {
      // contract the leg that is not required to stay in M against the H basis element h
      HopfElement<F> leg(qd.ab());
      for (const auto& [k, c] : ad.terms()) {
        if (m.hand == Hand::Left && k.first == h) leg.add(k.second, c);
        if (m.hand == Hand::Right && k.second == h) leg.add(k.first, c);
      }
      if (!leg.is_zero() && !m.contains(leg))
        return "adjoint coaction of " + element_str(g, v) + " leaves the ideal";
    }
  }
  return std::nullopt;
}

template <class F>
TangentSpace<F> tangent_from_ideal(const QuotientIdeal<F>& m) {
  if (auto w = ideal_instability(m)) throw StabilityError(*w);
  auto p = detail::keps_pairing(m.qd);
  return {m.qd, annihilator(m.space, p.transpose()), "ideal-dual"};
}

// ---------------------------------------------------------------- inner calculi

/// Throws unless Ad(alpha) = 1 (x) alpha.
template <class F>
void require_ad_invariant(const QuantumDouble<F>& qd, const HopfElement<F>& alpha) {
  if (alpha.basis() != qd.ab()) throw SideMismatch("alpha must lie in A");
  TensorElement<F> expect(qd.ab(), qd.ab());
  expect.add(qd.hopf().one(qd.ab()), alpha);
  if (!(detail::ad_left(qd.hopf(), qd.ab(), alpha) == expect))
    throw StabilityError("alpha is not invariant under the adjoint coaction");
}

template <class F>
using InnerVariant = typename InnerData<F>::Variant;

/// Type I: {x : x_(1) <x_(2), alpha> = eps(alpha) x}. Extended type I: <x, a alpha> = <x, a> eps(alpha)
/// for a in ker(eps). Type II with scalar lambda: <x, a alpha> = <x, a>(eps(alpha) + lambda).
template <class F>
TangentSpace<F> inner_tangent(const QuantumDouble<F>& qd, const HopfElement<F>& alpha, InnerVariant<F> variant,
                              const F& lambda = F(1)) {
  require_ad_invariant(qd, alpha);
  const auto& p = qd.hopf();
  const F eps = p.counit(alpha);
  Subspace<F> sol;
  std::string tag;
  if (variant == InnerVariant<F>::TypeI) {
    tag = "inner-I";
    sol = detail::solve_in_keps(qd, qd.hb(), [&](const HopfElement<F>& x) {
      HopfElement<F> r(qd.hb());
      for (const auto& [i, c] : x.terms())
        p.for_each_coproduct(qd.hb(), i, [&](std::size_t u, std::size_t v) { r.add(u, c * alpha.coeff(v)); });
      r -= eps * x;
      return r.dense(qd.dim());
    });
  } else {
    const F shift = variant == InnerVariant<F>::TypeII ? eps + lambda : eps;
    tag = variant == InnerVariant<F>::TypeII ? "inner-II" : "inner-I-extended";
    auto as = qd.keps_basis(qd.ab());
    sol = detail::solve_in_keps(qd, qd.hb(), [&](const HopfElement<F>& x) {
      Vec<F> v;
      for (const auto& a : as) v.push_back(p.pairing(x, p.product(a, alpha)) - p.pairing(x, a) * shift);
      return v;
    });
  }
  TangentSpace<F> t(qd, sol, tag);
  t.set_inner({alpha, variant, lambda});
  return t;
}

// ---------------------------------------------------------------- centrally generated

/// x_a = <a, c_(1)> c_(2) - <a, c> 1.
template <class F>
HopfElement<F> central_vector(const QuantumDouble<F>& qd, const HopfElement<F>& c, const HopfElement<F>& a) {
  const auto& p = qd.hopf();
  HopfElement<F> r(qd.hb());
  for (const auto& [i, w] : c.terms())
    p.for_each_coproduct(qd.hb(), i, [&](std::size_t u, std::size_t v) {
      F s = a.coeff(u);
      if (!is_zero(s)) r.add(v, w * s);
    });
  r -= p.pairing(a, c) * p.one(qd.hb());
  return r;
}

/// L_c = span{x_a : a in ker(eps) of A} (restricted) or over all a in A. Checks that c is
/// central and that a -> x_a intertwines: h |> x_a = x_{a_(2)} <h, (S a_(1)) a_(3)>.
template <class F>
TangentSpace<F> centrally_generated(const QuantumDouble<F>& qd, const HopfElement<F>& c, bool restricted = true) {
  const auto& p = qd.hopf();
  if (c.basis() != qd.hb()) throw SideMismatch("central element must lie in H");
  for (std::size_t h = 0; h < qd.dim(); ++h) {
    HopfElement<F> hh(qd.hb(), h);
    if (!(p.product(c, hh) == p.product(hh, c))) throw InputError("element is not central in H");
  }
  std::vector<HopfElement<F>> as = restricted ? qd.keps_basis(qd.ab()) : std::vector<HopfElement<F>>{};
  if (!restricted)
    for (std::size_t i = 0; i < qd.dim(); ++i) as.emplace_back(qd.ab(), i);
  std::vector<HopfElement<F>> xs;
  for (const auto& a : as) xs.push_back(central_vector(qd, c, a));
  for (std::size_t h = 0; h < qd.dim(); ++h) {
    HopfElement<F> hh(qd.hb(), h);
    for (const auto& a : as) {
      HopfElement<F> rhs(qd.hb());
      for (const auto& [i, w] : a.terms())
        p.for_each_coproduct2(qd.ab(), i, [&](std::size_t u, std::size_t v, std::size_t z) {
          F s = p.pairing(hh, p.product(p.antipode(HopfElement<F>(qd.ab(), u)), HopfElement<F>(qd.ab(), z)));
          if (!is_zero(s)) rhs += (w * s) * central_vector(qd, c, HopfElement<F>(qd.ab(), v));
        });
      if (!(qd.act_h(hh, central_vector(qd, c, a)) == rhs))
        throw ConsistencyError("central generation map is not an intertwiner");
    }
  }
  auto t = TangentSpace<F>::span(qd, xs, "central");
  if (t.dim() == 0) throw EmptyTangentError("central element generates the zero tangent space");
  return t;
}

/// Right ideal M_R -> left ideal {a in ker(eps) : <m a, c> = 0 for m in M_R}, and the
/// left version {a : <a m, c> = 0} for a left ideal.
template <class F>
QuotientIdeal<F> mirror_ideal(const QuotientIdeal<F>& m, const HopfElement<F>& c) {
  const auto& qd = m.qd;
  const auto& p = qd.hopf();
  using Hand = typename QuotientIdeal<F>::Hand;
  if (c.basis() != qd.hb()) throw SideMismatch("central element must lie in H");
  for (std::size_t h = 0; h < qd.dim(); ++h) {
    HopfElement<F> hh(qd.hb(), h);
    if (!(p.product(c, hh) == p.product(hh, c))) throw InputError("element is not central in H");
  }
  if (auto w = ideal_instability(m)) throw StabilityError(*w);
  std::vector<HopfElement<F>> ms;
  for (std::size_t i = 0; i < m.dim(); ++i) ms.push_back(m.element(i));
  auto sol = detail::solve_in_keps(qd, qd.ab(), [&](const HopfElement<F>& a) {
    Vec<F> v;
    for (const auto& x : ms) v.push_back(p.pairing(m.hand == Hand::Right ? p.product(x, a) : p.product(a, x), c));
    return v;
  });
  return {qd, sol, m.hand == Hand::Right ? Hand::Left : Hand::Right};
}

/// Right ideals of ker(eps) in A stable under Ad_R, used as mirror inputs: on C(G) the functions
/// vanishing at e and on a union of nontrivial classes; on CG the ideals (g - e) N_k CG.
template <class F>
std::vector<QuotientIdeal<F>> sample_right_ideals(const QuantumDouble<F>& qd, std::size_t limit = 8) {
  using Hand = typename QuotientIdeal<F>::Hand;
  const auto& g = qd.hopf().group();
  std::vector<QuotientIdeal<F>> out;
  auto push = [&](QuotientIdeal<F> m) {
    for (const auto& o : out)
      if (o == m) return;
    if (out.size() < limit) out.push_back(std::move(m));
  };
  if (qd.side() == Side::Functions) {
    const std::size_t k = g.class_count() - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k) && out.size() < limit; ++mask) {
      std::vector<HopfElement<F>> xs;
      for (std::size_t c = 1; c <= k; ++c)
        if (!(mask >> (c - 1) & 1U))
          for (auto e : g.classes()[c]) xs.emplace_back(Basis::Function, e);
      push(make_ideal(qd, xs, Hand::Right));
    }
  } else {
    push(make_ideal<F>(qd, {}, Hand::Right));
    // generators (g - e) N_k with N_k the sum over the cyclic subgroup of k
    const auto cyc = g.cyclic_subgroups();
    for (const auto& [k, powers] : cyc)
      for (std::size_t e = 1; e < g.order() && out.size() < limit; ++e) {
        HopfElement<F> norm(Basis::Group);
        for (auto h : powers) norm.add(h, F(1));
        HopfElement<F> gen = qd.hopf().product(HopfElement<F>(Basis::Group, e) - HopfElement<F>(Basis::Group, 0), norm);
        if (gen.is_zero()) continue;
        std::vector<HopfElement<F>> xs;
        for (std::size_t h = 0; h < g.order(); ++h) xs.push_back(qd.hopf().product(gen, HopfElement<F>(Basis::Group, h)));
        push(make_ideal(qd, xs, Hand::Right));
      }
  }
  return out;
}

// ---------------------------------------------------------------- lattice

template <class F>
TangentSpace<F> tangent_meet(const TangentSpace<F>& a, const TangentSpace<F>& b) {
  if (a.side() != b.side() || a.group().elements() != b.group().elements())
    throw SideMismatch("meet of tangent spaces on different sides or groups");
  return {a.qd(), subspace_meet(a.space(), b.space()), "meet"};
}

template <class F>
TangentSpace<F> tangent_join(const TangentSpace<F>& a, const TangentSpace<F>& b) {
  if (a.side() != b.side() || a.group().elements() != b.group().elements())
    throw SideMismatch("join of tangent spaces on different sides or groups");
  return {a.qd(), subspace_join(a.space(), b.space()), "join"};
}

} // namespace qtangent
