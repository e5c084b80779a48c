#pragma once

#include "qtangent/calculus.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtangent {

template <class F>
FirstOrderCalculus<F> calculus_meet(const FirstOrderCalculus<F>& a, const FirstOrderCalculus<F>& b) {
  return FirstOrderCalculus<F>(tangent_meet(a.tangent(), b.tangent()));
}

template <class F>
FirstOrderCalculus<F> calculus_join(const FirstOrderCalculus<F>& a, const FirstOrderCalculus<F>& b) {
  return FirstOrderCalculus<F>(tangent_join(a.tangent(), b.tangent()));
}

/// Two lambdas are equivalent when they give the same tangent space (both zero counts as equal).
inline bool lambda_equivalent(const QuantumDouble<Cyclotomic>& qd, const CharacterTable& t, std::size_t row,
                              const HopfElement<Cyclotomic>& a, const HopfElement<Cyclotomic>& b) {
  auto make = [&](const HopfElement<Cyclotomic>& l) -> std::optional<TangentSpace<Cyclotomic>> {
    try {
      return tangent_from_lambda(qd, t, row, l);
    } catch (const EmptyTangentError&) {
      return std::nullopt;
    }
  };
  auto ta = make(a), tb = make(b);
  if (!ta || !tb) return !ta && !tb;
  return *ta == *tb;
}

/// "e", "()" or a product of cycles "(1,2)(3,4)" for an element of g, composed left to right.
inline std::size_t parse_element(const FiniteGroup& g, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "e" || s == "()") return 0;
  Perm prod = Perm::identity(g.degree());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw InputError("malformed cycle notation '" + std::string(text) + "'");
    auto close = s.find(')', i);
    if (close == std::string::npos) throw InputError("unclosed cycle in '" + std::string(text) + "'");
    std::vector<long> cyc;
    std::string body = s.substr(i + 1, close - i - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      std::string num = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed cycle entry in '" + std::string(text) + "'");
      long v = std::stol(num);
      if (v < 1 || static_cast<std::size_t>(v) > g.degree()) throw InputError("cycle entry out of range in '" + std::string(text) + "'");
      cyc.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    prod = prod * Perm::from_cycles(g.degree(), {cyc});
    i = close + 1;
  }
  return g.index_of(prod);
}

/// "c1*g1; c2*g2; ..." with cyclotomic coefficients; "*" may be omitted for coefficient 1.
inline HopfElement<Cyclotomic> parse_group_element(const FiniteGroup& g, const CyclotomicFieldPtr& field,
                                                   std::string_view text, Basis basis = Basis::Group) {
  HopfElement<Cyclotomic> x(basis);
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    auto semi = s.find(';', start);
    std::string term = s.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    start = semi == std::string::npos ? s.size() + 1 : semi + 1;
    if (term.find_first_not_of(" \t") == std::string::npos) continue;
    auto star = term.rfind('*');
    auto paren = term.find('(');
    if (star != std::string::npos && (paren == std::string::npos || star < paren)) {
      x.add(parse_element(g, term.substr(star + 1)), Cyclotomic::parse(term.substr(0, star), field));
    } else {
      x.add(parse_element(g, term), Cyclotomic(1));
    }
  }
  if (x.is_zero()) throw InputError("empty element '" + s + "'");
  return x;
}

struct LambdaTerm {
  std::string element;
  std::string coefficient;
};

/// Concrete lambda for a character family and what it produced.
struct Instantiation {
  std::string source; ///< "search" or "user"
  std::vector<LambdaTerm> lambda_support;
  std::size_t tangent_dim = 0;
  std::size_t rank = 0; ///< tangent_dim / chi(e)
  bool coirreducible = false;
  std::optional<std::string> subgroup_generator;
  std::size_t subgroup_order = 0;
  std::string multiplicity;
};

struct CalculusRecord {
  std::string kind;
  std::size_t dimension = 0;
  std::optional<std::string> class_representative;
  std::size_t class_size = 0;
  std::optional<std::size_t> character_index;
  std::vector<std::string> character_row;
  std::string parameter_space;
  std::optional<Instantiation> instantiation;
  std::vector<CheckResult> verification;
  std::optional<std::size_t> exterior_rank2;
  std::optional<std::string> error;

  [[nodiscard]] bool passed() const {
    if (error) return false;
    for (const auto& c : verification)
      if (!c.passed) return false;
    return true;
  }
};

/// Named exact cross-check with a human-readable outcome.
struct CrossCheck {
  std::string name;
  bool passed = true;
  std::string detail;
  /// Number of proper right ideals exercised, for the double-mirror check.
  std::size_t count = 0;
};

struct ClassificationReport {
  std::string group;
  std::size_t order = 0;
  Side side = Side::Functions;
  unsigned conductor = 1;
  std::vector<CalculusRecord> calculi;
  std::size_t dimension_sum = 0;
  bool decomposition_ok = false;
  std::string decomposition_detail;
  std::vector<CrossCheck> cross_checks;

  [[nodiscard]] bool passed() const {
    if (!decomposition_ok) return false;
    for (const auto& c : calculi)
      if (!c.passed()) return false;
    for (const auto& c : cross_checks)
      if (!c.passed) return false;
    return true;
  }
};

inline std::string side_name(Side s) { return s == Side::Functions ? "functions" : "group_algebra"; }

inline Side parse_side(const std::string& s) {
  if (s == "functions") return Side::Functions;
  if (s == "group_algebra") return Side::GroupAlgebra;
  throw InputError("unknown side '" + s + "' (expected functions or group_algebra)");
}

inline std::string parameter_space(std::size_t d) { return "CP^" + std::to_string(d - 1); }

struct ClassifyOptions {
  bool verify = true;
  std::vector<std::string> checks = all_checks();
  bool exterior_rank = true;
  /// User lambdas by character row, replacing the rank-one search for that row.
  std::map<std::size_t, HopfElement<Cyclotomic>> user_lambda;
};

namespace detail {

template <class F>
void fill_calculus_data(CalculusRecord& r, const TangentSpace<F>& t, const ClassifyOptions& opt) {
  if (opt.verify) r.verification = verify_calculus(t, opt.checks);
  if (opt.exterior_rank && t.stable() && t.dim() > 0) r.exterior_rank2 = FirstOrderCalculus<F>(t).exterior_rank2();
}

} // namespace detail

/// One coirreducible calculus per nontrivial class, with the direct-sum check ker(eps) = sum of L_C.
inline ClassificationReport classify_functions(const FiniteGroup& g, const ClassifyOptions& opt = {}) {
  QuantumDouble<Rational> qd(HopfPair<Rational>(std::make_shared<const FiniteGroup>(g)), Side::Functions);
  ClassificationReport rep;
  rep.group = g.name();
  rep.order = g.order();
  rep.side = Side::Functions;
  if (g.order() == 1) {
    rep.decomposition_ok = true;
    rep.decomposition_detail = "trivial group: no calculi";
    return rep;
  }
  auto ts = class_tangents(qd);
  Subspace<Rational> join = Subspace<Rational>::zero(g.order() - 1);
  for (std::size_t c = 1; c < g.class_count(); ++c) {
    const auto& t = ts[c - 1];
    CalculusRecord r;
    r.kind = "conjugacy-class";
    r.dimension = t.dim();
    r.class_representative = g.element(g.classes()[c][0]).str();
    r.class_size = g.classes()[c].size();
    r.parameter_space = parameter_space(1);
    detail::fill_calculus_data(r, t, opt);
    rep.dimension_sum += t.dim();
    join = subspace_join(join, t.space());
    rep.calculi.push_back(std::move(r));
  }
  rep.decomposition_ok = rep.dimension_sum == g.order() - 1 && join.dim() == g.order() - 1;
  rep.decomposition_detail = "sum of class tangent dims " + std::to_string(rep.dimension_sum) + ", join dim " +
                             std::to_string(join.dim()) + ", |G| - 1 = " + std::to_string(g.order() - 1);
  return rep;
}

/// One family per nontrivial character, instantiated by the rank-one lambda search (or a user lambda).
/// The decomposition check compares the sum of chi(e)^2 and the join of the full isotypic blocks
/// (lambda = e) with ker(eps).
inline ClassificationReport classify_group_algebra(const FiniteGroup& g, const ClassifyOptions& opt = {}) {
  const auto tab = character_table(g);
  QuantumDouble<Cyclotomic> qd(HopfPair<Cyclotomic>(std::make_shared<const FiniteGroup>(g)), Side::GroupAlgebra);
  ClassificationReport rep;
  rep.group = g.name();
  rep.order = g.order();
  rep.side = Side::GroupAlgebra;
  rep.conductor = tab.conductor;
  for (const auto& [row, lam] : opt.user_lambda)
    if (row == 0 || row >= tab.size()) throw InputError("lambda given for character row " + std::to_string(row) + " which is not a nontrivial character");
  if (g.order() == 1) {
    rep.decomposition_ok = true;
    rep.decomposition_detail = "trivial group: no calculi";
    return rep;
  }
  std::size_t square_sum = 0;
  Subspace<Cyclotomic> join = Subspace<Cyclotomic>::zero(g.order() - 1);
  const HopfElement<Cyclotomic> unit(Basis::Group, 0);
  for (std::size_t row = 1; row < tab.size(); ++row) {
    const auto deg = static_cast<std::size_t>(tab.degrees[row]);
    square_sum += deg * deg;
    join = subspace_join(join, tangent_from_lambda(qd, tab, row, unit).space());

    CalculusRecord r;
    r.kind = "character-family";
    r.dimension = deg;
    r.character_index = row;
    for (std::size_t c = 0; c < g.class_count(); ++c) r.character_row.push_back(tab.rows[row][c].str());
    r.parameter_space = parameter_space(deg);
    rep.dimension_sum += deg;

    Instantiation inst;
    HopfElement<Cyclotomic> lam;
    if (auto it = opt.user_lambda.find(row); it != opt.user_lambda.end()) {
      inst.source = "user";
      lam = it->second;
    } else {
      auto [found, choice] = instantiate_lambda(g, tab, row);
      inst.source = "search";
      lam = found;
      inst.subgroup_generator = g.element(choice.subgroup_generator).str();
      inst.subgroup_order = choice.subgroup_order;
      inst.multiplicity = choice.multiplicity.str();
    }
    for (const auto& [i, c] : lam.terms()) inst.lambda_support.push_back({g.element(i).str(), c.str()});
    try {
      auto t = tangent_from_lambda(qd, tab, row, lam);
      inst.tangent_dim = t.dim();
      inst.rank = t.dim() / deg;
      inst.coirreducible = inst.rank == 1 && t.dim() == deg;
      if (t.dim() % deg != 0) r.error = "tangent dimension is not a multiple of chi(e)";
      detail::fill_calculus_data(r, t, opt);
    } catch (const EmptyTangentError& e) {
      r.error = e.what();
    }
    r.instantiation = std::move(inst);
    rep.calculi.push_back(std::move(r));
  }
  rep.decomposition_ok = square_sum == g.order() - 1 && join.dim() == g.order() - 1;
  rep.decomposition_detail = "sum of chi(e)^2 over nontrivial chi " + std::to_string(square_sum) +
                             ", join of isotypic blocks dim " + std::to_string(join.dim()) + ", |G| - 1 = " +
                             std::to_string(g.order() - 1);
  return rep;
}

inline ClassificationReport classify(const FiniteGroup& g, Side side, const ClassifyOptions& opt = {}) {
  return side == Side::Functions ? classify_functions(g, opt) : classify_group_algebra(g, opt);
}

namespace detail {

template <class F>
CrossCheck run_cross(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {name, failure.empty(), failure.empty() ? "ok" : failure};
  } catch (const Error& e) {
    return {name, false, e.what()};
  }
}

/// Duality, central generation and mirror laws for one central element c of H and its tangent.
template <class F>
std::vector<CrossCheck> mirror_checks(const QuantumDouble<F>& qd, const HopfElement<F>& c,
                                      const TangentSpace<F>& expected, const std::string& label) {
  using Hand = typename QuotientIdeal<F>::Hand;
  std::vector<CrossCheck> out;
  out.push_back(run_cross<F>("central " + label, [&]() -> std::string {
    return centrally_generated(qd, c) == expected ? "" : "L_c differs from the expected tangent";
  }));
  out.push_back(run_cross<F>("mirror-zero " + label, [&]() -> std::string {
    auto m = mirror_ideal(make_ideal<F>(qd, {}, Hand::Right), c);
    return m.dim() == qd.dim() - 1 ? "" : "mirror of {0} is not ker(eps)";
  }));
  out.push_back(run_cross<F>("mirror-keps " + label, [&]() -> std::string {
    auto m = mirror_ideal(make_ideal(qd, qd.keps_basis(qd.ab()), Hand::Right), c);
    return m.space == ideal_from_tangent(expected).space ? "" : "mirror of ker(eps) is not the ideal of L_c";
  }));
  std::size_t proper = 0;
  auto dm = run_cross<F>("double-mirror " + label, [&]() -> std::string {
    for (const auto& m : sample_right_ideals(qd)) {
      auto twice = mirror_ideal(mirror_ideal(m, c), c);
      if (!twice.space.contains(m.space)) return "M_R is not contained in its double mirror";
      if (m.dim() > 0 && m.dim() < qd.dim() - 1) ++proper;
    }
    return "";
  });
  dm.count = proper;
  if (dm.passed) dm.detail = std::to_string(proper) + " proper right ideals";
  out.push_back(std::move(dm));
  return out;
}

} // namespace detail

/// Inner, central, mirror and duality cross-checks tying the constructions to the classification.
inline std::vector<CrossCheck> cross_checks(const FiniteGroup& g, Side side) {
  std::vector<CrossCheck> out;
  if (g.order() == 1) return out;
  auto gp = std::make_shared<const FiniteGroup>(g);
  if (side == Side::Functions) {
    using F = Rational;
    QuantumDouble<F> qd(HopfPair<F>(gp), side);
    auto ts = class_tangents(qd);
    for (std::size_t c = 1; c < g.class_count(); ++c) {
      const auto& cls = g.classes()[c];
      const auto& t = ts[c - 1];
      const std::string label = g.element(cls[0]).str();
      HopfElement<F> ind(Basis::Function), ind_e(Basis::Function, 0), sum(Basis::Group);
      for (auto e : cls) {
        ind.add(e, F(1));
        ind_e.add(e, F(1));
        sum.add(e, F(1));
      }
      out.push_back(detail::run_cross<F>("inner-I " + label, [&]() -> std::string {
        return inner_tangent(qd, ind_e, InnerVariant<F>::TypeI) == t ? "" : "type-I tangent differs from the class tangent";
      }));
      out.push_back(detail::run_cross<F>("inner-II " + label, [&]() -> std::string {
        return inner_tangent(qd, ind, InnerVariant<F>::TypeII, F(1)) == t ? "" : "type-II tangent differs from the class tangent";
      }));
      out.push_back(detail::run_cross<F>("duality " + label, [&]() -> std::string {
        auto m = ideal_from_tangent(t);
        if (m.dim() + t.dim() != g.order() - 1) return "dim L + dim M != |G| - 1";
        return tangent_from_ideal(m) == t ? "" : "ideal round trip changed the tangent";
      }));
      for (auto& x : detail::mirror_checks(qd, sum, t, label)) out.push_back(std::move(x));
    }
  } else {
    using F = Cyclotomic;
    const auto tab = character_table(g);
    QuantumDouble<F> qd(HopfPair<F>(gp), side);
    const auto& p = qd.hopf();
    for (std::size_t row = 1; row < tab.size(); ++row) {
      const std::string label = "chi" + std::to_string(row);
      auto lam = instantiate_lambda(g, tab, row).first;
      auto t = tangent_from_lambda(qd, tab, row, lam);
      HopfElement<F> cfun(Basis::Function);
      for (std::size_t u = 0; u < g.order(); ++u)
        cfun.add(u, character_of(g, tab, row, p.product(HopfElement<F>(Basis::Group, u), lam)));
      out.push_back(detail::run_cross<F>("duality " + label, [&]() -> std::string {
        auto m = ideal_from_tangent(t);
        if (m.dim() + t.dim() != g.order() - 1) return "dim L + dim M != |G| - 1";
        return tangent_from_ideal(m) == t ? "" : "ideal round trip changed the tangent";
      }));
      out.push_back(detail::run_cross<F>("central-unrestricted " + label, [&]() -> std::string {
        return centrally_generated(qd, cfun, false) == t ? "" : "unrestricted L_c differs from the family tangent";
      }));
      for (auto& x : detail::mirror_checks(qd, cfun, t, label)) out.push_back(std::move(x));
    }
  }
  return out;
}

} // namespace qtangent
