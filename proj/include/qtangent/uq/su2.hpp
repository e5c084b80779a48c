#pragma once

#include "qtangent/uq/aword.hpp"
#include "qtangent/uq/pbw.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qtangent::uq {

/// lhs/rhs pair at a failing tensor entry.
struct Witness {
  std::vector<unsigned> indices;
  std::string lhs;
  std::string rhs;
};

struct QCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<Witness> witness;
};

/// Index of x^i_j (and of rho^i_j) in the order 11, 12, 21, 22.
constexpr std::size_t xi(unsigned i, unsigned j) { return 2 * i + j; }

inline RatFuncS lambda_q() { return RatFuncS::q() - RatFuncS::q_pow(-1); }

/// Spin-1/2 R-matrix (rho (x) rho)(R) on the basis 11, 12, 21, 22, scaled by `norm`.
inline Matrix<RatFuncS> r_matrix(const RatFuncS& norm = RatFuncS::s_pow(-1)) {
  Matrix<RatFuncS> r(4, 4);
  r(0, 0) = RatFuncS::q();
  r(1, 1) = RatFuncS(1);
  r(1, 2) = lambda_q();
  r(2, 2) = RatFuncS(1);
  r(3, 3) = RatFuncS::q();
  return norm * r;
}

/// M21[(ik),(jl)] = M[(ki),(lj)].
inline Matrix<RatFuncS> flip_legs(const Matrix<RatFuncS>& m) {
  Matrix<RatFuncS> out(4, 4);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned k = 0; k < 2; ++k)
      for (unsigned j = 0; j < 2; ++j)
        for (unsigned l = 0; l < 2; ++l) out(xi(i, k), xi(j, l)) = m(xi(k, i), xi(l, j));
  return out;
}

/// Partial transpose in the first (leg = 0) or second (leg = 1) tensor factor.
inline Matrix<RatFuncS> partial_transpose(const Matrix<RatFuncS>& m, int leg) {
  Matrix<RatFuncS> out(4, 4);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned k = 0; k < 2; ++k)
      for (unsigned j = 0; j < 2; ++j)
        for (unsigned l = 0; l < 2; ++l)
          out(xi(i, k), xi(j, l)) = leg == 0 ? m(xi(j, k), xi(i, l)) : m(xi(i, l), xi(j, k));
  return out;
}

/// (rho* (x) rho)(R) = (R^{-1})^{t1}.
inline Matrix<RatFuncS> r_dual_left(const Matrix<RatFuncS>& r) { return partial_transpose(inverse(r), 0); }
/// (rho (x) rho*)(R) = (R^{t2})^{-1}.
inline Matrix<RatFuncS> r_dual_right(const Matrix<RatFuncS>& r) { return inverse(partial_transpose(r, 1)); }

/// Places a 4x4 two-leg operator on legs p, q of a threefold tensor product of 2-dim spaces.
inline Matrix<RatFuncS> embed3(const Matrix<RatFuncS>& m, unsigned p, unsigned q) {
  const unsigned r = 3 - p - q;
  Matrix<RatFuncS> out(8, 8);
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      unsigned in[3] = {a >> 2, (a >> 1) & 1, a & 1};
      unsigned ou[3] = {b >> 2, (b >> 1) & 1, b & 1};
      if (in[r] != ou[r]) continue;
      out(a, b) = m(xi(in[p], in[q]), xi(ou[p], ou[q]));
    }
  return out;
}

constexpr std::size_t t3(unsigned a, unsigned b, unsigned c) { return 4 * a + 2 * b + c; }

/// C = q^{-1}K^2 + qK^{-2} + (q - q^{-1})^2 EF; throws ConsistencyError unless central.
inline PBWElement q_casimir() {
  const RatFuncS l = lambda_q();
  PBWElement c = RatFuncS::q_pow(-1) * PBWElement::K(2) + RatFuncS::q() * PBWElement::K(-2) +
                 (l * l) * (PBWElement::E() * PBWElement::F());
  for (const auto& g : {PBWElement::E(), PBWElement::F(), PBWElement::K()})
    if (!commutator(c, g).is_zero()) throw ConsistencyError("q-Casimir does not commute with a generator");
  return c;
}

/// Q(a), Q(b), Q(c), Q(d) for Q(x) = (x (x) id)(R21 R).
inline std::array<PBWElement, 4> q_matrix() {
  const RatFuncS t = RatFuncS::s_pow(-1) * lambda_q();
  return {PBWElement::K(2), t * (PBWElement::K() * PBWElement::F()), t * (PBWElement::E() * PBWElement::K()),
          RatFuncS::q_pow(-1) * q_casimir() - RatFuncS::q_pow(-2) * PBWElement::K(2)};
}

/// <Q(rho^i_j), rho^k_l> against (R21 R)_{(ik),(jl)} for an R-matrix scaled by `norm`.
inline QCheck verify_su2_consistency(const RatFuncS& norm = RatFuncS::s_pow(-1)) {
  const auto r = r_matrix(norm);
  const auto rr = flip_legs(r) * r;
  const auto q = q_matrix();
  QCheck out{"consistency", true, "", std::nullopt};
  unsigned ok = 0;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      WordPairing pair(q[xi(i, j)]);
      for (unsigned k = 0; k < 2; ++k)
        for (unsigned l = 0; l < 2; ++l) {
          RatFuncS lhs = pair(AWord::coord(k, l));
          const RatFuncS& rhs = rr(xi(i, k), xi(j, l));
          if (lhs == rhs) {
            ++ok;
          } else if (!out.witness) {
            out.witness = Witness{{i + 1, j + 1, k + 1, l + 1}, lhs.str(), rhs.str()};
          }
        }
    }
  out.passed = ok == 16;
  out.detail = std::to_string(ok) + "/16 entries";
  return out;
}

/// Coordinates of PBW elements in the span of four independent elements.
class PBWBasis {
public:
  explicit PBWBasis(std::vector<PBWElement> basis) : basis_(std::move(basis)) {
    for (const auto& b : basis_)
      for (const auto& [m, c] : b.terms()) monos_.insert(m);
    index_.assign(monos_.begin(), monos_.end());
    Matrix<RatFuncS> x(basis_.size(), index_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k)
      for (std::size_t m = 0; m < index_.size(); ++m) x(k, m) = basis_[k].coeff(index_[m]);
    auto rr = rref(x);
    if (rr.rank != basis_.size()) throw ConsistencyError("PBW elements are linearly dependent");
    pivots_ = rr.pivots;
    Matrix<RatFuncS> xp(basis_.size(), basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k)
      for (std::size_t p = 0; p < pivots_.size(); ++p) xp(k, p) = x(k, pivots_[p]);
    xpt_inv_ = inverse(xp.transpose());
  }

  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const PBWElement& operator[](std::size_t k) const { return basis_[k]; }

  [[nodiscard]] std::optional<Vec<RatFuncS>> coordinates(const PBWElement& y) const {
    Vec<RatFuncS> yp(dim());
    for (std::size_t p = 0; p < dim(); ++p) yp[p] = y.coeff(index_[pivots_[p]]);
    Vec<RatFuncS> c(dim());
    for (std::size_t k = 0; k < dim(); ++k)
      for (std::size_t p = 0; p < dim(); ++p) c[k] += xpt_inv_(k, p) * yp[p];
    PBWElement back;
    for (std::size_t k = 0; k < dim(); ++k) back += c[k] * basis_[k];
    if (!(back == y)) return std::nullopt;
    return c;
  }

  /// Coefficients c_{kl} with t = sum c_{kl} b_k (x) b_l, flattened as k * dim + l.
  [[nodiscard]] std::optional<Vec<RatFuncS>> coordinates(const PBWTensor& t) const {
    const std::size_t n = dim();
    Matrix<RatFuncS> tp(n, n);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = 0; r < n; ++r) {
        auto it = t.terms().find({index_[pivots_[p]], index_[pivots_[r]]});
        if (it != t.terms().end()) tp(p, r) = it->second;
      }
    auto c = xpt_inv_ * tp * xpt_inv_.transpose();
    PBWTensor back;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        if (!c(k, l).is_zero()) back.add(basis_[k], basis_[l], c(k, l));
    if (!(back == t)) return std::nullopt;
    Vec<RatFuncS> out(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) out[k * n + l] = c(k, l);
    return out;
  }

private:
  std::vector<PBWElement> basis_;
  std::set<Mono> monos_;
  std::vector<Mono> index_;
  std::vector<std::size_t> pivots_;
  Matrix<RatFuncS> xpt_inv_;
};

/// ad_x(y) = x(1) y S(x(2)).
inline PBWElement adjoint(const PBWElement& x, const PBWElement& y) {
  PBWElement out;
  const auto dx = coproduct(x);
  for (const auto& [k, c] : dx.terms())
    out += c * (PBWElement::mono(k.first) * y * antipode(PBWElement::mono(k.second)));
  return out;
}

/// Bracket tensor as a 4 x 16 matrix: column 4p + r holds the coordinates of [x_p, x_r].
inline Matrix<RatFuncS> bracket_via_adjoint(const PBWBasis& x) {
  Matrix<RatFuncS> b(4, 16);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t r = 0; r < 4; ++r) {
      auto c = x.coordinates(adjoint(x[p], x[r]));
      if (!c) throw ConsistencyError("adjoint action leaves the tangent space");
      for (std::size_t m = 0; m < 4; ++m) b(m, 4 * p + r) = (*c)[m];
    }
  return b;
}

/// [x^i_j, x^k_l] = x^a_b Q(rho^i_j (x) (S rho^k_a) rho^b_l) - delta^i_j x^k_l with Q = R21 R
/// expanded through the coproduct of the second argument into R-matrices.
inline Matrix<RatFuncS> bracket_via_r_matrix(const Matrix<RatFuncS>& r) {
  const auto y = embed3(r_dual_left(r), 1, 0) * embed3(r, 2, 0) * embed3(r, 0, 2) * embed3(r_dual_right(r), 0, 1);
  Matrix<RatFuncS> b(4, 16);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j)
      for (unsigned k = 0; k < 2; ++k)
        for (unsigned l = 0; l < 2; ++l) {
          const std::size_t col = 4 * xi(i, j) + xi(k, l);
          for (unsigned a = 0; a < 2; ++a)
            for (unsigned bb = 0; bb < 2; ++bb) b(xi(a, bb), col) = y(t3(i, a, bb), t3(j, k, l));
          if (i == j) b(xi(k, l), col) -= RatFuncS(1);
        }
  return b;
}

/// Braiding as a 16 x 16 matrix: column 4p + r holds the coordinates of Psi(x_p (x) x_r) in the
/// basis x_m (x) x_n (row 4m + n), from the R-matrix form of the braiding on L (x) L.
inline Matrix<RatFuncS> braiding_via_r_matrix(const Matrix<RatFuncS>& r) {
  const auto z1 = embed3(r_dual_left(r), 0, 2) * embed3(r, 1, 2);
  const auto z2 = embed3(r, 0, 2) * embed3(r_dual_right(r), 0, 1);
  Matrix<RatFuncS> psi(16, 16);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j)
      for (unsigned k = 0; k < 2; ++k)
        for (unsigned l = 0; l < 2; ++l) {
          const std::size_t col = 4 * xi(i, j) + xi(k, l);
          for (unsigned m = 0; m < 2; ++m)
            for (unsigned n = 0; n < 2; ++n)
              for (unsigned a = 0; a < 2; ++a)
                for (unsigned b = 0; b < 2; ++b) {
                  RatFuncS v;
                  for (unsigned c = 0; c < 2; ++c)
                    for (unsigned d = 0; d < 2; ++d) {
                      const auto& u = z1(t3(m, n, i), t3(c, d, a));
                      if (u.is_zero()) continue;
                      v += u * z2(t3(b, c, d), t3(j, k, l));
                    }
                  psi(4 * xi(m, n) + xi(a, b), col) = v;
                }
        }
  return psi;
}

/// Psi(x (x) y) = ad_{x(1)}(y) (x) x(2) - ad_x(y) (x) 1, decomposed in L (x) L.
inline Matrix<RatFuncS> braiding_via_adjoint(const PBWBasis& x) {
  Matrix<RatFuncS> psi(16, 16);
  for (std::size_t p = 0; p < 4; ++p) {
    const auto dx = coproduct(x[p]);
    for (std::size_t r = 0; r < 4; ++r) {
      PBWTensor t;
      for (const auto& [k, c] : dx.terms()) t.add(adjoint(PBWElement::mono(k.first), x[r]), PBWElement::mono(k.second), c);
      PBWTensor sub;
      sub.add(adjoint(x[p], x[r]), PBWElement(1));
      auto c = x.coordinates(t - sub);
      if (!c) throw ConsistencyError("braiding leaves L (x) L");
      for (std::size_t m = 0; m < 16; ++m) psi(m, 4 * p + r) = (*c)[m];
    }
  }
  return psi;
}

/// The 4-dim tangent space x^i_j = Q(rho^i_j) - delta^i_j with its bracket and braiding.
struct QTangent4 {
  std::array<PBWElement, 4> x;
  Matrix<RatFuncS> r;
  Matrix<RatFuncS> bracket;
  Matrix<RatFuncS> braiding;

  [[nodiscard]] PBWBasis basis() const { return PBWBasis({x.begin(), x.end()}); }
};

/// Compares two bracket tensors entrywise.
inline QCheck compare_brackets(const Matrix<RatFuncS>& a, const Matrix<RatFuncS>& b) {
  QCheck out{"dual-route", true, "", std::nullopt};
  unsigned ok = 0;
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t m = 0; m < 4; ++m) {
        if (a(m, 4 * p + r) == b(m, 4 * p + r)) {
          ++ok;
        } else if (!out.witness) {
          out.witness = Witness{{static_cast<unsigned>(p), static_cast<unsigned>(r), static_cast<unsigned>(m)},
                                a(m, 4 * p + r).str(), b(m, 4 * p + r).str()};
        }
      }
  out.passed = ok == 64;
  out.detail = std::to_string(ok) + "/64 structure constants";
  return out;
}

/// Throws ConsistencyError if the conventions fail the pairing check or the two bracket routes disagree.
inline QTangent4 su2_q_generators() {
  auto consistency = verify_su2_consistency();
  if (!consistency.passed) throw ConsistencyError("Q-matrix transcription fails the R21 R check: " + consistency.detail);
  const auto q = q_matrix();
  QTangent4 t;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) t.x[xi(i, j)] = q[xi(i, j)] - PBWElement(i == j ? 1 : 0);
  t.r = r_matrix();
  const auto basis = t.basis();
  t.bracket = bracket_via_r_matrix(t.r);
  auto routes = compare_brackets(bracket_via_adjoint(basis), t.bracket);
  if (!routes.passed) throw ConsistencyError("bracket routes disagree: " + routes.detail);
  t.braiding = braiding_via_r_matrix(t.r);
  return t;
}

/// Both identities R21[x1, R x2] = x2 Q - Q x2 and R21 Psi(x1 (x) R x2) = x2 R21 (x) x1 R.
inline QCheck verify_qlier(const QTangent4& t) {
  const auto& r = t.r;
  const auto r21 = flip_legs(r);
  const auto q = r21 * r;
  QCheck out{"qlier", true, "", std::nullopt};
  auto fail = [&](std::vector<unsigned> idx, const Vec<RatFuncS>& lhs, const Vec<RatFuncS>& rhs) {
    out.passed = false;
    if (out.witness) return;
    auto show = [](const Vec<RatFuncS>& v) {
      std::string s = "[";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
      return s + "]";
    };
    out.witness = Witness{std::move(idx), show(lhs), show(rhs)};
  };
  auto bracket = [&](std::size_t p, std::size_t s) {
    Vec<RatFuncS> v(4);
    for (std::size_t m = 0; m < 4; ++m) v[m] = t.bracket(m, 4 * p + s);
    return v;
  };
  auto braid = [&](std::size_t p, std::size_t s) {
    Vec<RatFuncS> v(16);
    for (std::size_t m = 0; m < 16; ++m) v[m] = t.braiding(m, 4 * p + s);
    return v;
  };
  auto axpy = [](Vec<RatFuncS>& y, const RatFuncS& a, const Vec<RatFuncS>& x) {
    if (a.is_zero()) return;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
  };
  auto unit = [](std::size_t n, std::size_t k) {
    Vec<RatFuncS> v(n);
    v[k] = RatFuncS(1);
    return v;
  };
  unsigned checked = 0;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned k = 0; k < 2; ++k)
      for (unsigned j = 0; j < 2; ++j)
        for (unsigned l = 0; l < 2; ++l) {
          Vec<RatFuncS> lhs1(4), rhs1(4), lhs2(16), rhs2(16);
          for (unsigned p = 0; p < 2; ++p)
            for (unsigned pq = 0; pq < 2; ++pq) {
              const auto& w = r21(xi(i, k), xi(p, pq));
              if (w.is_zero()) continue;
              for (unsigned m = 0; m < 2; ++m)
                for (unsigned n = 0; n < 2; ++n) {
                  RatFuncS c = w * r(xi(m, pq), xi(j, n));
                  axpy(lhs1, c, bracket(xi(p, m), xi(n, l)));
                  axpy(lhs2, c, braid(xi(p, m), xi(n, l)));
                }
            }
          for (unsigned n = 0; n < 2; ++n) {
            axpy(rhs1, q(xi(i, n), xi(j, l)), unit(4, xi(k, n)));
            axpy(rhs1, -q(xi(i, k), xi(j, n)), unit(4, xi(n, l)));
          }
          for (unsigned m = 0; m < 2; ++m)
            for (unsigned n = 0; n < 2; ++n)
              for (unsigned a = 0; a < 2; ++a)
                for (unsigned b = 0; b < 2; ++b) {
                  RatFuncS c = r21(xi(i, a), xi(m, n)) * r(xi(b, n), xi(j, l));
                  axpy(rhs2, c, unit(16, 4 * xi(k, a) + xi(m, b)));
                }
          if (lhs1 != rhs1) fail({1, i + 1, k + 1, j + 1, l + 1}, lhs1, rhs1);
          if (lhs2 != rhs2) fail({2, i + 1, k + 1, j + 1, l + 1}, lhs2, rhs2);
          checked += 2;
        }
  out.detail = std::to_string(checked) + " tensor entries, two identities";
  return out;
}

/// (Psi (x) 1)(1 (x) Psi)(Psi (x) 1) = (1 (x) Psi)(Psi (x) 1)(1 (x) Psi) on L (x) L (x) L.
inline QCheck verify_braid_relation(const Matrix<RatFuncS>& psi) {
  const auto id = Matrix<RatFuncS>::identity(4);
  const auto p12 = kron(psi, id);
  const auto p23 = kron(id, psi);
  const auto lhs = p12 * p23 * p12;
  const auto rhs = p23 * p12 * p23;
  QCheck out{"braid", lhs == rhs, "64 x 64 operator identity", std::nullopt};
  if (!out.passed)
    for (std::size_t a = 0; a < 64 && !out.witness; ++a)
      for (std::size_t b = 0; b < 64; ++b)
        if (!(lhs(a, b) == rhs(a, b))) {
          out.witness = Witness{{static_cast<unsigned>(a), static_cast<unsigned>(b)}, lhs(a, b).str(), rhs(a, b).str()};
          break;
        }
  return out;
}

/// x_w = <w, C(1)> C(2) - <w, C> 1 for w in {a, b, c, d}.
inline std::array<PBWElement, 4> lc_tangent_sl2() {
  const auto c = q_casimir();
  const auto dc = coproduct(c);
  const Rep rho = spin_half();
  std::map<Mono, Matrix<RatFuncS>> images;
  for (const auto& [k, v] : dc.terms())
    if (!images.count(k.first)) images.emplace(k.first, represent(rho, PBWElement::mono(k.first)));
  const auto rc = represent(rho, c);
  std::array<PBWElement, 4> out;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) {
      PBWElement x;
      for (const auto& [k, v] : dc.terms()) {
        const auto& e = images.at(k.first)(i, j);
        if (!e.is_zero()) x.add(k.second, v * e);
      }
      out[xi(i, j)] = x - PBWElement(rc(i, j));
    }
  return out;
}

/// Canonical subspace of the PBW coefficient space spanned by `elems`, over a shared monomial index.
inline Subspace<RatFuncS> pbw_span(const std::vector<PBWElement>& elems, const std::vector<Mono>& index) {
  std::vector<Vec<RatFuncS>> rows;
  for (const auto& e : elems) {
    Vec<RatFuncS> v(index.size());
    for (std::size_t m = 0; m < index.size(); ++m) v[m] = e.coeff(index[m]);
    rows.push_back(std::move(v));
  }
  return Subspace<RatFuncS>(Matrix<RatFuncS>(index.size(), rows));
}

inline QCheck verify_lc_tangent(const QTangent4& t) {
  const auto lc = lc_tangent_sl2();
  std::set<Mono> monos;
  for (const auto* arr : {&lc, &t.x})
    for (const auto& e : *arr)
      for (const auto& [m, c] : e.terms()) monos.insert(m);
  std::vector<Mono> index(monos.begin(), monos.end());
  const auto a = pbw_span({lc.begin(), lc.end()}, index);
  const auto b = pbw_span({t.x.begin(), t.x.end()}, index);
  QCheck out{"lc", a.dim() == 4 && a == b, "dim L_C = " + std::to_string(a.dim()), std::nullopt};
  if (!out.passed) out.witness = Witness{{static_cast<unsigned>(a.dim()), static_cast<unsigned>(b.dim())}, "L_C", "span x^i_j"};
  return out;
}

/// q^2 / ((q^3 - 1)(q - 1)).
inline RatFuncS qtrace_normalization() {
  const RatFuncS q = RatFuncS::q();
  return RatFuncS::q_pow(2) / ((RatFuncS::q_pow(3) - RatFuncS(1)) * (q - RatFuncS(1)));
}

/// alpha = N (q a + q^{-1} d).
inline AWord qtrace(const RatFuncS& norm = qtrace_normalization()) {
  return norm * (RatFuncS::q() * AWord::parse("a") + RatFuncS::q_pow(-1) * AWord::parse("d"));
}

/// <x, (w - eps(w)) alpha> = <x, w - eps(w)> (eps(alpha) + 1) for the tangent basis and all words
/// of length 1..max_degree. A necessary condition at bounded degree.
inline QCheck qtrace_inner_check(const QTangent4& t, unsigned max_degree = 3,
                                 const RatFuncS& norm = qtrace_normalization()) {
  if (max_degree < 1) throw InputError("max degree must be at least 1");
  const AWord alpha = qtrace(norm);
  const RatFuncS shift = alpha.counit() + RatFuncS(1);
  std::vector<AWord::Word> words{{}};
  std::vector<AWord::Word> all;
  for (unsigned d = 0; d < max_degree; ++d) {
    std::vector<AWord::Word> next;
    for (const auto& w : words)
      for (char ch : {'a', 'b', 'c', 'd'}) {
        auto v = w;
        v.push_back(letter(ch));
        next.push_back(v);
      }
    all.insert(all.end(), next.begin(), next.end());
    words = std::move(next);
  }
  QCheck out{"qtrace", true, "", std::nullopt};
  unsigned ok = 0, total = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    WordPairing pair(t.x[p]);
    for (const auto& w : all) {
      AWord u = AWord::word(w) - AWord(AWord::word(w).counit());
      RatFuncS lhs = pair(u * alpha);
      RatFuncS rhs = pair(u) * shift;
      ++total;
      if (lhs == rhs) {
        ++ok;
      } else if (!out.witness) {
        std::vector<unsigned> idx{static_cast<unsigned>(p)};
        for (const auto& l : w) idx.push_back(static_cast<unsigned>(xi(l.i, l.j)));
        out.witness = Witness{std::move(idx), lhs.str(), rhs.str()};
      }
    }
  }
  out.passed = ok == total;
  out.detail = "partial (degree <= " + std::to_string(max_degree) + "): " + std::to_string(ok) + "/" +
               std::to_string(total) + " pairings";
  return out;
}

struct ClassicalLimit {
  bool zeroth_order_vanishes = false;
  /// d/ds at s = 1 of the bracket tensor, same layout as QTangent4::bracket.
  Matrix<Rational> first_order;
  /// First-order bracket in the basis t1 = x^1_2, t2 = x^2_1, t3 = x^1_1 - x^2_2, tau = x^1_1 + x^2_2.
  Matrix<Rational> sl2_basis;
  std::optional<Rational> kappa;
  bool kappa_uniform = false;
  bool trace_central = false;
  bool lie_bracket = false;
  /// The braiding in the x basis specializes to the flip at s = 1.
  bool raw_braiding_is_flip = false;
  /// Braiding limit for the rescaled generators t_i / (s - 1), tau / (s - 1)^2, same layout as
  /// QTangent4::braiding in the basis t1, t2, t3, tau.
  Matrix<Rational> rescaled_braiding;
  bool braiding_not_flip = false;
  /// First input pair 4a + b whose rescaled braiding differs from the flip.
  std::optional<std::size_t> non_flip_column;
  bool correction_antisymmetric = false;
  std::string failure;

  [[nodiscard]] bool passed() const {
    return zeroth_order_vanishes && kappa && kappa_uniform && trace_central && lie_bracket && braiding_not_flip &&
           correction_antisymmetric;
  }
};

/// Throws PoleError if any entry has a pole at s = 1.
inline ClassicalLimit classical_limit(const QTangent4& t) {
  ClassicalLimit out;
  out.zeroth_order_vanishes = true;
  out.first_order = Matrix<Rational>(4, 16);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t c = 0; c < 16; ++c) {
      if (!t.bracket(m, c).specialize_s1().is_zero()) out.zeroth_order_vanishes = false;
      out.first_order(m, c) = t.bracket(m, c).derivative_at_s1();
    }
  if (!out.zeroth_order_vanishes) out.failure = "bracket does not vanish at s = 1";

  const auto& d = out.first_order;
  auto lie = [&](std::size_t p, std::size_t r, std::size_t m) { return d(m, 4 * p + r); };
  out.lie_bracket = true;
  for (std::size_t p = 0; p < 4 && out.lie_bracket; ++p)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t m = 0; m < 4; ++m)
        if (!(lie(p, r, m) == -lie(r, p, m))) out.lie_bracket = false;
  for (std::size_t a = 0; a < 4 && out.lie_bracket; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t m = 0; m < 4; ++m) {
          Rational j;
          for (std::size_t n = 0; n < 4; ++n)
            j += lie(a, n, m) * lie(b, c, n) + lie(b, n, m) * lie(c, a, n) + lie(c, n, m) * lie(a, b, n);
          if (!j.is_zero()) out.lie_bracket = false;
        }
  if (!out.lie_bracket && out.failure.empty()) out.failure = "first-order bracket is not a Lie bracket";

  // Columns of p express t1, t2, t3, tau in the x basis.
  Matrix<Rational> p(4, 4);
  p(xi(0, 1), 0) = Rational(1);
  p(xi(1, 0), 1) = Rational(1);
  p(xi(0, 0), 2) = Rational(1);
  p(xi(1, 1), 2) = Rational(-1);
  p(xi(0, 0), 3) = Rational(1);
  p(xi(1, 1), 3) = Rational(1);
  const auto pinv = inverse(p);
  out.sl2_basis = Matrix<Rational>(4, 16);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      Vec<Rational> v(4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          if (p(i, a).is_zero() || p(j, b).is_zero()) continue;
          for (std::size_t m = 0; m < 4; ++m) v[m] += p(i, a) * p(j, b) * lie(i, j, m);
        }
      for (std::size_t m = 0; m < 4; ++m) {
        Rational w;
        for (std::size_t k = 0; k < 4; ++k) w += pinv(m, k) * v[k];
        out.sl2_basis(m, 4 * a + b) = w;
      }
    }

  // Commutators of e12, e21, h = e11 - e22 in the basis e12, e21, h.
  Matrix<Rational> sl2(4, 16);
  sl2(2, 4 * 0 + 1) = Rational(1);
  sl2(2, 4 * 1 + 0) = Rational(-1);
  sl2(0, 4 * 2 + 0) = Rational(2);
  sl2(0, 4 * 0 + 2) = Rational(-2);
  sl2(1, 4 * 2 + 1) = Rational(-2);
  sl2(1, 4 * 1 + 2) = Rational(2);
  const auto& s = out.sl2_basis;
  if (!s(2, 1).is_zero()) out.kappa = s(2, 1);
  out.kappa_uniform = out.kappa.has_value();
  for (std::size_t a = 0; a < 3 && out.kappa; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t m = 0; m < 4; ++m)
        if (!(s(m, 4 * a + b) == *out.kappa * sl2(m, 4 * a + b))) out.kappa_uniform = false;
  if (!out.kappa_uniform && out.failure.empty()) out.failure = "traceless part is not a multiple of sl2";

  out.trace_central = true;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t m = 0; m < 4; ++m)
      if (!s(m, 4 * 3 + a).is_zero() || !s(m, 4 * a + 3).is_zero()) out.trace_central = false;
  if (!out.trace_central && out.failure.empty()) out.failure = "trace generator is not central at first order";

  auto is_flip = [](const Matrix<Rational>& m, std::optional<std::size_t>& col) {
    for (std::size_t c = 0; c < 16; ++c)
      for (std::size_t r = 0; r < 16; ++r)
        if (!(m(r, c) == (r == 4 * (c % 4) + c / 4 ? Rational(1) : Rational(0)))) {
          col = c;
          return false;
        }
    return true;
  };
  Matrix<Rational> raw(16, 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) raw(r, c) = t.braiding(r, c).specialize_s1();
  std::optional<std::size_t> unused;
  out.raw_braiding_is_flip = is_flip(raw, unused);

  // Generators t_k / (s - 1)^{o_k} with o = (1, 1, 1, 2); tau starts at second order.
  Matrix<RatFuncS> pr(4, 4), pri(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      pr(i, j) = RatFuncS(p(i, j));
      pri(i, j) = RatFuncS(pinv(i, j));
    }
  const auto psi = kron(pri, pri) * t.braiding * kron(pr, pr);
  const long order[4] = {1, 1, 1, 2};
  const RatFuncS h = RatFuncS::s() - RatFuncS(1);
  out.rescaled_braiding = Matrix<Rational>(16, 16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) {
      long e = order[r / 4] + order[r % 4] - order[c / 4] - order[c % 4];
      out.rescaled_braiding(r, c) = (psi(r, c) * h.pow(e)).specialize_s1();
    }
  out.braiding_not_flip = !is_flip(out.rescaled_braiding, out.non_flip_column);

  // Psi(tau (x) xi) - xi (x) tau must be an antisymmetric element of the traceless square.
  out.correction_antisymmetric = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t col = 4 * 3 + k;
    for (std::size_t r = 0; r < 16; ++r) {
      const std::size_t a = r / 4, b = r % 4;
      Rational v = out.rescaled_braiding(r, col) - (r == 4 * k + 3 ? Rational(1) : Rational(0));
      if (a == 3 || b == 3) {
        if (!v.is_zero()) out.correction_antisymmetric = false;
      } else if (!(v == -out.rescaled_braiding(4 * b + a, col))) {
        out.correction_antisymmetric = false;
      }
    }
  }
  if (!out.correction_antisymmetric && out.failure.empty())
    out.failure = "braiding of the trace generator has a non-antisymmetric correction";
  if (!out.braiding_not_flip && out.failure.empty()) out.failure = "rescaled braiding at s = 1 is the flip";
  return out;
}

inline QCheck classical_limit_check(const QTangent4& t) {
  try {
    auto cl = classical_limit(t);
    QCheck out{"classical", cl.passed(), cl.failure, std::nullopt};
    if (cl.kappa) out.detail = "kappa = " + cl.kappa->str() + (cl.failure.empty() ? "" : "; " + cl.failure);
    return out;
  } catch (const PoleError& e) {
    return {"classical", false, e.what(), std::nullopt};
  }
}

inline QCheck casimir_check() {
  QCheck out{"casimir", true, "central; spin-1/2 value (q^2 + q^-2) I", std::nullopt};
  try {
    const auto c = q_casimir();
    const auto rc = represent(spin_half(), c);
    const RatFuncS v = RatFuncS::q_pow(2) + RatFuncS::q_pow(-2);
    const auto expect = v * Matrix<RatFuncS>::identity(2);
    if (!(rc == expect)) {
      out.passed = false;
      out.witness = Witness{{1, 1}, rc(0, 0).str(), v.str()};
    }
  } catch (const ConsistencyError& e) {
    out.passed = false;
    out.detail = e.what();
  }
  return out;
}

inline const std::vector<std::string>& qsuite_checks() {
  static const std::vector<std::string> names{"casimir", "consistency", "dual-route", "qlier", "braid", "lc", "qtrace", "classical"};
  return names;
}

/// Runs the selected U_q(sl2) checks in a fixed order; an empty selection runs all of them.
inline std::vector<QCheck> run_qsuite(std::vector<std::string> selected = {}, unsigned max_degree = 3) {
  const auto& names = qsuite_checks();
  for (const auto& s : selected)
    if (std::find(names.begin(), names.end(), s) == names.end()) throw InputError("unknown q-suite check '" + s + "'");
  if (selected.empty()) selected = names;
  auto want = [&](const std::string& n) { return std::find(selected.begin(), selected.end(), n) != selected.end(); };
  if (max_degree < 1) throw InputError("max degree must be at least 1");

  std::vector<QCheck> out;
  if (want("casimir")) out.push_back(casimir_check());
  if (want("consistency")) out.push_back(verify_su2_consistency());
  std::optional<QTangent4> t;
  try {
    t = su2_q_generators();
  } catch (const ConsistencyError& e) {
    for (const auto& n : names)
      if (n != "casimir" && n != "consistency" && want(n)) out.push_back({n, false, e.what(), std::nullopt});
    return out;
  }
  if (want("dual-route")) out.push_back(compare_brackets(bracket_via_adjoint(t->basis()), t->bracket));
  if (want("qlier")) out.push_back(verify_qlier(*t));
  if (want("braid")) out.push_back(verify_braid_relation(t->braiding));
  if (want("lc")) out.push_back(verify_lc_tangent(*t));
  if (want("qtrace")) out.push_back(qtrace_inner_check(*t, max_degree));
  if (want("classical")) out.push_back(classical_limit_check(*t));
  return out;
}

} // namespace qtangent::uq
