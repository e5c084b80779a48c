#pragma once

#include "qtangent/error.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtangent {

template <class F>
using Vec = std::vector<F>;

namespace detail {
// unqualified call so that argument-dependent lookup sees the scalar overloads
template <class F>
bool scalar_is_zero(const F& x) {
  return is_zero(x);
}
} // namespace detail

/// Dense row-major matrix over an exact field F.
template <class F>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t cols, const std::vector<Vec<F>>& rows) : rows_(rows.size()), cols_(cols) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols) throw InputError("matrix row of wrong length");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InputError("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  [[nodiscard]] Vec<F> row(std::size_t i) const {
    return Vec<F>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  [[nodiscard]] std::vector<Vec<F>> row_list() const {
    std::vector<Vec<F>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  void append_row(const Vec<F>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw InputError("appended row of wrong length");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : a_)
      if (!detail::scalar_is_zero(x)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& x = a(i, k);
        if (detail::scalar_is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!detail::scalar_is_zero(b(k, j))) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix operator*(const F& s, Matrix a) {
    for (auto& x : a.a_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  [[nodiscard]] const std::vector<F>& data() const { return a_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> a_;
};

/// Kronecker product a (x) b.
template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return c;
}

/// Throws MixedTowerError unless all entries live in one scalar tower.
template <class F>
void check_single_tower(const std::vector<F>& entries) {
  unsigned tower = 0;
  for (const auto& x : entries) {
    unsigned t = tower_id(x);
    if (t == 0) continue;
    if (tower == 0) {
      tower = t;
    } else if (t != tower) {
      throw MixedTowerError("matrix mixes scalar towers " + std::to_string(tower) + " and " +
                            std::to_string(t));
    }
  }
}

template <class F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with leftmost pivots. Zero rows are dropped from
/// `reduced`, so reduced.rows() == rank.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
  check_single_tower(m.data());
  Matrix<F> a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    F inv = F(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!is_zero(a(r, j))) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      F f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<F> reduced(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), r, std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

/// Inverse of a square matrix; throws DivisionByZero if it is singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw SizeError("inverse of a non-square matrix");
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw DivisionByZero("matrix is singular");
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Subspace of F^n with a canonical (reduced row echelon) basis.
template <class F>
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  Subspace(std::size_t ambient, const std::vector<Vec<F>>& spanning) : ambient_(ambient) {
    auto r = rref(Matrix<F>(ambient, spanning));
    basis_ = std::move(r.reduced);
    pivots_ = std::move(r.pivots);
  }
  explicit Subspace(const Matrix<F>& spanning_rows) : ambient_(spanning_rows.cols()) {
    auto r = rref(spanning_rows);
    basis_ = std::move(r.reduced);
    pivots_ = std::move(r.pivots);
  }

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) { return Subspace(Matrix<F>::identity(n)); }

  [[nodiscard]] std::size_t ambient() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.rows(); }
  [[nodiscard]] const Matrix<F>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }
  [[nodiscard]] Vec<F> vector(std::size_t i) const { return basis_.row(i); }

  /// Coordinates of v on the canonical basis, or nullopt if v is outside.
  [[nodiscard]] std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
    if (v.size() != ambient_) throw SideMismatch("vector length does not match ambient dimension");
    Vec<F> c(dim());
    Vec<F> rest = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      c[i] = v[pivots_[i]];
      if (is_zero(c[i])) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!is_zero(basis_(i, j))) rest[j] -= c[i] * basis_(i, j);
    }
    for (const auto& x : rest)
      if (!is_zero(x)) return std::nullopt;
    return c;
  }
  [[nodiscard]] bool contains(const Vec<F>& v) const { return coordinates(v).has_value(); }
  [[nodiscard]] bool contains(const Subspace& o) const {
    check_ambient(o);
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void check_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_)
      throw SideMismatch("subspaces live in ambient spaces of dimension " + std::to_string(ambient_) +
                         " and " + std::to_string(o.ambient_));
  }

private:
  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// Right null space {v : m v = 0}.
template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(n);
    v[free] = F(1);
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return Subspace<F>(n, basis);
}

template <class F>
Subspace<F> subspace_join(const Subspace<F>& u, const Subspace<F>& v) {
  u.check_ambient(v);
  auto rows = u.basis().row_list();
  for (std::size_t i = 0; i < v.dim(); ++i) rows.push_back(v.vector(i));
  return Subspace<F>(u.ambient(), rows);
}

template <class F>
Subspace<F> subspace_meet(const Subspace<F>& u, const Subspace<F>& v) {
  u.check_ambient(v);
  const std::size_t n = u.ambient(), k = u.dim(), l = v.dim();
  // columns: coefficients on u's basis, then on v's basis; rows: ambient coordinates
  Matrix<F> sys(n, k + l);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < k; ++i) sys(j, i) = u.basis()(i, j);
    for (std::size_t i = 0; i < l; ++i) sys(j, k + i) = -v.basis()(i, j);
  }
  auto ker = kernel(sys);
  std::vector<Vec<F>> out;
  for (std::size_t t = 0; t < ker.dim(); ++t) {
    Vec<F> w(n);
    for (std::size_t i = 0; i < k; ++i) {
      const F& c = ker.basis()(t, i);
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < n; ++j) w[j] += c * u.basis()(i, j);
    }
    out.push_back(std::move(w));
  }
  return Subspace<F>(n, out);
}

/// {y : u^T P y = 0 for all u in U}; P must be square and nondegenerate.
template <class F>
Subspace<F> annihilator(const Subspace<F>& u, const Matrix<F>& pairing) {
  if (pairing.rows() != u.ambient()) throw SideMismatch("pairing rows do not match ambient dimension");
  if (pairing.rows() != pairing.cols() || rank(pairing) != pairing.rows())
    throw DegeneratePairing("pairing matrix is degenerate");
  if (u.dim() == 0) return Subspace<F>::full(pairing.cols());
  return kernel(u.basis() * pairing);
}

/// Incrementally built echelon basis; used for rank computations that may stop early.
template <class F>
class EchelonBuilder {
public:
  explicit EchelonBuilder(std::size_t n) : n_(n) {}

  /// Adds v; returns true if it increased the rank.
  bool add(Vec<F> v) {
    if (v.size() != n_) throw InputError("echelon vector of wrong length");
    for (const auto& [p, row] : rows_) {
      if (is_zero(v[p])) continue;
      F f = v[p];
      for (const auto& [j, x] : row) v[j] -= f * x;
    }
    std::size_t p = 0;
    while (p < n_ && is_zero(v[p])) ++p;
    if (p == n_) return false;
    F inv = F(1) / v[p];
    std::vector<std::pair<std::size_t, F>> sparse;
    for (std::size_t j = p; j < n_; ++j)
      if (!is_zero(v[j])) sparse.emplace_back(j, v[j] * inv);
    // keep rows fully reduced against the new pivot
    for (auto& [q, row] : rows_) {
      F f;
      bool hit = false;
      for (const auto& [j, x] : row)
        if (j == p) {
          f = x;
          hit = true;
        }
      if (!hit) continue;
      std::map<std::size_t, F> acc(row.begin(), row.end());
      for (const auto& [j, x] : sparse) acc[j] -= f * x;
      row.clear();
      for (auto& [j, x] : acc)
        if (!is_zero(x)) row.emplace_back(j, std::move(x));
    }
    rows_.emplace(p, std::move(sparse));
    return true;
  }

  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] std::size_t ambient() const { return n_; }

private:
  std::size_t n_;
  std::map<std::size_t, std::vector<std::pair<std::size_t, F>>> rows_;
};

} // namespace qtangent
