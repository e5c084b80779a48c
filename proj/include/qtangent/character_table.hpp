#pragma once

#include "qtangent/cyclotomic.hpp"
#include "qtangent/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qtangent {

/// Irreducible characters as class functions over Q(zeta_m), m = exponent.
/// Row 0 is the trivial character; the rest are sorted by degree, then by values.
struct CharacterTable {
  CyclotomicFieldPtr field;
  unsigned conductor = 1;
  std::vector<std::size_t> class_sizes;
  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<long> degrees;

  [[nodiscard]] std::size_t size() const { return rows.size(); }
  /// chi_r evaluated on group element g.
  [[nodiscard]] const Cyclotomic& value(const FiniteGroup& g, std::size_t r, std::size_t elem) const {
    return rows[r][g.class_of(elem)];
  }
};

namespace detail {

using u64 = std::uint64_t;

inline u64 mod_pow(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
inline u64 mod_inv(u64 a, u64 p) { return mod_pow(a, p - 2, p); }

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime p = 1 mod m with p > 2 sqrt(n) and p not dividing n.
inline u64 dixon_prime(u64 m, u64 n) {
  for (u64 p = m + 1;; p += m) {
    if (p * p <= 4 * n) continue;
    if (is_prime(p) && n % p != 0) return p;
  }
}

inline u64 primitive_root_of_order(u64 m, u64 p) {
  std::vector<u64> primes;
  for (u64 d = 2, t = m; t > 1; ++d)
    if (t % d == 0) {
      primes.push_back(d);
      while (t % d == 0) t /= d;
    }
  for (u64 g = 2; g < p; ++g) {
    u64 z = mod_pow(g, (p - 1) / m, p);
    bool ok = true;
    for (u64 q : primes)
      if (mod_pow(z, m / q, p) == 1) ok = false;
    if (ok) return z;
  }
  return 1; // m == 1
}

using ModRows = std::vector<std::vector<u64>>;

/// Basis of the right null space of a (rows x cols) matrix over F_p.
inline ModRows mod_kernel(ModRows a, std::size_t cols, u64 p) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t k = r;
    while (k < a.size() && a[k][c] == 0) ++k;
    if (k == a.size()) continue;
    std::swap(a[k], a[r]);
    u64 inv = mod_inv(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    piv.push_back(c);
    ++r;
  }
  ModRows out;
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - a[i][f]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

inline bool cyclotomic_less(const Cyclotomic& a, const Cyclotomic& b, std::size_t deg) {
  for (std::size_t k = 0; k < deg; ++k) {
    Rational x = a.coeff(k), y = b.coeff(k);
    if (x != y) return x < y;
  }
  return false;
}

} // namespace detail

/// Exact character table by Dixon's method: simultaneous eigenvectors of the
/// class-sum matrices over F_p, lifted to Q(zeta_m). Orthogonality is checked
/// before returning.
inline CharacterTable character_table(const FiniteGroup& g) {
  using detail::u64;
  const std::size_t n = g.order(), k = g.class_count();
  const u64 m = g.exponent();
  const u64 p = detail::dixon_prime(m, n);

  CharacterTable t;
  t.conductor = static_cast<unsigned>(m);
  t.field = make_cyclotomic_field(t.conductor);
  for (const auto& c : g.classes()) t.class_sizes.push_back(c.size());

  // coef[j][i][l] = #{(x,y) : x in C_i, y in C_j, xy = rep(C_l)}
  std::vector<detail::ModRows> coef(k, detail::ModRows(k, std::vector<u64>(k, 0)));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l) {
      std::size_t z = g.classes()[l][0];
      for (std::size_t y : g.classes()[j]) ++coef[j][g.class_of(g.mul(z, g.inv(y)))][l];
    }

  // split F_p^k into common eigenspaces of all class matrices
  std::vector<detail::ModRows> spaces;
  {
    detail::ModRows full(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(full);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<detail::ModRows> next;
    for (auto& w : spaces) {
      if (w.size() == 1) {
        next.push_back(std::move(w));
        continue;
      }
      const std::size_t d = w.size();
      // image of the basis under A_j, expressed in ambient coordinates
      detail::ModRows aw(d, std::vector<u64>(k, 0));
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t i = 0; i < k; ++i) {
          u64 acc = 0;
          for (std::size_t l = 0; l < k; ++l) acc = (acc + coef[j][i][l] * w[b][l]) % p;
          aw[b][i] = acc;
        }
      std::size_t found = 0;
      for (u64 lam = 0; lam < p && found < d; ++lam) {
        // (A_j - lam) W^T c = 0 as a k x d system in c
        detail::ModRows sys(k, std::vector<u64>(d, 0));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t b = 0; b < d; ++b) sys[i][b] = (aw[b][i] + (p - lam) * w[b][i]) % p;
        auto ker = detail::mod_kernel(sys, d, p);
        if (ker.empty()) continue;
        detail::ModRows sub;
        for (const auto& c : ker) {
          std::vector<u64> v(k, 0);
          for (std::size_t b = 0; b < d; ++b)
            for (std::size_t i = 0; i < k; ++i) v[i] = (v[i] + c[b] * w[b][i]) % p;
          sub.push_back(std::move(v));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != d) throw ConsistencyError("class matrices are not diagonalizable over F_p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw ConsistencyError("could not separate all irreducible characters");

  // power maps of class representatives
  std::vector<std::vector<std::size_t>> power_class(k, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t r = g.classes()[i][0], x = 0;
    for (u64 l = 0; l < m; ++l) {
      power_class[i][l] = g.class_of(x);
      x = g.mul(x, r);
    }
  }
  const u64 z = detail::primitive_root_of_order(m, p);
  const u64 m_inv = detail::mod_inv(m % p, p);
  const auto sqrt_n = static_cast<long>(std::sqrt(static_cast<double>(n)) + 1);

  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<long> degrees;
  for (const auto& sp : spaces) {
    std::vector<u64> w = sp[0];
    u64 inv0 = detail::mod_inv(w[0], p);
    for (auto& x : w) x = x * inv0 % p;
    u64 s = 0;
    for (std::size_t i = 0; i < k; ++i) {
      u64 term = w[i] * w[g.inverse_class(i)] % p * detail::mod_inv(t.class_sizes[i] % p, p) % p;
      s = (s + term) % p;
    }
    u64 d2 = n % p * detail::mod_inv(s, p) % p;
    long d = 0;
    for (long c = 1; c <= sqrt_n; ++c)
      if (static_cast<u64>(c * c) % p == d2) {
        d = c;
        break;
      }
    if (d == 0) throw ConsistencyError("no character degree matches mod p");
    std::vector<u64> chi(k);
    for (std::size_t i = 0; i < k; ++i)
      chi[i] = w[i] * static_cast<u64>(d) % p * detail::mod_inv(t.class_sizes[i] % p, p) % p;
    std::vector<Cyclotomic> row(k);
    for (std::size_t i = 0; i < k; ++i) {
      Cyclotomic val;
      for (u64 e = 0; e < m; ++e) {
        u64 mu = 0;
        for (u64 l = 0; l < m; ++l) {
          u64 zl = detail::mod_pow(z, (m - (e * l) % m) % m, p);
          mu = (mu + chi[power_class[i][l]] * zl) % p;
        }
        mu = mu * m_inv % p;
        if (mu == 0) continue;
        if (mu > static_cast<u64>(d)) throw ConsistencyError("eigenvalue multiplicity exceeds degree");
        val += Cyclotomic(Rational(static_cast<long>(mu))) * Cyclotomic::zeta(t.field, static_cast<long>(e));
      }
      row[i] = val;
    }
    rows.push_back(std::move(row));
    degrees.push_back(d);
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  auto is_trivial = [&](std::size_t r) {
    return std::all_of(rows[r].begin(), rows[r].end(), [](const Cyclotomic& c) { return c == Cyclotomic(1); });
  };
  const std::size_t phi = t.field->degree();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
    for (std::size_t i = 0; i < k; ++i) {
      if (detail::cyclotomic_less(rows[a][i], rows[b][i], phi)) return true;
      if (detail::cyclotomic_less(rows[b][i], rows[a][i], phi)) return false;
    }
    return false;
  });
  for (auto r : order) {
    t.rows.push_back(rows[r]);
    t.degrees.push_back(degrees[r]);
  }

  // exact orthogonality
  const Cyclotomic order_c(Rational(static_cast<long>(n)));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Cyclotomic row_sum, col_sum;
      for (std::size_t i = 0; i < k; ++i)
        row_sum += Cyclotomic(Rational(static_cast<long>(t.class_sizes[i]))) * t.rows[a][i] * t.rows[b][i].conj();
      for (std::size_t r = 0; r < k; ++r) col_sum += t.rows[r][a] * t.rows[r][b].conj();
      if (!(row_sum == (a == b ? order_c : Cyclotomic())))
        throw ConsistencyError("row orthogonality fails for characters " + std::to_string(a) + "," + std::to_string(b));
      Cyclotomic expect = a == b ? Cyclotomic(Rational(static_cast<long>(n), static_cast<long>(t.class_sizes[a])))
                                 : Cyclotomic();
      if (!(col_sum == expect))
        throw ConsistencyError("column orthogonality fails for classes " + std::to_string(a) + "," + std::to_string(b));
    }
  return t;
}

} // namespace qtangent
