#pragma once

#include "qtangent/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace qtangent {

/// Permutation of the points 0..deg-1 (printed 1-based). Products compose
/// left to right: (g*h)(x) = h(g(x)).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw InputError("permutation images are not a bijection");
      seen[v] = true;
    }
  }
  static Perm identity(std::size_t deg) {
    std::vector<std::uint32_t> v(deg);
    std::iota(v.begin(), v.end(), 0U);
    return Perm(std::move(v));
  }
  /// From 1-based cycles, e.g. {{1,2},{3,4}}.
  static Perm from_cycles(std::size_t deg, const std::vector<std::vector<long>>& cycles) {
    std::vector<std::uint32_t> v(deg);
    std::iota(v.begin(), v.end(), 0U);
    std::vector<bool> used(deg, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        long a = c[i], b = c[(i + 1) % c.size()];
        if (a < 1 || b < 1 || static_cast<std::size_t>(a) > deg || static_cast<std::size_t>(b) > deg)
          throw InputError("cycle point out of range 1.." + std::to_string(deg));
        if (used[a - 1]) throw InputError("point " + std::to_string(a) + " repeated in cycles");
        used[a - 1] = true;
        v[a - 1] = static_cast<std::uint32_t>(b - 1);
      }
    }
    return Perm(std::move(v));
  }

  [[nodiscard]] std::size_t degree() const { return img_.size(); }
  [[nodiscard]] std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
  [[nodiscard]] const std::vector<std::uint32_t>& images() const { return img_; }
  [[nodiscard]] bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Perm operator*(const Perm& g, const Perm& h) {
    if (g.degree() != h.degree()) throw InputError("permutations of different degree");
    std::vector<std::uint32_t> v(g.degree());
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = h.img_[g.img_[x]];
    Perm r;
    r.img_ = std::move(v);
    return r;
  }
  [[nodiscard]] Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = static_cast<std::uint32_t>(x);
    return r;
  }
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

  /// 1-based disjoint cycles, fixed points omitted.
  [[nodiscard]] std::vector<std::vector<long>> cycles() const {
    std::vector<std::vector<long>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t s = 0; s < img_.size(); ++s) {
      if (seen[s] || img_[s] == s) continue;
      std::vector<long> c;
      for (std::size_t x = s; !seen[x]; x = img_[x]) {
        seen[x] = true;
        c.push_back(static_cast<long>(x) + 1);
      }
      out.push_back(std::move(c));
    }
    return out;
  }
  /// Cycle notation such as "(1,2,3)(4,5)"; "()" for the identity.
  [[nodiscard]] std::string str() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string out;
    for (const auto& c : cs) {
      out += "(";
      for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
      out += ")";
    }
    return out;
  }

private:
  std::vector<std::uint32_t> img_;
};

/// Finite permutation group with elements enumerated breadth-first from the
/// identity (index 0), right-multiplying by the generators in the given order.
class FiniteGroup {
public:
  static constexpr std::size_t kDefaultCap = 5000;

  FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::string name = "custom",
              std::size_t cap = kDefaultCap)
      : degree_(degree), gens_(std::move(generators)), name_(std::move(name)) {
    for (const auto& g : gens_)
      if (g.degree() != degree_) throw InputError("generator degree differs from group degree");
    elems_.push_back(Perm::identity(degree_));
    index_.emplace(elems_.back(), 0);
    for (std::size_t head = 0; head < elems_.size(); ++head) {
      for (const auto& s : gens_) {
        Perm p = elems_[head] * s;
        if (index_.count(p)) continue;
        if (elems_.size() >= cap)
          throw SizeError("group order exceeds cap of " + std::to_string(cap) + " elements");
        index_.emplace(p, elems_.size());
        elems_.push_back(std::move(p));
      }
    }
    const std::size_t n = elems_.size();
    inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inv_[i] = index_of(elems_[i].inverse());
    if (n <= kTableLimit) {
      table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table_[i * n + j] = index_of(elems_[i] * elems_[j]);
    }
    build_classes();
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t degree() const { return degree_; }
  [[nodiscard]] std::size_t order() const { return elems_.size(); }
  [[nodiscard]] std::size_t identity() const { return 0; }
  [[nodiscard]] const std::vector<Perm>& generators() const { return gens_; }
  [[nodiscard]] const std::vector<Perm>& elements() const { return elems_; }
  [[nodiscard]] const Perm& element(std::size_t i) const { return elems_[i]; }

  [[nodiscard]] std::size_t index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InputError("permutation " + p.str() + " is not in the group");
    return it->second;
  }
  [[nodiscard]] std::size_t mul(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * elems_.size() + j];
    return index_of(elems_[i] * elems_[j]);
  }
  [[nodiscard]] std::size_t inv(std::size_t i) const { return inv_[i]; }
  /// g h g^{-1}
  [[nodiscard]] std::size_t conj(std::size_t g, std::size_t h) const { return mul(mul(g, h), inv(g)); }
  [[nodiscard]] std::size_t power(std::size_t i, long k) const {
    std::size_t base = k < 0 ? inv(i) : i, r = 0;
    for (long t = 0; t < (k < 0 ? -k : k); ++t) r = mul(r, base);
    return r;
  }
  [[nodiscard]] std::size_t element_order(std::size_t i) const {
    std::size_t k = 1;
    for (std::size_t x = i; x != 0; x = mul(x, i)) ++k;
    return k;
  }
  [[nodiscard]] bool is_abelian() const {
    for (const auto& a : gens_)
      for (const auto& b : gens_)
        if (a * b != b * a) return false;
    return true;
  }

  /// Conjugacy classes ordered by minimal element index; members ascending.
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  [[nodiscard]] std::size_t class_of(std::size_t i) const { return class_of_[i]; }
  [[nodiscard]] std::size_t class_count() const { return classes_.size(); }
  /// Index of the class containing the inverses of class c.
  [[nodiscard]] std::size_t inverse_class(std::size_t c) const { return class_of_[inv_[classes_[c][0]]]; }

  /// Least common multiple of the element orders.
  [[nodiscard]] std::size_t exponent() const {
    std::size_t e = 1;
    for (std::size_t i = 0; i < order(); ++i) e = std::lcm(e, element_order(i));
    return e;
  }

  /// Distinct cyclic subgroups <g> in order of first generator index, trivial first.
  /// Each is listed as (generator, elements g^0, g^1, ...).
  [[nodiscard]] std::vector<std::pair<std::size_t, std::vector<std::size_t>>> cyclic_subgroups() const {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> out;
    std::vector<std::vector<std::size_t>> seen;
    for (std::size_t g = 0; g < order(); ++g) {
      std::vector<std::size_t> powers{0};
      for (std::size_t x = g; x != 0; x = mul(x, g)) powers.push_back(x);
      auto key = powers;
      std::sort(key.begin(), key.end());
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      out.emplace_back(g, std::move(powers));
    }
    return out;
  }

private:
  static constexpr std::size_t kTableLimit = 1024;

  void build_classes() {
    const std::size_t n = order();
    class_of_.assign(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (class_of_[x] != n) continue;
      std::size_t id = classes_.size();
      std::vector<std::size_t> orbit{x};
      class_of_[x] = id;
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (const auto& s : gens_) {
          std::size_t si = index_of(s);
          std::size_t y = mul(mul(inv(si), orbit[head]), si);
          if (class_of_[y] != n) continue;
          class_of_[y] = id;
          orbit.push_back(y);
        }
      }
      std::sort(orbit.begin(), orbit.end());
      classes_.push_back(std::move(orbit));
    }
  }

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::string name_;
  std::vector<Perm> elems_;
  std::map<Perm, std::size_t> index_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> table_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

namespace detail {

inline Perm cycle_perm(std::size_t deg, std::size_t from, std::size_t to) {
  std::vector<long> c;
  for (std::size_t i = from; i <= to; ++i) c.push_back(static_cast<long>(i));
  return Perm::from_cycles(deg, {c});
}

/// Left-regular action of Q8 on its elements 1,i,j,k,-1,-i,-j,-k (points 1..8).
inline Perm quaternion_left(int unit) {
  // unit products: table[a][b] = (sign, unit) of a*b for a,b in {1,i,j,k}
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::uint32_t> img(8);
  for (int x = 0; x < 8; ++x) {
    int xu = x % 4, xs = x < 4 ? 1 : -1;
    int s = sign[unit][xu] * xs;
    int u = prod[unit][xu];
    img[x] = static_cast<std::uint32_t>(s > 0 ? u : u + 4);
  }
  return Perm(std::move(img));
}

} // namespace detail

/// Named preset groups. family: cyclic, symmetric, alternating, dihedral (order 2n),
/// quaternion (n = 8), klein (n = 4).
inline FiniteGroup preset_group(const std::string& family, long n, std::size_t cap = FiniteGroup::kDefaultCap) {
  if (family == "cyclic") {
    if (n < 1) throw InputError("cyclic group needs n >= 1");
    auto d = static_cast<std::size_t>(n);
    std::vector<Perm> g;
    if (n > 1) g.push_back(detail::cycle_perm(d, 1, d));
    return {d, g, "Z" + std::to_string(n), cap};
  }
  if (family == "symmetric") {
    if (n < 1) throw InputError("symmetric group needs n >= 1");
    auto d = static_cast<std::size_t>(n);
    std::vector<Perm> g;
    if (n > 1) g.push_back(Perm::from_cycles(d, {{1, 2}}));
    if (n > 2) g.push_back(detail::cycle_perm(d, 1, d));
    return {d, g, "S" + std::to_string(n), cap};
  }
  if (family == "alternating") {
    if (n < 3) throw InputError("alternating group needs n >= 3");
    auto d = static_cast<std::size_t>(n);
    std::vector<Perm> g{Perm::from_cycles(d, {{1, 2, 3}})};
    if (n > 3) g.push_back(n % 2 == 1 ? detail::cycle_perm(d, 1, d) : detail::cycle_perm(d, 2, d));
    return {d, g, "A" + std::to_string(n), cap};
  }
  if (family == "dihedral") {
    if (n < 3) throw InputError("dihedral group needs n >= 3");
    auto d = static_cast<std::size_t>(n);
    std::vector<std::uint32_t> refl(d);
    for (std::size_t i = 0; i < d; ++i) refl[i] = static_cast<std::uint32_t>(d - 1 - i);
    return {d, {detail::cycle_perm(d, 1, d), Perm(refl)}, "D" + std::to_string(n), cap};
  }
  if (family == "quaternion" || family == "quaternion-8") {
    if (n != 8) throw InputError("only the quaternion group of order 8 is available");
    return {8, {detail::quaternion_left(1), detail::quaternion_left(2)}, "Q8", cap};
  }
  if (family == "klein" || family == "klein-4") {
    if (n != 4) throw InputError("klein group has order 4");
    return {4, {Perm::from_cycles(4, {{1, 2}, {3, 4}}), Perm::from_cycles(4, {{1, 3}, {2, 4}})}, "klein-4", cap};
  }
  throw InputError("unknown group family '" + family + "'");
}

/// Short names: Z<n>, S<n>, A<n>, D<n>, Q8, klein-4.
inline FiniteGroup named_group(const std::string& name, std::size_t cap = FiniteGroup::kDefaultCap) {
  if (name == "Q8") return preset_group("quaternion", 8, cap);
  if (name == "klein-4" || name == "V4") return preset_group("klein", 4, cap);
  if (name.size() >= 2 && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    long n = std::stol(name.substr(1));
    switch (name[0]) {
      case 'Z': case 'C': return preset_group("cyclic", n, cap);
      case 'S': return preset_group("symmetric", n, cap);
      case 'A': return preset_group("alternating", n, cap);
      case 'D': return preset_group("dihedral", n, cap);
      default: break;
    }
  }
  throw InputError("unknown preset group '" + name + "'");
}

/// {"preset":{"family":"symmetric","n":3}} or {"degree":3,"generators":[[[1,2]],[[1,2,3]]]}.
inline FiniteGroup group_from_json(const nlohmann::json& spec, std::size_t cap = FiniteGroup::kDefaultCap) {
  try {
    if (spec.contains("preset")) {
      const auto& p = spec.at("preset");
      if (p.is_string()) return named_group(p.get<std::string>(), cap);
      return preset_group(p.at("family").get<std::string>(), p.at("n").get<long>(), cap);
    }
    auto deg = spec.at("degree").get<long>();
    if (deg < 1) throw InputError("group degree must be >= 1");
    std::vector<Perm> gens;
    for (const auto& g : spec.at("generators")) {
      if (g.is_array() && !g.empty() && g[0].is_number()) {
        std::vector<std::uint32_t> img;
        for (const auto& v : g) {
          long x = v.get<long>();
          if (x < 1 || x > deg) throw InputError("image array entry out of range");
          img.push_back(static_cast<std::uint32_t>(x - 1));
        }
        if (img.size() != static_cast<std::size_t>(deg)) throw InputError("image array of wrong length");
        gens.emplace_back(std::move(img));
      } else {
        gens.push_back(Perm::from_cycles(static_cast<std::size_t>(deg), g.get<std::vector<std::vector<long>>>()));
      }
    }
    std::string name = spec.value("name", std::string("custom"));
    return {static_cast<std::size_t>(deg), gens, name, cap};
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group spec: ") + e.what());
  }
}

/// "preset:S3" or a path to a JSON spec file.
inline FiniteGroup group_from_source(const std::string& source, std::size_t cap = FiniteGroup::kDefaultCap) {
  if (source.rfind("preset:", 0) == 0) return named_group(source.substr(7), cap);
  std::ifstream in(source);
  if (!in) throw InputError("cannot open group spec file '" + source + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in '" + source + "': " + e.what());
  }
  return group_from_json(j, cap);
}

} // namespace qtangent
