#pragma once

#include "qtangent/uq/pbw.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qtangent::uq {

/// Matrix coordinate rho^i_j of SU_q(2) (0-based), or its antipode S rho^i_j.
struct Letter {
  unsigned i = 0;
  unsigned j = 0;
  bool antipode = false;
  auto operator<=>(const Letter&) const = default;
};

/// a = rho^1_1, b = rho^1_2, c = rho^2_1, d = rho^2_2.
inline Letter letter(char name) {
  switch (name) {
  case 'a': return {0, 0, false};
  case 'b': return {0, 1, false};
  case 'c': return {1, 0, false};
  case 'd': return {1, 1, false};
  default: throw InputError(std::string("unknown coordinate letter '") + name + "'");
  }
}

inline std::string to_string(const Letter& l) {
  std::string n(1, static_cast<char>('a' + 2 * l.i + l.j));
  return l.antipode ? "S(" + n + ")" : n;
}

/// Formal combination of words in the matrix coordinates. No SU_q(2) relations are imposed;
/// every evaluation goes through the pairing with U_q(sl2).
class AWord {
public:
  using Word = std::vector<Letter>;

  AWord() = default;
  AWord(RatFuncS c) { add({}, c); } // NOLINT(google-explicit-constructor)

  static AWord word(const Word& w, const RatFuncS& c = RatFuncS(1)) {
    AWord x;
    x.add(w, c);
    return x;
  }
  /// Word from letter names, e.g. "abd".
  static AWord parse(std::string_view names) {
    Word w;
    for (char ch : names) w.push_back(letter(ch));
    return word(w);
  }
  static AWord coord(unsigned i, unsigned j) { return word({Letter{i, j, false}}); }
  static AWord antipode_coord(unsigned i, unsigned j) { return word({Letter{i, j, true}}); }

  [[nodiscard]] const std::map<Word, RatFuncS>& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  void add(const Word& w, const RatFuncS& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(w, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }

  /// epsilon(rho^i_j) = epsilon(S rho^i_j) = delta_ij.
  [[nodiscard]] RatFuncS counit() const {
    RatFuncS r;
    for (const auto& [w, c] : t_) {
      bool diag = true;
      for (const auto& l : w) diag = diag && l.i == l.j;
      if (diag) r = r + c;
    }
    return r;
  }

  [[nodiscard]] std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : t_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      for (const auto& l : w) out += "*" + to_string(l);
    }
    return out;
  }

  friend AWord operator+(AWord a, const AWord& b) {
    for (const auto& [w, c] : b.t_) a.add(w, c);
    return a;
  }
  friend AWord operator-(AWord a, const AWord& b) {
    for (const auto& [w, c] : b.t_) a.add(w, -c);
    return a;
  }
  friend AWord operator*(const RatFuncS& s, const AWord& a) {
    AWord r;
    for (const auto& [w, c] : a.t_) r.add(w, s * c);
    return r;
  }
  friend AWord operator*(const AWord& a, const AWord& b) {
    AWord r;
    for (const auto& [u, c] : a.t_)
      for (const auto& [v, d] : b.t_) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        r.add(w, c * d);
      }
    return r;
  }
  friend bool operator==(const AWord& a, const AWord& b) { return a.t_ == b.t_; }

private:
  std::map<Word, RatFuncS> t_;
};

/// Pairs one PBW element against many words, caching the tensor representation per letter pattern.
/// <x, rho^i_j> = rho(x)_ij, <x, S rho^i_j> = rho*(x)_ji, and a word of length k pairs through
/// the k-fold coproduct, i.e. the tensor product representation.
class WordPairing {
public:
  explicit WordPairing(PBWElement x) : x_(std::move(x)) {}

  [[nodiscard]] RatFuncS operator()(const AWord::Word& w) {
    if (w.empty()) return x_.counit();
    std::vector<bool> pattern;
    for (const auto& l : w) pattern.push_back(l.antipode);
    auto it = cache_.find(pattern);
    if (it == cache_.end()) {
      Rep r = pattern[0] ? dual(spin_half()) : spin_half();
      for (std::size_t k = 1; k < pattern.size(); ++k) r = tensor(r, pattern[k] ? dual(spin_half()) : spin_half());
      it = cache_.emplace(pattern, represent(r, x_)).first;
    }
    std::size_t row = 0, col = 0;
    for (const auto& l : w) {
      row = 2 * row + (l.antipode ? l.j : l.i);
      col = 2 * col + (l.antipode ? l.i : l.j);
    }
    return it->second(row, col);
  }

  [[nodiscard]] RatFuncS operator()(const AWord& a) {
    RatFuncS r;
    for (const auto& [w, c] : a.terms()) r = r + c * (*this)(w);
    return r;
  }

private:
  PBWElement x_;
  std::map<std::vector<bool>, Matrix<RatFuncS>> cache_;
};

inline RatFuncS pair_word(const PBWElement& x, const AWord& w) { return WordPairing(x)(w); }

} // namespace qtangent::uq
