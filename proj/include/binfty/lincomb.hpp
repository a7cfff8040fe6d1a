#pragma once

#include <map>
#include <utility>
#include <vector>

#include "binfty/rational.hpp"

namespace binfty {

// Finite formal sum over an ordered key type. Zero coefficients are never stored.
template <class K>
class LinComb {
 public:
  using Map = std::map<K, Rational>;

  LinComb() = default;
  LinComb(const K& k, const Rational& c = 1) { add(k, c); }

  void add(const K& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const LinComb& o, const Rational& c = 1) {
    if (c == 0) return;
    for (const auto& [k, v] : o.terms_) add(k, c * v);
  }

  LinComb& operator+=(const LinComb& o) {
    add(o, 1);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, -1);
    return *this;
  }
  LinComb& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [k, v] : terms_) v *= c;
    }
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }
  friend bool operator<(const LinComb& a, const LinComb& b) { return a.terms_ < b.terms_; }

  Rational coeff(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  template <class F>
  LinComb filtered(F&& keep) const {
    LinComb out;
    for (const auto& [k, v] : terms_)
      if (keep(k)) out.terms_.emplace(k, v);
    return out;
  }

 private:
  Map terms_;
};

}  // namespace binfty
