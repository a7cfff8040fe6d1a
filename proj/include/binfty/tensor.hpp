#pragma once

#include <string>
#include <utility>
#include <vector>

#include "binfty/graded_space.hpp"

namespace binfty {

// A basis word of T^c(V): indices into V's basis. Words are never empty.
using Word = std::vector<int>;
using Tensor = LinComb<Word>;

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
}

// Deconcatenation into two nonempty pieces.
inline std::vector<std::pair<Word, Word>> deconcatenate(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  for (std::size_t i = 1; i < w.size(); ++i) out.emplace_back(slice(w, 0, i), slice(w, i, w.size()));
  return out;
}

// Calls fn(word, coefficient) for every term of v1 (x) ... (x) vk without
// building the expansion.
template <class Fn>
void for_each_term(const std::vector<Vec>& factors, Fn&& fn) {
  Word w(factors.size());
  std::vector<Rational> coef(factors.size() + 1, Rational(1));
  auto go = [&](auto&& self, std::size_t i) -> void {
    if (i == factors.size()) {
      fn(static_cast<const Word&>(w), static_cast<const Rational&>(coef[i]));
      return;
    }
    for (const auto& [x, c] : factors[i]) {
      w[i] = x;
      coef[i + 1] = coef[i] * c;
      self(self, i + 1);
    }
  };
  go(go, 0);
}

// Expands v1 (x) ... (x) vk into basis words.
inline Tensor tensor_of(const std::vector<Vec>& factors) {
  Tensor acc;
  acc.add(Word{}, 1);
  for (const Vec& f : factors) {
    Tensor next;
    for (const auto& [w, c] : acc)
      for (const auto& [i, d] : f) {
        Word x = w;
        x.push_back(i);
        next.add(x, c * d);
      }
    acc = std::move(next);
  }
  return acc;
}

inline Tensor tensor_product(const Tensor& a, const Tensor& b) {
  Tensor out;
  for (const auto& [u, c] : a)
    for (const auto& [v, d] : b) out.add(concat(u, v), c * d);
  return out;
}

inline Tensor append_vec(const Tensor& a, const Vec& v) {
  Tensor out;
  for (const auto& [u, c] : a)
    for (const auto& [i, d] : v) {
      Word x = u;
      x.push_back(i);
      out.add(x, c * d);
    }
  return out;
}

inline std::string format_word(const GradedSpace& s, const Word& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += s.name(w[i]);
  }
  return out + ")";
}

inline std::string format_tensor(const GradedSpace& s, const Tensor& t) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : t) {
    if (!first) out += " + ";
    first = false;
    out += "(" + to_string(c) + ")*" + format_word(s, w);
  }
  return out;
}

// Nonempty list of vectors of one space, read as v1 (x) ... (x) vn.
struct TensorWord {
  std::vector<Vec> factors;

  explicit TensorWord(std::vector<Vec> f) : factors(std::move(f)) {
    if (factors.empty()) throw Error(ErrorKind::InvalidInput, "tensor word of weight 0");
  }
  std::size_t weight() const { return factors.size(); }
  Tensor expand() const { return tensor_of(factors); }
};

// Cofree coalgebra on a finite space, cut at max_weight.
struct TruncatedTensorCoalgebra {
  SpacePtr cogenerators;
  int max_weight = 1;

  std::vector<Word> basis() const {
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    for (int w = 1; w <= max_weight; ++w) {
      std::vector<Word> next;
      for (const Word& p : layer)
        for (int i = 0; i < cogenerators->dim(); ++i) {
          Word x = p;
          x.push_back(i);
          next.push_back(x);
        }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  LinComb<std::pair<Word, Word>> coproduct(const Tensor& t) const {
    LinComb<std::pair<Word, Word>> out;
    for (const auto& [w, c] : t)
      for (auto& pr : deconcatenate(w)) out.add(pr, c);
    return out;
  }
};

}  // namespace binfty
