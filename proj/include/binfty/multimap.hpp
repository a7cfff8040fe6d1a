#pragma once

#include <map>
#include <string>

#include "binfty/tensor.hpp"

namespace binfty {

// Homogeneous multilinear map V^(x)m -> V' stored as a sparse table on basis
// words. Missing entries are zero.
struct MultiMap {
  int arity = 1;
  int degree = 0;
  SpacePtr source;
  SpacePtr target;
  std::map<Word, Vec> table;

  MultiMap() = default;
  MultiMap(int arity_, int degree_, SpacePtr src, SpacePtr tgt)
      : arity(arity_), degree(degree_), source(std::move(src)), target(std::move(tgt)) {}

  void set(const Word& in, const Vec& out) {
    if (static_cast<int>(in.size()) != arity) throw Error(ErrorKind::InvalidInput, "arity mismatch in MultiMap::set");
    const int want = degree_of_word(*source, in) + degree;
    for (const auto& [i, c] : out)
      if (target->degree(i) != want)
        throw Error(ErrorKind::NotHomogeneous, "image of " + format_word(*source, in) + " is not of degree " +
                                                   std::to_string(want));
    if (out.is_zero())
      table.erase(in);
    else
      table[in] = out;
  }

  void add(const Word& in, const Vec& out) {
    Vec cur = apply(in);
    cur += out;
    set(in, cur);
  }

  Vec apply(const Word& in) const {
    auto it = table.find(in);
    return it == table.end() ? Vec{} : it->second;
  }

  Vec apply(const Tensor& t) const {
    Vec out;
    for (const auto& [w, c] : t)
      if (static_cast<int>(w.size()) == arity) out.add(apply(w), c);
    return out;
  }

  bool is_zero() const { return table.empty(); }
  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.arity == b.arity && a.degree == b.degree && a.table == b.table;
  }
};

}  // namespace binfty
