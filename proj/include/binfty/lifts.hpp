#pragma once

#include <functional>
#include <map>
#include <vector>

#include "binfty/koszul.hpp"
#include "binfty/multimap.hpp"

namespace binfty {

// Sum over order-preserving placements of the maps on disjoint consecutive
// blocks of the word, identity elsewhere. Each map picks up the Koszul sign of
// moving past every letter to the left of its block.
inline Tensor multi_insert_apply(const std::vector<const MultiMap*>& maps, const Word& word, const GradedSpace& space) {
  Tensor out;
  const std::size_t n = word.size();
  std::function<void(std::size_t, std::size_t, long, Tensor)> go = [&](std::size_t pos, std::size_t j, long prefix_deg,
                                                                     Tensor acc) {
    if (acc.is_zero()) return;
    if (pos == n) {
      if (j == maps.size()) out += acc;
      return;
    }
    std::size_t need = 0;
    for (std::size_t t = j; t < maps.size(); ++t) need += static_cast<std::size_t>(maps[t]->arity);
    if (n - pos < need) return;
    if (n - pos > need) go(pos + 1, j, prefix_deg + space.degree(word[pos]), append_vec(acc, Vec(word[pos])));
    if (j < maps.size()) {
      const MultiMap& f = *maps[j];
      const std::size_t a = static_cast<std::size_t>(f.arity);
      if (pos + a > n) return;
      Word block = slice(word, pos, pos + a);
      Vec img = f.apply(block);
      if (img.is_zero()) return;
      Tensor next = append_vec(acc, img);
      next *= koszul_pair(f.degree, prefix_deg);
      go(pos + a, j + 1, prefix_deg + degree_of_word(space, block), next);
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, 0, 0, start);
  return out;
}

inline Tensor multi_insert_apply(const std::vector<const MultiMap*>& maps, const Tensor& t, const GradedSpace& space) {
  Tensor out;
  for (const auto& [w, c] : t) out.add(multi_insert_apply(maps, w, space), c);
  return out;
}

// Coderivation cogenerated by alpha, evaluated on a word. Zero when the word
// is shorter than the arity.
inline Tensor lift_coderivation(const MultiMap& alpha, const Word& word, const GradedSpace& space) {
  return multi_insert_apply({&alpha}, word, space);
}

// Coalgebra morphism cogenerated by a degree-0 family psi (arity -> map).
inline Tensor lift_coalgebra_morphism(const std::map<int, MultiMap>& psi, const Word& word, int max_weight) {
  for (const auto& [k, f] : psi)
    if (f.degree != 0) throw Error(ErrorKind::NotAMorphismDatum, "component of arity " + std::to_string(k) + " has degree " +
                                                                    std::to_string(f.degree));
  Tensor out;
  std::function<void(std::size_t, Tensor)> go = [&](std::size_t pos, Tensor acc) {
    if (acc.is_zero()) return;
    if (pos == word.size()) {
      out += acc;
      return;
    }
    for (const auto& [k, f] : psi) {
      std::size_t a = static_cast<std::size_t>(k);
      if (pos + a > word.size()) break;
      Vec img = f.apply(slice(word, pos, pos + a));
      if (img.is_zero()) continue;
      Tensor next = append_vec(acc, img);
      bool fits = true;
      for (const auto& [w, c] : next) fits = fits && static_cast<int>(w.size()) <= max_weight;
      if (fits) go(pos + a, std::move(next));
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, start);
  return out;
}

// A map from generators of the free algebra T(W) into T(W).
struct GeneratorMap {
  int degree = 0;
  std::map<int, Tensor> images;
};

// Derivation of T(W) extending e from generators, with Koszul signs.
inline Tensor lift_derivation(const GeneratorMap& e, const Tensor& x, const GradedSpace& w_space) {
  Tensor out;
  for (const auto& [w, c] : x) {
    long prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto it = e.images.find(w[i]);
      if (it != e.images.end()) {
        Tensor left;
        left.add(slice(w, 0, i), 1);
        Tensor right;
        right.add(slice(w, i + 1, w.size()), 1);
        Tensor term = tensor_product(tensor_product(left, it->second), right);
        out.add(term, c * koszul_pair(e.degree, prefix));
      }
      prefix += w_space.degree(w[i]);
    }
  }
  return out;
}

// head{args}: insertion of the args into head's inputs in order, identities
// elsewhere. Components whose arity exceeds max_arity are dropped.
inline MultiMap brace_compose(const MultiMap& head, const std::vector<const MultiMap*>& args, int max_arity) {
  const GradedSpace& V = *head.source;
  int deg = head.degree;
  int res_arity = head.arity;
  for (auto* a : args) {
    deg += a->degree;
    res_arity += a->arity - 1;
  }
  MultiMap out(res_arity, deg, head.source, head.target);
  if (res_arity > max_arity || static_cast<int>(args.size()) > head.arity) return out;
  const std::size_t k = args.size();
  for (const auto& [hin, hout] : head.table) {
    // choose slots s_0 < ... < s_{k-1}
    std::function<void(std::size_t, std::size_t, Word, long, Rational)> go = [&](std::size_t slot, std::size_t j, Word in,
                                                                             long prefix, Rational coeff) {
      if (slot == hin.size()) {
        if (j == k) {
          Vec cur = out.apply(in);
          Vec add = hout;
          add *= coeff;
          cur += add;
          out.set(in, cur);
        }
        return;
      }
      if (hin.size() - slot > k - j) {
        Word in2 = in;
        in2.push_back(hin[slot]);
        go(slot + 1, j, in2, prefix + V.degree(hin[slot]), coeff);
      }
      if (j < k) {
        const MultiMap& a = *args[j];
        for (const auto& [ain, aout] : a.table) {
          Rational c = aout.coeff(hin[slot]);
          if (c == 0) continue;
          Word in2 = concat(in, ain);
          go(slot + 1, j + 1, in2, prefix + degree_of_word(V, ain), coeff * c * koszul_pair(a.degree, prefix));
        }
      }
    };
    go(0, 0, Word{}, 0, Rational(1));
  }
  return out;
}

}  // namespace binfty
