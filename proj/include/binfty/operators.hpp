#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "binfty/binfty.hpp"
#include "binfty/hom_space.hpp"
#include "binfty/verify.hpp"

namespace binfty {

enum class OperatorSide { endo, coendo };

// Hom(W, +_m W^(x)m) truncated to output length in [min_arity, max_arity].
// Basis key: {in, out_1, .., out_m}; degree = sum deg(out_i) - deg(in).
inline HomSpace make_cohom_space(SpacePtr w, int min_arity, int max_arity, const std::string& label) {
  auto s = std::make_shared<GradedSpace>(label);
  std::vector<Word> words{Word{}};
  for (int m = 0; m <= max_arity; ++m) {
    if (m > 0) {
      std::vector<Word> next;
      for (const Word& x : words)
        for (int i = 0; i < w->dim(); ++i) {
          Word y = x;
          y.push_back(i);
          next.push_back(std::move(y));
        }
      words = std::move(next);
    }
    if (m < min_arity) continue;
    for (const Word& out : words)
      for (int in = 0; in < w->dim(); ++in) {
        Key k{in};
        k.insert(k.end(), out.begin(), out.end());
        std::string name = "(";
        for (std::size_t i = 0; i < out.size(); ++i) name += (i ? "," : "") + w->name(out[i]);
        s->add(name + ")<-" + w->name(in), degree_of_word(*w, out) - w->degree(in), k);
      }
  }
  return HomSpace{s, w, w, min_arity, max_arity};
}

// x{y_1, .., y_m} on basis cochains of an endomorphism Hom-space.
inline Vec brace_keys(const HomSpace& H, int x, const Word& ys) {
  const GradedSpace& S = *H.space;
  const Key& xk = S.key(x);
  const std::size_t k = xk.size() - 1;
  const std::size_t m = ys.size();
  Vec out;
  if (m > k) return out;
  std::vector<const Key*> slots(k, nullptr);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t slot, std::size_t j) {
    if (j == m) {
      auto r = compose_keys(xk, slots, *H.src, *H.tgt);
      if (r) {
        auto idx = S.find(r->second);
        if (idx) out.add(*idx, r->first);
      }
      return;
    }
    for (std::size_t s = slot; s + (m - j) <= k; ++s) {
      slots[s] = &S.key(ys[j]);
      go(s + 1, j + 1);
      slots[s] = nullptr;
    }
  };
  go(0, 0);
  return out;
}

// (.. (x) u_1 (x) .. (x) u_m (x) ..) o v on basis elements of a co-endomorphism
// space: the u's are applied to distinct letters of v's output, in order.
inline Vec coplace_keys(const HomSpace& H, const Word& us, int v) {
  const GradedSpace& S = *H.space;
  const GradedSpace& W = *H.src;
  const Key& vk = S.key(v);
  const std::size_t k = vk.size() - 1;
  const std::size_t m = us.size();
  Vec out;
  if (m > k) return out;
  std::function<void(std::size_t, std::size_t, Key, long, long)> go = [&](std::size_t pos, std::size_t j, Key acc,
                                                                         long prefix, long e) {
    if (pos == k) {
      if (j < m) return;
      auto idx = S.find(acc);
      if (idx) out.add(*idx, koszul_pair(1, e));
      return;
    }
    const int letter = vk[pos + 1];
    if (k - pos > m - j) {
      Key a = acc;
      a.push_back(letter);
      go(pos + 1, j, a, prefix + W.degree(letter), e);
    }
    if (j < m) {
      const Key& uk = S.key(us[j]);
      if (uk[0] != letter) return;
      Key a = acc;
      a.insert(a.end(), uk.begin() + 1, uk.end());
      go(pos + 1, j + 1, a, prefix + W.degree(letter), e + static_cast<long>(S.degree(us[j])) * prefix);
    }
  };
  go(0, 0, Key{vk[0]}, 0, 0);
  return out;
}

struct OperatorAlgebra {
  OperatorSide side;
  HomSpace hom;
  BInftyPtr structure;
};

// Endomorphism (b_{1,m} = brace) or co-endomorphism (b_{m,1} = placement into
// outputs) B-infinity algebra on a truncated Hom-space, d = 0. With e0 the
// differentials are deformed by it.
inline OperatorAlgebra build_operator_binfty(SpacePtr w, OperatorSide side, int max_arity,
                                             const std::optional<Vec>& e0 = std::nullopt, int min_arity = 1,
                                             const std::string& name = "") {
  const std::string label = name.empty() ? (side == OperatorSide::endo ? "E(" : "E'(") + w->label() + ")" : name;
  HomSpace H = side == OperatorSide::endo ? make_hom_space(w, w, min_arity, max_arity, label)
                                          : make_cohom_space(w, min_arity, max_arity, label);
  BInfty::BFn b;
  if (side == OperatorSide::endo) {
    b = [H](int m, int, const Word& args) {
      if (m != 1) return Vec{};
      return brace_keys(H, args[0], slice(args, 1, args.size()));
    };
  } else {
    b = [H](int m, int n, const Word& args) {
      if (n != 1) return Vec{};
      return coplace_keys(H, slice(args, 0, static_cast<std::size_t>(m)), args.back());
    };
  }
  auto B = std::make_shared<BInfty>(label, H.space, max_arity, b, nullptr);
  if (side == OperatorSide::endo && min_arity == 0) {
    // Constant cochains lower arity under braces, so terms cut above N can
    // come back below it. A tuple is exact when it has no constant, or when
    // its total arity plus two (one per deforming insertion of mu~) fits.
    B->set_safety([H, max_arity](const Word& w) {
      int total = 0;
      bool constant = false;
      for (int x : w) {
        const int a = HomSpace::arity_of(H.space->key(x));
        constant = constant || a == 0;
        total += a;
      }
      return !constant || total + 2 <= max_arity;
    });
  }
  BInftyPtr out = B;
  if (e0 && !e0->is_zero()) out = deform_mc(B, *e0, label);
  return OperatorAlgebra{side, H, out};
}

// Canonical action of E(W) on T^c(W): the operators are applied on disjoint
// consecutive blocks of the word, in order, each with the Koszul sign of the
// letters to its left.
inline Tensor endo_action_on_word(const HomSpace& H, const Word& es, const Word& w) {
  const GradedSpace& S = *H.space;
  const GradedSpace& W = *H.src;
  Tensor out;
  std::function<void(std::size_t, std::size_t, Word, long, long)> go = [&](std::size_t pos, std::size_t j, Word acc,
                                                                         long prefix, long e) {
    if (j == es.size()) {
      Word full = concat(acc, slice(w, pos, w.size()));
      out.add(full, koszul_pair(1, e));
      return;
    }
    const Key& ek = S.key(es[j]);
    const std::size_t a = ek.size() - 1;
    long pre = prefix;
    for (std::size_t start = pos; start + a <= w.size(); ++start) {
      if (start > pos) pre += W.degree(w[start - 1]);
      if (!std::equal(ek.begin() + 1, ek.end(), w.begin() + static_cast<long>(start))) continue;
      Word acc2 = concat(acc, slice(w, pos, start));
      acc2.push_back(ek[0]);
      long in_deg = degree_of_word(W, slice(w, start, start + a));
      go(start + a, j + 1, acc2, pre + in_deg, e + static_cast<long>(S.degree(es[j])) * pre);
    }
  };
  go(0, 0, Word{}, 0, 0);
  return out;
}

// Canonical action of E'(W) on the free algebra T(W): each operator replaces a
// distinct letter of the word by its output, in order.
inline Tensor coendo_action_on_word(const HomSpace& H, const Word& es, const Word& w) {
  const GradedSpace& S = *H.space;
  const GradedSpace& W = *H.src;
  Tensor out;
  std::function<void(std::size_t, std::size_t, Word, long, long)> go = [&](std::size_t pos, std::size_t j, Word acc,
                                                                         long prefix, long e) {
    if (j == es.size()) {
      out.add(concat(acc, slice(w, pos, w.size())), koszul_pair(1, e));
      return;
    }
    const Key& ek = S.key(es[j]);
    long pre = prefix;
    for (std::size_t at = pos; at < w.size(); ++at) {
      if (at > pos) pre += W.degree(w[at - 1]);
      if (w[at] != ek[0]) continue;
      Word acc2 = concat(acc, slice(w, pos, at));
      acc2.insert(acc2.end(), ek.begin() + 1, ek.end());
      go(at + 1, j + 1, acc2, pre + W.degree(w[at]), e + static_cast<long>(S.degree(es[j])) * pre);
    }
  };
  go(0, 0, Word{}, 0, 0);
  return out;
}

inline Tensor canonical_action_eval(const OperatorAlgebra& E, const Word& es, const Word& x) {
  if (es.empty()) throw Error(ErrorKind::InvalidInput, "canonical action needs at least one operator");
  return E.side == OperatorSide::endo ? endo_action_on_word(E.hom, es, x) : coendo_action_on_word(E.hom, es, x);
}

}  // namespace binfty
