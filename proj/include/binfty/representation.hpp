#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "binfty/actions.hpp"
#include "binfty/operators.hpp"

namespace binfty {

// Inverse of left_form: a left action of B^op read as a right action of B.
inline ActionData right_form(const ActionData& l, BInftyPtr actor) {
  auto target = l.target();
  auto fn = [l, actor, target](const Word& bs, int x) {
    Vec v = l.apply(bs, x);
    v *= koszul_pair(word_degree(*actor, bs), target->space->degree(x));
    return v;
  };
  std::string name = l.name();
  if (name.size() > 2 && name.compare(name.size() - 2, 2, "^L") == 0) name.resize(name.size() - 2);
  return ActionData(name, Side::right, l.kind(), std::move(actor), target, l.max_len(), fn);
}

// Canonical action of E(W) on T^c(W), or of E'(W) on T(W), over the words of
// the given target (which must be a word space over W).
inline ActionData canonical_action(const OperatorAlgebra& E, TargetPtr target, int max_len) {
  const HomSpace H = E.hom;
  const OperatorSide side = E.side;
  auto fn = [H, side, target](const Word& bs, int x) {
    const Word& w = target->space->key(x);
    Tensor t = side == OperatorSide::endo ? endo_action_on_word(H, bs, w) : coendo_action_on_word(H, bs, w);
    return tensor_to_vec(*target->space, t);
  };
  return ActionData("canonical(" + E.structure->name() + ")", Side::left,
                    side == OperatorSide::endo ? ActionKind::coalgebra : ActionKind::algebra, E.structure, target, max_len,
                    fn);
}

namespace detail {

inline void require_word_target(const Target& T, const GradedSpace& W) {
  for (int x = 0; x < T.space->dim(); ++x) {
    const Key& k = T.space->key(x);
    bool ok = !k.empty();
    for (int l : k) ok = ok && l >= 0 && l < W.dim();
    if (!ok || degree_of_word(W, k) != T.space->degree(x))
      throw Error(ErrorKind::NotRepresentable, "target element " + T.space->name(x) + " is not a word over " + W.label());
  }
}

}  // namespace detail

// mu_m(bs) = corestriction of beta_{m+1}(bs, -): the cochain whose value on a
// word w (resp. letter, for algebra targets) is the weight-1 part of beta(bs, w).
inline BInftyMorphism action_to_morphism(const ActionData& a, const OperatorAlgebra& E) {
  if (a.side() != Side::left) throw Error(ErrorKind::NotRepresentable, "left actions only");
  const bool endo = E.side == OperatorSide::endo;
  if ((endo && a.kind() != ActionKind::coalgebra) || (!endo && a.kind() != ActionKind::algebra))
    throw Error(ErrorKind::NotRepresentable, "target kind does not match the operator algebra");
  const GradedSpace& W = *E.hom.src;
  detail::require_word_target(*a.target(), W);
  const HomSpace H = E.hom;
  auto fn = [a, H, endo](const Word& bs) {
    Vec out;
    if (static_cast<int>(bs.size()) > a.max_len()) return out;
    const GradedSpace& S = *a.target()->space;
    for (int x = 0; x < S.dim(); ++x) {
      const Key& w = S.key(x);
      if (!endo && w.size() != 1) continue;
      for (const auto& [y, c] : a.apply(bs, x)) {
        const Key& img = S.key(y);
        Key k;
        if (endo) {
          if (img.size() != 1) continue;
          k = Key{img[0]};
          k.insert(k.end(), w.begin(), w.end());
        } else {
          k = Key{w[0]};
          k.insert(k.end(), img.begin(), img.end());
        }
        if (auto i = H.space->find(k)) out.add(*i, c);
      }
    }
    return out;
  };
  return BInftyMorphism{"mu(" + a.name() + ")", a.actor(), E.structure, fn};
}

// beta(bs, x) = sum over cuts of bs into consecutive nonempty groups of the
// canonical action of mu(G_1) (x) .. (x) mu(G_k) on x.
inline ActionData morphism_to_action(const BInftyMorphism& mu, const OperatorAlgebra& E, TargetPtr target,
                                     int max_len) {
  detail::require_word_target(*target, *E.hom.src);
  auto canon = canonical_action(E, target, max_len);
  auto fn = [mu, canon](const Word& bs, int x) {
    Vec out;
    std::function<void(std::size_t, Tensor)> go = [&](std::size_t pos, Tensor acc) {
      if (acc.is_zero()) return;
      if (pos == bs.size()) {
        out += canon.apply(acc, Vec(x));
        return;
      }
      for (std::size_t e = pos + 1; e <= bs.size(); ++e) {
        Vec img = mu.component(slice(bs, pos, e));
        if (!img.is_zero()) go(e, append_vec(acc, img));
      }
    };
    Tensor start;
    start.add(Word{}, 1);
    go(0, start);
    return out;
  };
  return ActionData("action(" + mu.name + ")", Side::left,
                    E.side == OperatorSide::endo ? ActionKind::coalgebra : ActionKind::algebra, mu.source, target,
                    max_len, fn);
}

// Truncation data for a cobar algebra: words of at most max_weight letters
// whose summed filtration stays within max_filtration (no bound when filt is
// null).
struct CobarCutoff {
  int max_weight = 3;
  std::function<int(int)> filt;
  int max_filtration = 0;
};

namespace detail {

// One summand of the cobar differential on a word of Omega(C): s^-1 d_C when
// with_d, delta(s^-1 c) = sum (-1)^{|c'| + 1} s^-1 c' (x) s^-1 c'' when
// with_delta, each with the Koszul sign of the letters to its left.
inline Vec cobar_differential(const GradedSpace& S, const Target& C, int x, bool with_d, bool with_delta) {
  const GradedSpace& L = *C.space;
  const Word& w = S.key(x);
  Vec out;
  long prefix = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word left = slice(w, 0, i), right = slice(w, i + 1, w.size());
    const int sgn = koszul_pair(1, prefix);
    if (with_d)
      for (const auto& [c, q] : C.d(w[i])) {
        Word nw = left;
        nw.push_back(c);
        nw.insert(nw.end(), right.begin(), right.end());
        if (auto j = S.find(nw)) out.add(*j, q * sgn);
      }
    if (with_delta && C.coprod)
      for (const auto& [pr, q] : C.coprod(w[i])) {
        Word nw = left;
        nw.push_back(pr.first);
        nw.push_back(pr.second);
        nw.insert(nw.end(), right.begin(), right.end());
        if (auto j = S.find(nw)) out.add(*j, q * sgn * koszul_pair(1, L.degree(pr.first) + 1));
      }
    prefix += L.degree(w[i]) + 1;
  }
  return out;
}

}  // namespace detail

// Omega(C) on the desuspended basis of C: letters s^-1 c of degree |c| + 1,
// product = concatenation, differential s^-1 d_C + delta.
inline TargetPtr cobar_target(const Target& C, const CobarCutoff& cut, const std::string& label) {
  SpacePtr L = C.space;
  auto words = words_up_to(*L, cut.max_weight, cut.filt, cut.max_filtration);
  auto S = word_space(*L, words, 1, label, "s^-1");
  auto t = std::make_shared<Target>();
  t->name = label;
  t->space = S;
  t->mult = [S](int x, int y) {
    auto i = S->find(concat(S->key(x), S->key(y)));
    return i ? Vec(*i) : Vec{};
  };
  Target Cc = C;
  t->diff = [S, Cc](int x) { return detail::cobar_differential(*S, Cc, x, true, true); };
  return t;
}

// Bar coalgebra B(A) on the suspended basis: letters s a of degree |a| - 1,
// deconcatenation, and the coderivation of s d s^-1 and
// mu~(s a, s b) = (-1)^{|a|} s(ab).
inline TargetPtr bar_target(const Target& A, int max_weight, const std::string& label) {
  SpacePtr L = A.space;
  auto words = words_up_to(*L, max_weight);
  auto S = word_space(*L, words, -1, label, "s");
  auto t = std::make_shared<Target>();
  t->name = label;
  t->space = S;
  t->coprod = [S](int x) {
    Coproduct c;
    for (const auto& [l, r] : deconcatenate(S->key(x))) {
      auto i = S->find(l), j = S->find(r);
      if (i && j) c.add({*i, *j}, 1);
    }
    return c;
  };
  Target Ac = A;
  t->diff = [S, L, Ac](int x) {
    const Word& w = S->key(x);
    Vec out;
    long prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int sgn = koszul_pair(1, prefix);
      Word left = slice(w, 0, i);
      for (const auto& [c, q] : Ac.d(w[i])) {
        Word nw = left;
        nw.push_back(c);
        nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        if (auto j = S->find(nw)) out.add(*j, q * sgn);
      }
      if (i + 1 < w.size() && Ac.mult)
        for (const auto& [c, q] : Ac.mult(w[i], w[i + 1])) {
          Word nw = left;
          nw.push_back(c);
          nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
          if (auto j = S->find(nw)) out.add(*j, q * sgn * koszul_pair(1, L->degree(w[i])));
        }
      prefix += L->degree(w[i]) - 1;
    }
    return out;
  };
  return t;
}

namespace detail {

// Extends an action on the letters (read through `letter_action`) to words of
// a word-space target: consecutive, possibly empty groups of the actor word,
// one per letter, each passing the letters to its left.
inline Vec act_on_target_word(const BInfty& B, const GradedSpace& S, const Word& bs, const Word& w,
                              const std::function<Vec(const Word&, int)>& letter_action,
                              const std::function<int(int)>& letter_degree) {
  Vec out;
  const GradedSpace& A = B.carrier();
  std::function<void(std::size_t, std::size_t, long, long, Tensor)> go = [&](std::size_t i, std::size_t used, long prefix,
                                                                          long e, Tensor acc) {
    if (acc.is_zero()) return;
    if (i == w.size()) {
      if (used == bs.size()) out.add(tensor_to_vec(S, acc), koszul_pair(1, e));
      return;
    }
    const std::size_t from = (i + 1 == w.size()) ? bs.size() : used;
    for (std::size_t end = from; end <= bs.size(); ++end) {
      Word g = slice(bs, used, end);
      Vec img = g.empty() ? Vec(w[i]) : letter_action(g, w[i]);
      if (img.is_zero()) continue;
      go(i + 1, end, prefix + letter_degree(w[i]), e + static_cast<long>(degree_of_word(A, g)) * prefix,
         append_vec(acc, img));
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, 0, 0, 0, start);
  return out;
}

}  // namespace detail

// Omega(beta)(bs, s^-1 c) = s^-1 beta(bs, c), extended to products. Right
// actions go through their left form over B^op and come back.
inline ActionData cobar_transport(const ActionData& a, const CobarCutoff& cut, const std::string& label = "") {
  if (a.kind() != ActionKind::coalgebra) throw Error(ErrorKind::ActionAxiomViolation, "cobar needs a coalgebra action");
  const ActionData l = left_form(a);
  const std::string lab = label.empty() ? "Omega(" + a.target()->name + ")" : label;
  auto T = cobar_target(*l.target(), cut, lab);
  BInftyPtr B = l.actor();
  SpacePtr C = l.target()->space;
  auto fn = [l, B, T, C](const Word& bs, int x) {
    return detail::act_on_target_word(
        *B, *T->space, bs, T->space->key(x), [&](const Word& g, int c) { return l.apply(g, c); },
        [&](int c) { return C->degree(c) + 1; });
  };
  ActionData out("Omega(" + a.name() + ")", Side::left, ActionKind::algebra, B, T, l.max_len(), fn);
  return a.side() == Side::left ? out : right_form(out, a.actor());
}

// B(beta)(bs, s a) = s beta(bs, a), extended as a coalgebra action.
inline ActionData bar_transport(const ActionData& a, int max_weight, const std::string& label = "") {
  if (a.kind() != ActionKind::algebra) throw Error(ErrorKind::ActionAxiomViolation, "bar needs an algebra action");
  const ActionData l = left_form(a);
  const std::string lab = label.empty() ? "Bar(" + a.target()->name + ")" : label;
  auto T = bar_target(*l.target(), max_weight, lab);
  BInftyPtr B = l.actor();
  SpacePtr A = l.target()->space;
  auto fn = [l, B, T, A](const Word& bs, int x) {
    return detail::act_on_target_word(
        *B, *T->space, bs, T->space->key(x), [&](const Word& g, int c) { return l.apply(g, c); },
        [&](int c) { return A->degree(c) - 1; });
  };
  ActionData out("Bar(" + a.name() + ")", Side::left, ActionKind::coalgebra, B, T, l.max_len(), fn);
  return a.side() == Side::left ? out : right_form(out, a.actor());
}

// delta(Omega(beta)(bs, s^-1 c)) = (-1)^{|bs|} Omega(beta)(bs, delta(s^-1 c)) on
// generators s^-1 c of Omega(C), delta the deconcatenation part only. The
// action is read in its left form; C is the coalgebra it was transported from.
inline CheckResult check_fd2(const ActionData& omega_action, const Target& C, const ActionProbeSet& ps) {
  const ActionData a = left_form(omega_action);
  const BInfty& B = *a.actor();
  const GradedSpace& S = *a.target()->space;
  CheckResult r(omega_action.name() + ".fd2", "FD2");
  r.modulus = "weight and filtration cutoffs";
  ActionProbeSet gens = ps;
  gens.targets.clear();
  for (int x : ps.targets)
    if (S.key(x).size() == 1) gens.targets.push_back(x);
  detail::for_action_probes(gens, 1, a.max_len(), r, [&](const Word& bs, int x) {
    Vec lhs;
    for (const auto& [y, c] : a.apply(bs, x)) lhs.add(detail::cobar_differential(S, C, y, false, true), c);
    Vec rhs;
    for (const auto& [y, c] : detail::cobar_differential(S, C, x, false, true)) rhs.add(a.apply(bs, y), c);
    rhs *= koszul_pair(1, word_degree(B, bs));
    if (lhs != rhs) r.fail(detail::make_witness(S, detail::action_inputs(B.carrier(), bs, {}, S.name(x)), lhs, rhs));
  });
  return r;
}

}  // namespace binfty
