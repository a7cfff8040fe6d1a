#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "binfty/extensions.hpp"
#include "binfty/representation.hpp"

namespace binfty {

// g = Hom(+ (sA)^m, sA), h = Hom(+ (sB)^m, sB), Psi = Hom(+ (sA)^m, sB), all
// truncated at arity N, plus the cofree coalgebra on Psi cut at total cochain
// arity F (this is the filtration realizing the completion).
struct HomComplexes {
  SpacePtr sA;
  SpacePtr sB;
  OperatorAlgebra g;
  OperatorAlgebra h;
  HomSpace psi;
  int N = 3;
  int P = 3;
  int F = 3;
  TargetPtr tc;  // T^c(Psi), basis keyed by words over Psi

  int psi_arity(int p) const { return HomSpace::arity_of(psi.space->key(p)); }
  int tc_filtration(int t) const {
    int f = 0;
    for (int p : tc->space->key(t)) f += psi_arity(p);
    return f;
  }
};

inline HomComplexes make_hom_complexes(SpacePtr sA, SpacePtr sB, int N, int P, int F) {
  HomComplexes hc;
  hc.sA = sA;
  hc.sB = sB;
  hc.N = N;
  hc.P = P;
  hc.F = F;
  hc.g = build_operator_binfty(sA, OperatorSide::endo, N, std::nullopt, 1, "g");
  hc.h = build_operator_binfty(sB, OperatorSide::endo, N, std::nullopt, 1, "h");
  hc.psi = make_hom_space(sA, sB, 1, N, "Psi");
  const HomSpace psi = hc.psi;
  auto words = words_up_to(*psi.space, F, [psi](int p) { return HomSpace::arity_of(psi.space->key(p)); }, F);
  hc.tc = tensor_coalgebra_target(psi.space, words, "Tc(Psi)");
  return hc;
}

namespace detail {

// (beta_1 (x) .. (x) beta_k) o (psi_1 (x) .. (x) psi_n): the betas land on
// disjoint consecutive blocks of psis, identity elsewhere; each beta pays its
// degree times the degrees of the psis to its left.
inline Tensor h_on_psi_word(const HomComplexes& hc, const Word& betas, const Word& psis) {
  const GradedSpace& H = *hc.h.hom.space;
  const GradedSpace& Ps = *hc.psi.space;
  Tensor out;
  std::function<void(std::size_t, std::size_t, Word, long, long)> go = [&](std::size_t pos, std::size_t j, Word acc,
                                                                         long prefix, long e) {
    if (j == betas.size()) {
      out.add(concat(acc, slice(psis, pos, psis.size())), koszul_pair(1, e));
      return;
    }
    const Key& bk = H.key(betas[j]);
    const std::size_t m = bk.size() - 1;
    long pre = prefix;
    for (std::size_t start = pos; start + m <= psis.size(); ++start) {
      if (start > pos) pre += Ps.degree(psis[start - 1]);
      std::vector<const Key*> slots;
      for (std::size_t t = 0; t < m; ++t) slots.push_back(&Ps.key(psis[start + t]));
      auto r = compose_keys(bk, slots, *hc.sA, *hc.sB);
      if (!r) continue;
      auto idx = Ps.find(r->second);
      if (!idx) continue;
      Word acc2 = concat(acc, slice(psis, pos, start));
      acc2.push_back(*idx);
      long blk = 0;
      for (std::size_t t = start; t < start + m; ++t) blk += Ps.degree(psis[t]);
      go(start + m, j + 1, acc2, pre + blk, e + static_cast<long>(H.degree(betas[j])) * pre + (r->first < 0 ? 1 : 0));
    }
  };
  go(0, 0, Word{}, 0, 0);
  return out;
}

// psi{alpha_1, .., alpha_k}: the alphas go into distinct inputs of psi, in order.
inline Vec psi_brace(const HomComplexes& hc, int psi, const Word& alphas) {
  const GradedSpace& G = *hc.g.hom.space;
  const GradedSpace& Ps = *hc.psi.space;
  const Key& pk = Ps.key(psi);
  const std::size_t k = pk.size() - 1;
  Vec out;
  if (alphas.size() > k) return out;
  std::vector<const Key*> slots(k, nullptr);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t slot, std::size_t j) {
    if (j == alphas.size()) {
      auto r = compose_keys(pk, slots, *hc.sA, *hc.sA);
      if (r)
        if (auto idx = Ps.find(r->second)) out.add(*idx, r->first);
      return;
    }
    for (std::size_t s = slot; s + (alphas.size() - j) <= k; ++s) {
      slots[s] = &G.key(alphas[j]);
      go(s + 1, j + 1);
      slots[s] = nullptr;
    }
  };
  go(0, 0);
  return out;
}

// (psi_1 (x) .. (x) psi_n) o (alpha_1 (x) .. (x) alpha_k): consecutive, possibly
// empty groups of alphas, one per psi; a group pays its degree times the
// degrees of the psis to its right.
inline Tensor psi_word_on_g(const HomComplexes& hc, const Word& psis, const Word& alphas) {
  const GradedSpace& G = *hc.g.hom.space;
  const GradedSpace& Ps = *hc.psi.space;
  Tensor out;
  std::vector<long> suffix(psis.size() + 1, 0);
  for (std::size_t i = psis.size(); i-- > 0;) suffix[i] = suffix[i + 1] + Ps.degree(psis[i]);
  std::function<void(std::size_t, std::size_t, long, Tensor)> go = [&](std::size_t i, std::size_t used, long e, Tensor acc) {
    if (acc.is_zero()) return;
    if (i == psis.size()) {
      if (used == alphas.size()) out.add(acc, koszul_pair(1, e));
      return;
    }
    const std::size_t from = (i + 1 == psis.size()) ? alphas.size() : used;
    for (std::size_t end = from; end <= alphas.size(); ++end) {
      Word grp = slice(alphas, used, end);
      Vec img = grp.empty() ? Vec(psis[i]) : psi_brace(hc, psis[i], grp);
      if (img.is_zero()) continue;
      go(i + 1, end, e + static_cast<long>(degree_of_word(G, grp)) * suffix[i + 1], append_vec(acc, img));
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, 0, 0, start);
  return out;
}

}  // namespace detail

// Left action of h on T^c(Psi) by left composition.
inline ActionData psi_left_action(const HomComplexes& hc) {
  auto tc = hc.tc;
  auto fn = [hc, tc](const Word& bs, int x) { return tensor_to_vec(*tc->space, detail::h_on_psi_word(hc, bs, tc->space->key(x))); };
  return ActionData("h-left", Side::left, ActionKind::coalgebra, hc.h.structure, tc, hc.N, fn);
}

// Right action of g on T^c(Psi) by precomposition with the coderivation of alpha.
inline ActionData psi_right_action(const HomComplexes& hc) {
  auto tc = hc.tc;
  auto fn = [hc, tc](const Word& as, int x) { return tensor_to_vec(*tc->space, detail::psi_word_on_g(hc, tc->space->key(x), as)); };
  return ActionData("g-right", Side::right, ActionKind::coalgebra, hc.g.structure, tc, hc.N, fn);
}

struct PsiActions {
  ActionData left;
  ActionData right;
};

inline PsiActions build_psi_actions(const HomComplexes& hc) { return PsiActions{psi_left_action(hc), psi_right_action(hc)}; }

inline CobarCutoff gamma_cutoff(const HomComplexes& hc) {
  auto tc = hc.tc;
  auto psi = hc.psi;
  CobarCutoff c;
  c.max_weight = hc.P;
  c.max_filtration = hc.F;
  c.filt = [tc, psi](int t) {
    int f = 0;
    for (int q : tc->space->key(t)) f += HomSpace::arity_of(psi.space->key(q));
    return f;
  };
  return c;
}

inline AlgebraPresentation presentation_of(const Target& T) {
  AlgebraPresentation A;
  A.name = T.name;
  A.space = T.space;
  const int n = T.space->dim();
  for (int x = 0; x < n; ++x) {
    if (T.diff) {
      Vec d = T.diff(x);
      if (!d.is_zero()) A.diff[x] = d;
    }
    if (T.mult)
      for (int y = 0; y < n; ++y) {
        Vec m = T.mult(x, y);
        if (!m.is_zero()) A.mult[{x, y}] = m;
      }
  }
  return A;
}

// Presentation of a cobar algebra: the product is concatenation, so it is
// read off the splittings of each basis word instead of all pairs.
inline AlgebraPresentation cobar_presentation(const Target& T) {
  AlgebraPresentation A;
  A.name = T.name;
  A.space = T.space;
  const GradedSpace& S = *T.space;
  for (int z = 0; z < S.dim(); ++z) {
    Vec d = T.d(z);
    if (!d.is_zero()) A.diff[z] = d;
    for (const auto& [l, r] : deconcatenate(S.key(z))) {
      auto i = S.find(l), j = S.find(r);
      if (i && j) A.mult[{*i, *j}] = Vec(z);
    }
  }
  return A;
}

// Gamma = Omega(T^c(Psi)) cut at weight P and filtration F, with its
// differential delta and concatenation product.
inline AlgebraPresentation cobar_gamma(const HomComplexes& hc) {
  return cobar_presentation(*cobar_target(*hc.tc, gamma_cutoff(hc), "Gamma"));
}

// The B-infinity algebra L(A,B) on Gamma + g + h, assembled from the cobar
// transports of the two actions on T^c(Psi).
struct MorphismComplexLAB {
  HomComplexes hc;
  ActionData left_tc;
  ActionData right_tc;
  ActionData left_gamma;
  ActionData right_gamma;
  AlgebraPresentation gamma;
  ExtensionResult L;

  const SumSpace& carrier() const { return L.carrier; }
  BInftyPtr structure() const { return L.total; }
  std::vector<std::vector<int>> strata() const {
    std::vector<std::vector<int>> s(3);
    for (int x = 0; x < L.carrier.space->dim(); ++x) s[static_cast<std::size_t>(L.carrier.tag(x))].push_back(x);
    return s;
  }
};

inline MorphismComplexLAB assemble_LAB(const HomComplexes& hc) {
  ActionData left_tc = psi_left_action(hc);
  ActionData right_tc = psi_right_action(hc);
  CobarCutoff cut = gamma_cutoff(hc);
  ActionData lg = cobar_transport(left_tc, cut, "Gamma");
  ActionData rg = cobar_transport(right_tc, cut, "Gamma");
  // both transports build the same Gamma; keep one target for both actions
  TargetPtr gamma_t = lg.target();
  ActionData rg2(rg.name(), Side::right, ActionKind::algebra, rg.actor(), gamma_t, rg.max_len(),
                 [rg](const Word& bs, int x) { return rg.apply(bs, x); });
  AlgebraPresentation gamma = cobar_presentation(*gamma_t);
  ExtensionResult L = extend_two_sided(lg, rg2, gamma, nullptr, {}, "L");
  return MorphismComplexLAB{hc, left_tc, right_tc, lg, rg2, gamma, L};
}

// Independent evaluation of the explicit families on Gamma + g + h:
//   b_{1,1}(x, y) = x (x) y on Gamma,
//   braces on g and on h,
//   b_{m,1}(beta.., x)          = (beta..) o x,
//   b_{1,m}(x, alpha..)         = (-1)^{|alpha..|} x o (alpha..),
//   b_{m+1,1}(x, beta.., y)     = x (x) ((beta..) o y),
//   b_{1,m+1}(x, alpha.., y)    = (-1)^{|alpha..|} (x o (alpha..)) (x) y,
//   b_{m+1,n+1}(x, beta.., alpha.., y)
//     = (-1)^{|alpha..|(|beta..| + 1)} (x o (alpha..)) (x) ((beta..) o y),
// extended from generators of Gamma to its words as an almost free algebra.
inline BInftyPtr final_structure(const MorphismComplexLAB& M) {
  const HomComplexes hc = M.hc;
  const SumSpace S = M.L.carrier;
  const AlgebraPresentation Gm = M.gamma;
  auto tcS = hc.tc->space;
  const GradedSpace& Gs = *Gm.space;
  auto gen_deg = [tcS](int t) { return degree_of_word(*tcS, tcS->key(t)) + 1; };
  // (beta..) o gamma-word: groups over generators, passing earlier generators.
  auto h_on = [hc, tcS, gen_deg, &Gs](const Word& bs, int x) {
    const Word& gens = Gs.key(x);
    Vec out;
    const GradedSpace& H = *hc.h.hom.space;
    std::function<void(std::size_t, std::size_t, long, long, Word, Rational)> go =
        [&](std::size_t i, std::size_t used, long prefix, long e, Word acc, Rational c) {
          if (i == gens.size()) {
            if (used == bs.size())
              if (auto j = Gs.find(acc)) out.add(*j, c * koszul_pair(1, e));
            return;
          }
          const std::size_t from = i + 1 == gens.size() ? bs.size() : used;
          for (std::size_t end = from; end <= bs.size(); ++end) {
            Word grp = slice(bs, used, end);
            const long gd = degree_of_word(H, grp);
            if (grp.empty()) {
              Word a = acc;
              a.push_back(gens[i]);
              go(i + 1, end, prefix + gen_deg(gens[i]), e, a, c);
              continue;
            }
            for (const auto& [w, q] : detail::h_on_psi_word(hc, grp, tcS->key(gens[i]))) {
              auto t = tcS->find(w);
              if (!t) continue;
              Word a = acc;
              a.push_back(*t);
              go(i + 1, end, prefix + gen_deg(gens[i]), e + gd * prefix, a, c * q);
            }
          }
        };
    go(0, 0, 0, 0, Word{}, Rational(1));
    return out;
  };
  // gamma-word o (alpha..): groups over generators, passing later generators,
  // each nonempty group with the extra sign of its degree.
  auto g_on = [hc, tcS, gen_deg, &Gs](int x, const Word& as) {
    const Word& gens = Gs.key(x);
    Vec out;
    const GradedSpace& G = *hc.g.hom.space;
    std::vector<long> suffix(gens.size() + 1, 0);
    for (std::size_t i = gens.size(); i-- > 0;) suffix[i] = suffix[i + 1] + gen_deg(gens[i]);
    std::function<void(std::size_t, std::size_t, long, Word, Rational)> go = [&](std::size_t i, std::size_t used, long e,
                                                                               Word acc, Rational c) {
      if (i == gens.size()) {
        if (used == as.size())
          if (auto j = Gs.find(acc)) out.add(*j, c * koszul_pair(1, e));
        return;
      }
      const std::size_t from = i + 1 == gens.size() ? as.size() : used;
      for (std::size_t end = from; end <= as.size(); ++end) {
        Word grp = slice(as, used, end);
        const long gd = degree_of_word(G, grp);
        if (grp.empty()) {
          Word a = acc;
          a.push_back(gens[i]);
          go(i + 1, end, e, a, c);
          continue;
        }
        for (const auto& [w, q] : detail::psi_word_on_g(hc, tcS->key(gens[i]), grp)) {
          auto t = tcS->find(w);
          if (!t) continue;
          Word a = acc;
          a.push_back(*t);
          go(i + 1, end, e + gd * suffix[i + 1] + gd, a, c * q);
        }
      }
    };
    go(0, 0, 0, Word{}, Rational(1));
    return out;
  };
  auto cat = [&Gs](const Vec& x, const Vec& y) {
    Vec out;
    for (const auto& [i, c] : x)
      for (const auto& [j, e] : y)
        if (auto k = Gs.find(concat(Gs.key(i), Gs.key(j)))) out.add(*k, c * e);
    return out;
  };
  BInftyPtr g = hc.g.structure, h = hc.h.structure;
  auto b = [S, g, h, h_on, g_on, cat](int m, int n, const Word& w) -> Vec {
    const std::size_t L = w.size();
    auto tag = [&](std::size_t i) { return S.tag(w[i]); };
    auto run = [&](std::size_t from, std::size_t to, int t) { return detail::all_tag(S, w, from, to, t); };
    if (run(0, L, 1)) return S.embed(1, g->b(m, n, S.locals(w)));
    if (run(0, L, 2)) return S.embed(2, h->b(m, n, S.locals(w)));
    if (run(0, L, 0)) return m == 1 && n == 1 ? S.embed(0, cat(Vec(S.local(w[0])), Vec(S.local(w[1])))) : Vec{};
    if (n == 1 && tag(L - 1) == 0 && run(0, L - 1, 2)) return S.embed(0, h_on(S.locals(slice(w, 0, L - 1)), S.local(w[L - 1])));
    if (m == 1 && tag(0) == 0 && run(1, L, 1)) {
      Word as = S.locals(slice(w, 1, L));
      return S.embed(0, g_on(S.local(w[0]), as));
    }
    if (tag(0) == 0 && tag(L - 1) == 0 && L >= 3) {
      const std::size_t nb = static_cast<std::size_t>(m) - 1;
      if (!run(1, 1 + nb, 2) || !run(1 + nb, L - 1, 1)) return {};
      Word bs = S.locals(slice(w, 1, 1 + nb)), as = S.locals(slice(w, 1 + nb, L - 1));
      Vec left = as.empty() ? Vec(S.local(w[0])) : g_on(S.local(w[0]), as);
      Vec right = bs.empty() ? Vec(S.local(w[L - 1])) : h_on(bs, S.local(w[L - 1]));
      Vec r = cat(left, right);
      const long sa = degree_of_word(g->carrier(), as), sb = degree_of_word(h->carrier(), bs);
      // the (-1)^{|alpha..|} of the modified right action is already inside g_on
      r *= koszul_pair(sa, sb + 1) * koszul_pair(1, sa);
      return S.embed(0, r);
    }
    return {};
  };
  auto d = [S, Gm](int m, const Word& w) -> Vec {
    if (m == 1 && S.tag(w[0]) == 0) return S.embed(0, Gm.d(S.local(w[0])));
    return {};
  };
  return std::make_shared<BInfty>("L-direct", S.space, M.L.total->op_bound(), b, d);
}

// A-infinity data: alpha in g, beta in h of degree 1 and psi in Psi of degree 0.
struct AInftyTriple {
  Vec alpha;
  Vec beta;
  Vec psi;
};

struct MorphismConditionReport {
  Vec alpha_square;  // alpha{alpha}
  Vec beta_square;   // beta{beta}
  Vec morphism;      // psi o alpha^ - beta o psi~, in Psi
  bool ok() const { return alpha_square.is_zero() && beta_square.is_zero() && morphism.is_zero(); }
};

inline MorphismConditionReport morphism_conditions(const HomComplexes& hc, const AInftyTriple& t) {
  MorphismConditionReport r;
  r.alpha_square = eval_b(*hc.g.structure, 1, 1, {t.alpha, t.alpha});
  r.beta_square = eval_b(*hc.h.structure, 1, 1, {t.beta, t.beta});
  for (const auto& [p, c] : t.psi)
    for (const auto& [a, e] : t.alpha) r.morphism.add(detail::psi_brace(hc, p, Word{a}), c * e);
  for (const auto& [bb, c] : t.beta) {
    const int m = HomSpace::arity_of(hc.h.hom.space->key(bb));
    std::vector<Vec> copies(static_cast<std::size_t>(m), t.psi);
    for (const auto& [w, e] : tensor_of(copies))
      for (const auto& [y, q] : detail::h_on_psi_word(hc, Word{bb}, w))
        if (y.size() == 1) r.morphism.add(y[0], -c * e * q);
  }
  return r;
}

// Gamma element s^-1(psi) + s^-1(psi (x) psi) + .. up to the filtration bound.
inline Vec geometric_series(const MorphismComplexLAB& M, const Vec& psi) {
  const auto& S = M.L.carrier;
  const GradedSpace& G = *M.gamma.space;
  const GradedSpace& T = *M.hc.tc->space;
  Vec out;
  for (int m = 1; m <= M.hc.F; ++m) {
    std::vector<Vec> copies(static_cast<std::size_t>(m), psi);
    for (const auto& [w, c] : tensor_of(copies))
      if (auto t = T.find(w))
        if (auto gi = G.find(Word{*t})) out.add(*gi + S.offsets[0], c);
  }
  return out;
}

inline Vec ainfty_to_mc(const MorphismComplexLAB& M, const AInftyTriple& t) {
  auto rep = morphism_conditions(M.hc, t);
  if (!rep.ok()) throw Error(ErrorKind::NotAInftyStructure, "alpha{alpha}, beta{beta} or the morphism equation fails");
  const auto& S = M.L.carrier;
  Vec l = S.embed(1, t.alpha);
  l += S.embed(2, t.beta);
  l += geometric_series(M, t.psi);
  return l;
}

inline AInftyTriple mc_to_ainfty(const MorphismComplexLAB& M, const Vec& l) {
  const auto& S = M.L.carrier;
  const GradedSpace& G = *M.gamma.space;
  const GradedSpace& T = *M.hc.tc->space;
  AInftyTriple t;
  for (const auto& [x, c] : l) {
    const int tag = S.tag(x), loc = S.local(x);
    if (tag == 1) t.alpha.add(loc, c);
    if (tag == 2) t.beta.add(loc, c);
    if (tag == 0) {
      const Word& gens = G.key(loc);
      if (gens.size() >= 2)
        throw Error(ErrorKind::NotAMorphismSolution, "component of weight " + std::to_string(gens.size()) + " at " + G.name(loc));
      const Word& psis = T.key(gens[0]);
      if (psis.size() == 1) t.psi.add(psis[0], c);
    }
  }
  Vec gamma_part = l.filtered([&](int x) { return S.tag(x) == 0; });
  if (gamma_part != geometric_series(M, t.psi))
    throw Error(ErrorKind::NotAMorphismSolution, "Gamma part is not the series of its weight-one letter");
  if (!morphism_conditions(M.hc, t).ok()) throw Error(ErrorKind::NotAInftyStructure, "extracted triple fails");
  return t;
}

// s-level A-infinity data of a dg algebra morphism f: mu~ + d~ on A and B, and
// psi(sa) = s f(a).
inline AInftyTriple triple_of(const HomComplexes& hc, const AlgebraMorphism& f) {
  AInftyTriple t;
  t.alpha = s_level_structure(f.dom, hc.g.hom);
  t.beta = s_level_structure(f.cod, hc.h.hom);
  for (int a = 0; a < f.dom.dim(); ++a)
    for (const auto& [b, c] : f(a))
      if (auto i = hc.psi.space->find(Key{b, a})) t.psi.add(*i, c);
  return t;
}

struct DeformedLAB {
  BInftyPtr Bf;  // deform_mc(L, l0)
  Vec l0;
};

inline DeformedLAB deform_to_Bf(const MorphismComplexLAB& M, const Vec& l0) {
  return DeformedLAB{deform_mc(M.L.total, l0, "B(f)"), l0};
}

// d^{l0}(x) = delta(x) + [l0, x] on a vector.
inline Vec lie_differential(const BInfty& L, const Vec& l0, const Vec& x) {
  Vec out;
  for (const auto& [i, c] : x) out.add(L.d(1, Word{i}), c);
  if (!x.is_zero()) out += lie_bracket(L, l0, x);
  return out;
}

}  // namespace binfty
