#pragma once

#include <memory>
#include <string>
#include <vector>

#include "binfty/actions.hpp"
#include "binfty/algebra.hpp"

namespace binfty {

// A dg algebra read as a B-infinity algebra: b_{1,1} = product, d_1 = d_A.
inline BInftyPtr algebra_binfty(const AlgebraPresentation& A, int op_bound) {
  auto Ac = std::make_shared<AlgebraPresentation>(A);
  auto b = [Ac](int m, int n, const Word& w) { return m == 1 && n == 1 ? Ac->mul(w[0], w[1]) : Vec{}; };
  auto d = [Ac](int m, const Word& w) { return m == 1 ? Ac->d(w[0]) : Vec{}; };
  return std::make_shared<BInfty>("s^-1 " + A.name, A.space, op_bound, b, d);
}

// Direct sum of graded spaces; element i of part p gets key {p, i}.
struct SumSpace {
  SpacePtr space;
  std::vector<int> offsets;
  std::vector<SpacePtr> parts;

  int tag(int x) const { return space->key(x)[0]; }
  int local(int x) const { return space->key(x)[1]; }
  Vec embed(int part, const Vec& v) const {
    Vec out;
    for (const auto& [i, c] : v) out.add(i + offsets[static_cast<std::size_t>(part)], c);
    return out;
  }
  Word locals(const Word& w) const {
    Word out;
    for (int x : w) out.push_back(local(x));
    return out;
  }
};

inline SumSpace direct_sum(const std::vector<SpacePtr>& parts, const std::string& label) {
  auto s = std::make_shared<GradedSpace>(label);
  std::vector<int> offsets;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    offsets.push_back(s->dim());
    for (int i = 0; i < parts[p]->dim(); ++i) {
      std::string name = parts[p]->name(i);
      if (s->find_name(name)) name += "@" + parts[p]->label();
      s->add(name, parts[p]->degree(i), Key{static_cast<int>(p), i});
    }
  }
  return SumSpace{s, offsets, parts};
}

struct ExtensionResult {
  BInftyPtr total;
  SumSpace carrier;
  BInftyMorphism include;
  BInftyMorphism project;
  BInftyPtr sub;
  BInftyPtr quotient;
};

namespace detail {

inline bool all_tag(const SumSpace& S, const Word& w, std::size_t from, std::size_t to, int tag) {
  for (std::size_t i = from; i < to; ++i)
    if (S.tag(w[i]) != tag) return false;
  return true;
}

// Linear maps between B-infinity algebras with components in arity 1 only.
inline BInftyMorphism strict_morphism(std::string name, BInftyPtr src, BInftyPtr tgt, std::function<Vec(int)> f) {
  return BInftyMorphism{std::move(name), std::move(src), std::move(tgt), [f](const Word& w) {
                          return w.size() == 1 ? f(w[0]) : Vec{};
                        }};
}

}  // namespace detail

// Direct product of B-infinity algebras on the direct sum of their carriers;
// mixed inputs give zero.
inline BInftyPtr product_binfty(const std::vector<BInftyPtr>& parts, const std::string& label) {
  std::vector<SpacePtr> spaces;
  int bound = 1 << 20;
  for (const auto& p : parts) {
    spaces.push_back(p->carrier_ptr());
    bound = std::min(bound, p->op_bound());
  }
  SumSpace S = direct_sum(spaces, label);
  auto b = [S, parts](int m, int n, const Word& w) {
    const int t = S.tag(w[0]);
    if (!detail::all_tag(S, w, 0, w.size(), t)) return Vec{};
    return S.embed(t, parts[static_cast<std::size_t>(t)]->b(m, n, S.locals(w)));
  };
  auto d = [S, parts](int m, const Word& w) {
    const int t = S.tag(w[0]);
    if (!detail::all_tag(S, w, 0, w.size(), t)) return Vec{};
    return S.embed(t, parts[static_cast<std::size_t>(t)]->d(m, S.locals(w)));
  };
  return std::make_shared<BInfty>(label, S.space, bound, b, d);
}

// B extended by A through a left action (carrier A + B):
//   b'_{m,1}(b_1..b_m, a) = beta_{m+1}(b_1..b_m, a),
//   b'_{m,1}(a_1, b_1..b_{m-1}, a_2) = a_1 . beta_m(b_1..b_{m-1}, a_2),
// and for a right action the mirror images
//   b'_{1,m}(a, b'_1..b'_m) = beta'_{m+1}(a, b'_1..b'_m),
//   b'_{1,m}(a_1, b'_1..b'_{m-1}, a_2) = beta'_m(a_1, b'_1..b'_{m-1}) . a_2.
inline ExtensionResult extend_by_algebra(const ActionData& act, const AlgebraPresentation& A,
                                         const std::string& label = "") {
  if (act.kind() != ActionKind::algebra) throw Error(ErrorKind::ActionAxiomViolation, "algebra action required");
  BInftyPtr B = act.actor();
  const std::string lab = label.empty() ? A.name + " x| " + B->name() : label;
  SumSpace S = direct_sum({A.space, B->carrier_ptr()}, lab);
  auto Ac = std::make_shared<AlgebraPresentation>(A);
  const bool left = act.side() == Side::left;
  auto b = [S, Ac, B, act, left](int m, int n, const Word& w) -> Vec {
    const std::size_t L = w.size();
    if (detail::all_tag(S, w, 0, L, 1)) return S.embed(1, B->b(m, n, S.locals(w)));
    if (detail::all_tag(S, w, 0, L, 0)) return m == 1 && n == 1 ? S.embed(0, Ac->mul(S.local(w[0]), S.local(w[1]))) : Vec{};
    if (left) {
      if (n != 1) return {};
      const int a2 = S.local(w[L - 1]);
      if (S.tag(w[L - 1]) != 0) return {};
      if (detail::all_tag(S, w, 0, L - 1, 1)) return S.embed(0, act.apply(S.locals(slice(w, 0, L - 1)), a2));
      if (S.tag(w[0]) == 0 && detail::all_tag(S, w, 1, L - 1, 1))
        return S.embed(0, Ac->mul(Vec(S.local(w[0])), act.apply(S.locals(slice(w, 1, L - 1)), a2)));
      return {};
    }
    if (m != 1 || S.tag(w[0]) != 0) return {};
    const int a1 = S.local(w[0]);
    if (detail::all_tag(S, w, 1, L, 1)) return S.embed(0, act.apply(S.locals(slice(w, 1, L)), a1));
    if (S.tag(w[L - 1]) == 0 && detail::all_tag(S, w, 1, L - 1, 1))
      return S.embed(0, Ac->mul(act.apply(S.locals(slice(w, 1, L - 1)), a1), Vec(S.local(w[L - 1]))));
    return {};
  };
  auto d = [S, Ac, B](int m, const Word& w) -> Vec {
    if (detail::all_tag(S, w, 0, w.size(), 1)) return S.embed(1, B->d(m, S.locals(w)));
    if (m == 1 && S.tag(w[0]) == 0) return S.embed(0, Ac->d(S.local(w[0])));
    return {};
  };
  auto total = std::make_shared<BInfty>(lab, S.space, B->op_bound(), b, d);
  auto sub = algebra_binfty(A, B->op_bound());
  ExtensionResult r{total, S, {}, {}, sub, B};
  r.include = detail::strict_morphism("include", sub, total, [S](int a) { return S.embed(0, Vec(a)); });
  r.project = detail::strict_morphism("project", total, B, [S](int x) { return S.tag(x) == 1 ? Vec(S.local(x)) : Vec{}; });
  return r;
}

// B' extended by B (carrier B' + B) through a left action of B on B':
//   b''_{l+m,n}(b'_1..b'_l, b_1..b_m, b'_{l+1}..b'_{l+n})
//     = sum_p b'_{l,p}(b'_1..b'_l, beta_{m+1}(b_1..b_m, (b'_{l+1}..b'_{l+n}))),
// with beta extended to words of B' as a coalgebra action.
inline ExtensionResult extend_by_binfty(const ActionData& act, const std::string& label = "") {
  if (act.kind() != ActionKind::bb || !act.target()->binfty || act.side() != Side::left)
    throw Error(ErrorKind::ActionAxiomViolation, "left action on a B-infinity algebra required");
  BInftyPtr B = act.actor();
  BInftyPtr Bp = act.target()->binfty;
  const std::string lab = label.empty() ? Bp->name() + " x| " + B->name() : label;
  SumSpace S = direct_sum({Bp->carrier_ptr(), B->carrier_ptr()}, lab);
  auto b = [S, B, Bp, act](int m, int n, const Word& w) -> Vec {
    const std::size_t L = w.size();
    if (detail::all_tag(S, w, 0, L, 1)) return S.embed(1, B->b(m, n, S.locals(w)));
    if (!detail::all_tag(S, w, static_cast<std::size_t>(m), L, 0)) return {};
    std::size_t l = 0;
    while (l < static_cast<std::size_t>(m) && S.tag(w[l]) == 0) ++l;
    if (!detail::all_tag(S, w, l, static_cast<std::size_t>(m), 1)) return {};
    Word left = S.locals(slice(w, 0, l));
    Word bs = S.locals(slice(w, l, static_cast<std::size_t>(m)));
    Word right = S.locals(slice(w, static_cast<std::size_t>(m), L));
    if (bs.empty()) return S.embed(0, Bp->b(m, n, S.locals(w)));
    Vec out;
    for (const auto& [y, c] : act_on_word(act, bs, right, Bp->carrier()))
      out.add(Bp->b(static_cast<int>(l), static_cast<int>(y.size()), concat(left, y)), c);
    return S.embed(0, out);
  };
  auto d = [S, B, Bp](int m, const Word& w) -> Vec {
    if (detail::all_tag(S, w, 0, w.size(), 1)) return S.embed(1, B->d(m, S.locals(w)));
    if (detail::all_tag(S, w, 0, w.size(), 0)) return S.embed(0, Bp->d(m, S.locals(w)));
    return {};
  };
  auto total = std::make_shared<BInfty>(lab, S.space, std::min(B->op_bound(), Bp->op_bound()), b, d);
  ExtensionResult r{total, S, {}, {}, Bp, B};
  r.include = detail::strict_morphism("include", Bp, total, [S](int x) { return S.embed(0, Vec(x)); });
  r.project = detail::strict_morphism("project", total, B, [S](int x) { return S.tag(x) == 1 ? Vec(S.local(x)) : Vec{}; });
  return r;
}

// Carrier A + B' + B for a left action of B and a right action of B' on A.
// Besides the pure parts, the nonzero families are
//   (b.., a)            -> beta(b.., a)
//   (a, b'..)           -> beta'(a, b'..)
//   (a1, b.., b'.., a2) -> (-1)^{|b..||b'..|} beta'(a1, b'..) . beta(b.., a2)
// where the last one has m = 1 + #b and n = #b' + 1.
inline ExtensionResult extend_two_sided(const ActionData& left, const ActionData& right, const AlgebraPresentation& A,
                                        const ActionProbeSet* commutation_probes = nullptr,
                                        const std::vector<std::vector<int>>& right_strata = {},
                                        const std::string& label = "") {
  if (left.side() != Side::left || right.side() != Side::right || left.kind() != ActionKind::algebra ||
      right.kind() != ActionKind::algebra)
    throw Error(ErrorKind::ActionAxiomViolation, "expects a left and a right algebra action");
  if (commutation_probes) {
    auto c = check_commutation(left, right, *commutation_probes, right_strata);
    if (!c.passed) throw Error(ErrorKind::ActionsDoNotCommute, c.witness ? c.witness->inputs : c.id);
  }
  BInftyPtr B = left.actor();
  BInftyPtr Bp = right.actor();
  const std::string lab = label.empty() ? A.name + " x| (" + Bp->name() + " x " + B->name() + ")" : label;
  SumSpace S = direct_sum({A.space, Bp->carrier_ptr(), B->carrier_ptr()}, lab);
  auto Ac = std::make_shared<AlgebraPresentation>(A);
  auto b = [S, Ac, B, Bp, left, right](int m, int n, const Word& w) -> Vec {
    const std::size_t L = w.size();
    for (int t : {1, 2})
      if (detail::all_tag(S, w, 0, L, t)) return S.embed(t, (t == 1 ? Bp : B)->b(m, n, S.locals(w)));
    if (detail::all_tag(S, w, 0, L, 0)) return m == 1 && n == 1 ? S.embed(0, Ac->mul(S.local(w[0]), S.local(w[1]))) : Vec{};
    const int tl = S.tag(w[L - 1]);
    const int tf = S.tag(w[0]);
    if (tl == 0 && n == 1 && detail::all_tag(S, w, 0, L - 1, 2))
      return S.embed(0, left.apply(S.locals(slice(w, 0, L - 1)), S.local(w[L - 1])));
    if (tf == 0 && m == 1 && detail::all_tag(S, w, 1, L, 1))
      return S.embed(0, right.apply(S.locals(slice(w, 1, L)), S.local(w[0])));
    if (tf == 0 && tl == 0 && L >= 3) {
      const std::size_t i = static_cast<std::size_t>(m) - 1;  // number of b's
      if (!detail::all_tag(S, w, 1, 1 + i, 2) || !detail::all_tag(S, w, 1 + i, L - 1, 1)) return {};
      Word bs = S.locals(slice(w, 1, 1 + i));
      Word bps = S.locals(slice(w, 1 + i, L - 1));
      Vec r = Ac->mul(right.apply(bps, S.local(w[0])), left.apply(bs, S.local(w[L - 1])));
      r *= koszul_pair(word_degree(*B, bs), word_degree(*Bp, bps));
      return S.embed(0, r);
    }
    return {};
  };
  auto d = [S, Ac, B, Bp](int m, const Word& w) -> Vec {
    for (int t : {1, 2})
      if (detail::all_tag(S, w, 0, w.size(), t)) return S.embed(t, (t == 1 ? Bp : B)->d(m, S.locals(w)));
    if (m == 1 && S.tag(w[0]) == 0) return S.embed(0, Ac->d(S.local(w[0])));
    return {};
  };
  auto total = std::make_shared<BInfty>(lab, S.space, std::min(B->op_bound(), Bp->op_bound()), b, d);
  auto sub = algebra_binfty(A, total->op_bound());
  auto quot = product_binfty({Bp, B}, Bp->name() + " x " + B->name());
  ExtensionResult r{total, S, {}, {}, sub, quot};
  r.include = detail::strict_morphism("include", sub, total, [S](int a) { return S.embed(0, Vec(a)); });
  r.project = detail::strict_morphism("project", total, quot, [S](int x) {
    return S.tag(x) == 0 ? Vec{} : Vec(x - S.offsets[1]);
  });
  return r;
}

// The same structure in two steps: B' extended by A through the right action,
// then B acting on that by its action on A and trivially on B'.
inline ExtensionResult extend_two_step(const ActionData& left, const ActionData& right, const AlgebraPresentation& A) {
  ExtensionResult E1 = extend_by_algebra(right, A);
  BInftyPtr B = left.actor();
  auto T = std::make_shared<Target>();
  T->name = E1.total->name();
  T->space = E1.total->carrier_ptr();
  T->binfty = E1.total;
  SumSpace S1 = E1.carrier;
  auto fn = [left, S1](const Word& bs, int x) -> Vec {
    if (S1.tag(x) != 0) return {};
    return S1.embed(0, left.apply(bs, S1.local(x)));
  };
  ActionData induced("induced(" + left.name() + ")", Side::left, ActionKind::bb, B, T, left.max_len(), fn);
  return extend_by_binfty(induced);
}

// Per-degree dimension count dim(total) = dim(sub) + dim(quotient).
inline CheckResult check_short_exact(const ExtensionResult& r) {
  CheckResult c(r.total->name() + ".exact", "ShortExact");
  std::map<int, int> tot, parts;
  const GradedSpace& T = r.total->carrier();
  for (int i = 0; i < T.dim(); ++i) ++tot[T.degree(i)];
  for (const auto* s : {&r.sub->carrier(), &r.quotient->carrier()})
    for (int i = 0; i < s->dim(); ++i) ++parts[s->degree(i)];
  c.probes = static_cast<long>(tot.size());
  if (tot != parts) {
    std::string a, b;
    for (auto& [d, n] : tot) a += std::to_string(d) + ":" + std::to_string(n) + " ";
    for (auto& [d, n] : parts) b += std::to_string(d) + ":" + std::to_string(n) + " ";
    c.fail({"dimensions per degree", a, b, ""});
  }
  // include then project vanishes
  for (int i = 0; i < r.sub->carrier().dim(); ++i) {
    Vec img;
    for (const auto& [x, q] : r.include.component(Word{i})) img.add(r.project.component(Word{x}), q);
    if (!img.is_zero()) c.fail({r.sub->carrier().name(i), format_vec(r.quotient->carrier(), img), "0", ""});
  }
  return c;
}

// Compares b and d of two structures on the same carrier over the probes.
inline CheckResult compare_structures(const BInfty& X, const BInfty& Y, const ProbeSet& ps, const std::string& id) {
  CheckResult r(id, "TableEquality");
  const GradedSpace& S = X.carrier();
  detail::for_probes(ps, 1, std::min(X.op_bound(), Y.op_bound()), r, [&](const Word& t) {
    if (!r.passed) return;
    const int L = static_cast<int>(t.size());
    Vec dx = X.d(L, t), dy = Y.d(L, t);
    if (dx != dy) {
      r.fail(detail::make_witness(S, "d" + witness_inputs(S, t, {}), dx, dy));
      return;
    }
    for (int m = 1; m < L; ++m) {
      Vec bx = X.b(m, L - m, t), by = Y.b(m, L - m, t);
      if (bx != by) {
        r.fail(detail::make_witness(S, "b" + witness_inputs(S, t, {static_cast<std::size_t>(m)}), bx, by));
        return;
      }
    }
  });
  return r;
}

}  // namespace binfty
