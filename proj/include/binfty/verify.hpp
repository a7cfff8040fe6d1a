#pragma once

#include <functional>
#include <string>
#include <vector>

#include "binfty/binfty.hpp"
#include "binfty/probes.hpp"
#include "binfty/report.hpp"

namespace binfty {

// Basis tuples of each length, restricted to those a structure can answer.
// Lengths above `bound` are counted as unsound and never evaluated.
struct ProbeSet {
  std::vector<std::vector<int>> strata;
  ProbePlan plan;
};

inline ProbeSet default_probes(const GradedSpace& s, const ProbePlan& plan) { return ProbeSet{{full_pool(s)}, plan}; }

inline std::string witness_inputs(const GradedSpace& s, const Word& t, const std::vector<std::size_t>& cuts) {
  std::string out;
  std::size_t c = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    while (c < cuts.size() && cuts[c] == i) {
      out += i == 0 ? "| " : " | ";
      ++c;
    }
    if (i && !(c > 0 && cuts[c - 1] == i)) out += ", ";
    out += s.name(t[i]);
  }
  return "(" + out + ")";
}

namespace detail {

// Runs `body` on every probe tuple of length in [min_len, max_len], counting
// tuples longer than `bound` or rejected by `B.safe` as unsound skips.
inline void for_probes(const ProbeSet& ps, int min_len, int bound, CheckResult& r,
                       const std::function<void(const Word&)>& body, const BInfty* B = nullptr) {
  ProbeRng rng(ps.plan.seed);
  for (int len = min_len; len <= ps.plan.max_len; ++len) {
    auto tuples = probe_tuples(ps.strata, len, ps.plan, rng);
    if (len > bound) {
      r.skipped_unsafe += static_cast<long>(tuples.size());
      continue;
    }
    for (const Word& t : tuples) {
      if (B && !B->safe(t)) {
        ++r.skipped_unsafe;
        continue;
      }
      ++r.probes;
      body(t);
    }
  }
}

inline Witness make_witness(const GradedSpace& s, const std::string& inputs, const Vec& lhs, const Vec& rhs) {
  Vec diff = lhs - rhs;
  return Witness{inputs, format_vec(s, lhs), format_vec(s, rhs), format_vec(s, diff)};
}

}  // namespace detail

// Weight-1 part of (u*v)*w versus u*(v*w), over all splittings of each probe.
inline CheckResult check_associativity(const BInfty& B, const ProbeSet& ps) {
  CheckResult r{B.name() + ".associativity", "Associativity"};
  const GradedSpace& S = B.carrier();
  detail::for_probes(ps, 3, B.op_bound(), r, [&](const Word& t) {
    const std::size_t L = t.size();
    for (std::size_t a = 1; a + 2 <= L; ++a)
      for (std::size_t b = a + 1; b + 1 <= L; ++b) {
        Word u = slice(t, 0, a), v = slice(t, a, b), w = slice(t, b, L);
        Vec lhs, rhs;
        for (const auto& [X, c] : star(B, u, v)) lhs.add(B.b(static_cast<int>(X.size()), static_cast<int>(w.size()), concat(X, w)), c);
        for (const auto& [Y, c] : star(B, v, w)) rhs.add(B.b(static_cast<int>(u.size()), static_cast<int>(Y.size()), concat(u, Y)), c);
        if (lhs != rhs) {
          r.fail(detail::make_witness(S, witness_inputs(S, t, {a, b}), lhs, rhs));
          return;
        }
      }
  }, &B);
  return r;
}

// Weight-1 part of D(u*v) = D(u)*v + (-1)^{|u|} u*D(v).
inline CheckResult check_leibniz(const BInfty& B, const ProbeSet& ps) {
  CheckResult r{B.name() + ".leibniz", "Leibnitz"};
  const GradedSpace& S = B.carrier();
  detail::for_probes(ps, 2, B.op_bound(), r, [&](const Word& t) {
    const std::size_t L = t.size();
    for (std::size_t a = 1; a < L; ++a) {
      Word u = slice(t, 0, a), v = slice(t, a, L);
      Vec lhs;
      for (const auto& [X, c] : star(B, u, v)) lhs.add(B.d(static_cast<int>(X.size()), X), c);
      Vec rhs;
      for (const auto& [Y, c] : d_hat_all(B, u)) rhs.add(B.b(static_cast<int>(Y.size()), static_cast<int>(v.size()), concat(Y, v)), c);
      const int su = word_degree(B, u);
      for (const auto& [Y, c] : d_hat_all(B, v))
        rhs.add(B.b(static_cast<int>(u.size()), static_cast<int>(Y.size()), concat(u, Y)), c * koszul_pair(1, su));
      if (lhs != rhs) {
        r.fail(detail::make_witness(S, witness_inputs(S, t, {a}), lhs, rhs));
        return;
      }
    }
  }, &B);
  return r;
}

// Sum over l + m = n + 1 of d_l(d-hat_m(t)) vanishes.
inline CheckResult check_ainfty(const BInfty& B, const ProbeSet& ps) {
  CheckResult r{B.name() + ".ainfty", "AInfty"};
  const GradedSpace& S = B.carrier();
  detail::for_probes(ps, 1, B.op_bound(), r, [&](const Word& t) {
    Vec lhs = apply_d(B, d_hat_all(B, t));
    if (!lhs.is_zero()) r.fail(detail::make_witness(S, witness_inputs(S, t, {}), lhs, Vec{}));
  }, &B);
  return r;
}

inline std::vector<CheckResult> verify_binfty(const BInfty& B, const ProbeSet& ps) {
  return {check_associativity(B, ps), check_leibniz(B, ps), check_ainfty(B, ps)};
}

// [x, y] = b_{1,1}(x, y) + (-1)^{|x||y| + 1} b_{1,1}(y, x).
inline Vec lie_bracket(const BInfty& L, const Vec& x, const Vec& y) {
  auto dx = homogeneous_degree(L.carrier(), x), dy = homogeneous_degree(L.carrier(), y);
  if ((!x.is_zero() && !dx) || (!y.is_zero() && !dy)) throw Error(ErrorKind::NotHomogeneous, "bracket of mixed degrees");
  if (x.is_zero() || y.is_zero()) return {};
  Vec out = eval_b(L, 1, 1, {x, y});
  out.add(eval_b(L, 1, 1, {y, x}), koszul_pair(1, static_cast<long>(*dx) * *dy + 1));
  return out;
}

inline Vec mc_defect(const BInfty& B, const Vec& b0) {
  Vec out;
  for (const auto& [i, c] : b0) out.add(B.d(1, Word{i}), c);
  out += eval_b(B, 1, 1, {b0, b0});
  return out;
}

inline bool mc_check(const BInfty& B, const Vec& b0) { return mc_defect(B, b0).is_zero(); }

// d^{b0}_m(x) = d_m(x) + b_{1,m}(b0, x) + (-1)^{|x|+1} b_{m,1}(x, b0).
inline BInftyPtr deform_mc(const BInftyPtr& B, const Vec& b0, const std::string& name = "") {
  for (const auto& [i, c] : b0)
    if (B->carrier().degree(i) != 1) throw Error(ErrorKind::NotHomogeneous, "MC element must have degree 1");
  if (!mc_check(*B, b0))
    throw Error(ErrorKind::NotMaurerCartan, "d1(b0) + b11(b0,b0) = " + format_vec(B->carrier(), mc_defect(*B, b0)));
  auto d = [B, b0](int m, const Word& x) {
    Vec out = B->d(m, x);
    const int sx = word_degree(*B, x);
    for (const auto& [i, c] : b0) {
      out.add(B->b(1, m, concat(Word{i}, x)), c);
      out.add(B->b(m, 1, concat(x, Word{i})), c * koszul_pair(1, sx + 1));
    }
    return out;
  };
  auto b = [B](int m, int n, const Word& w) { return B->b(m, n, w); };
  auto out = std::make_shared<BInfty>(name.empty() ? B->name() + "^mc" : name, B->carrier_ptr(), B->op_bound(), b, d);
  out->set_safety(B->safety());
  return out;
}

// Components f_m : B^(x)m -> B' of degree 0, cogenerating a coalgebra map.
struct BInftyMorphism {
  std::string name;
  BInftyPtr source;
  BInftyPtr target;
  std::function<Vec(const Word&)> component;  // arity = word length
};

// Image of a word under the cogenerated coalgebra map.
inline Tensor lift_morphism(const BInftyMorphism& f, const Word& w) {
  Tensor out;
  std::function<void(std::size_t, Tensor)> go = [&](std::size_t pos, Tensor acc) {
    if (acc.is_zero()) return;
    if (pos == w.size()) {
      out += acc;
      return;
    }
    for (std::size_t e = pos + 1; e <= w.size(); ++e) {
      Vec img = f.component(slice(w, pos, e));
      if (!img.is_zero()) go(e, append_vec(acc, img));
    }
  };
  Tensor start;
  start.add(Word{}, 1);
  go(0, start);
  return out;
}

inline std::vector<CheckResult> verify_morphism(const BInftyMorphism& f, const ProbeSet& ps) {
  const BInfty& S = *f.source;
  const BInfty& T = *f.target;
  const int bound = std::min(S.op_bound(), T.op_bound());
  CheckResult mult{f.name + ".product", "MorphismProduct"};
  detail::for_probes(ps, 2, bound, mult, [&](const Word& t) {
    for (std::size_t a = 1; a < t.size(); ++a) {
      Word u = slice(t, 0, a), v = slice(t, a, t.size());
      Vec lhs;
      for (const auto& [X, c] : star(S, u, v)) lhs.add(f.component(X), c);
      Vec rhs;
      Tensor fu = lift_morphism(f, u), fv = lift_morphism(f, v);
      for (const auto& [Y, c] : fu)
        for (const auto& [Z, e] : fv)
          rhs.add(T.b(static_cast<int>(Y.size()), static_cast<int>(Z.size()), concat(Y, Z)), c * e);
      if (lhs != rhs) {
        mult.fail(detail::make_witness(T.carrier(), witness_inputs(S.carrier(), t, {a}), lhs, rhs));
        return;
      }
    }
  }, &S);
  CheckResult diff{f.name + ".differential", "MorphismDifferential"};
  detail::for_probes(ps, 1, bound, diff, [&](const Word& t) {
    Vec lhs;
    for (const auto& [X, c] : d_hat_all(S, t)) lhs.add(f.component(X), c);
    Vec rhs = apply_d(T, lift_morphism(f, t));
    if (lhs != rhs) diff.fail(detail::make_witness(T.carrier(), witness_inputs(S.carrier(), t, {}), lhs, rhs));
  }, &S);
  return {mult, diff};
}

}  // namespace binfty
