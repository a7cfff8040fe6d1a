#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "binfty/algebra.hpp"
#include "binfty/extensions.hpp"

namespace binfty {

// Hochschild structures of A and B side by side, the carrier g + h of pairs,
// the diagram algebra D and its Hochschild structure. Everything is cut at
// arity N; min_arity 0 keeps the constant cochains.
struct MorphismHochschild {
  AlgebraMorphism f;
  int N = 4;
  HochschildComplex CA;
  HochschildComplex CB;
  BInftyPtr pair;  // product of C(A) and C(B) on g + h
  SumSpace carrier;
  HomSpace psi;    // Hom(+ (sA)^m, sB), where the membership defect lives
  DiagramAlgebra D;
  HochschildComplex CD;
};

inline MorphismHochschild morphism_hochschild(const AlgebraMorphism& f, int N, int min_arity = 0) {
  MorphismHochschild M;
  M.f = f;
  M.N = N;
  M.CA = hochschild_binfty(f.dom, N, min_arity);
  M.CB = hochschild_binfty(f.cod, N, min_arity);
  M.pair = product_binfty({M.CA.structure, M.CB.structure}, "C(" + f.dom.name + ") x C(" + f.cod.name + ")");
  M.carrier = direct_sum({M.CA.structure->carrier_ptr(), M.CB.structure->carrier_ptr()}, M.pair->name());
  M.psi = make_hom_space(M.CA.sA, M.CB.sA, min_arity, N, "Psi");
  M.D = diagram_algebra(f);
  M.CD = hochschild_binfty(M.D.base, N, min_arity);
  return M;
}

// f o alpha - beta o f^(x)m for x = alpha + beta in g + h.
inline Vec h_defect(const MorphismHochschild& M, const Vec& x) {
  const GradedSpace& G = *M.CA.endo.hom.space;
  const GradedSpace& H = *M.CB.endo.hom.space;
  const GradedSpace& P = *M.psi.space;
  std::map<int, std::vector<std::pair<int, Rational>>> pre;  // b -> (a, f(a)_b)
  for (int a = 0; a < M.f.dom.dim(); ++a)
    for (const auto& [b, c] : M.f(a)) pre[b].push_back({a, c});
  Vec out;
  for (const auto& [i, c] : x) {
    const int t = M.carrier.tag(i), loc = M.carrier.local(i);
    if (t == 0) {
      const Key& k = G.key(loc);
      for (const auto& [b, q] : M.f(k[0])) {
        Key pk = k;
        pk[0] = b;
        if (auto j = P.find(pk)) out.add(*j, c * q);
      }
      continue;
    }
    const Key& k = H.key(loc);
    std::function<void(std::size_t, Key, Rational)> go = [&](std::size_t pos, Key acc, Rational q) {
      if (pos == k.size()) {
        if (auto j = P.find(acc)) out.add(*j, -c * q);
        return;
      }
      auto it = pre.find(k[pos]);
      if (it == pre.end()) return;
      for (const auto& [a, e] : it->second) {
        Key nk = acc;
        nk.push_back(a);
        go(pos + 1, nk, q * e);
      }
    };
    go(1, Key{k[0]}, Rational(1));
  }
  return out;
}

inline bool h_membership(const MorphismHochschild& M, const Vec& x) { return h_defect(M, x).is_zero(); }

// Basis of H in each s-level degree: kernel of the defect map, canonical
// echelon order.
inline std::map<int, std::vector<Vec>> h_basis(const MorphismHochschild& M) {
  const GradedSpace& S = *M.carrier.space;
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < S.dim(); ++i) by_deg[S.degree(i)].push_back(i);
  std::map<int, std::vector<Vec>> out;
  for (const auto& [e, idx] : by_deg) {
    SparseMatrix m(static_cast<std::size_t>(M.psi.space->dim()), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (const auto& [r, q] : h_defect(M, Vec(idx[c]))) m.add(static_cast<std::size_t>(r), c, q);
    for (const auto& k : rank_kernel(m).kernel_basis) {
      Vec v;
      for (const auto& [c, q] : k) v.add(idx[c], q);
      out[e].push_back(v);
    }
  }
  return out;
}

// tau on all of g + h, linear; it is a B-infinity morphism only on H.
//   tau(alpha)(a_1..a_m) = alpha(a_1..a_m)
//   tau(beta)(b_1..b_n) = beta(b_1..b_n)
//   tau(beta)(b_1..b_p, b', a_1..a_q) = (beta(b_1..b_p, b', f(a_1)..f(a_q)))'
// with b' read through its B-copy inside beta.
inline Vec tau_linear(const MorphismHochschild& M, const Vec& x) {
  const GradedSpace& G = *M.CA.endo.hom.space;
  const GradedSpace& H = *M.CB.endo.hom.space;
  const GradedSpace& C = *M.CD.endo.hom.space;
  const int ob = M.D.offset_b, op = M.D.offset_bp;
  std::map<int, std::vector<std::pair<int, Rational>>> pre;
  for (int a = 0; a < M.f.dom.dim(); ++a)
    for (const auto& [b, c] : M.f(a)) pre[b].push_back({a, c});
  Vec out;
  for (const auto& [i, c] : x) {
    const int t = M.carrier.tag(i), loc = M.carrier.local(i);
    if (t == 0) {
      if (auto j = C.find(G.key(loc))) out.add(*j, c);
      continue;
    }
    const Key& k = H.key(loc);
    Key pure{k[0] + ob};
    for (std::size_t s = 1; s < k.size(); ++s) pure.push_back(k[s] + ob);
    if (auto j = C.find(pure)) out.add(*j, c);
    const std::size_t n = k.size() - 1;
    for (std::size_t p = 0; p < n; ++p) {
      Key head{k[0] + op};
      for (std::size_t s = 1; s <= p; ++s) head.push_back(k[s] + ob);
      head.push_back(k[p + 1] + op);
      std::function<void(std::size_t, Key, Rational)> go = [&](std::size_t pos, Key acc, Rational q) {
        if (pos == k.size()) {
          if (auto j = C.find(acc)) out.add(*j, c * q);
          return;
        }
        auto it = pre.find(k[pos]);
        if (it == pre.end()) return;
        for (const auto& [a, e] : it->second) {
          Key nk = acc;
          nk.push_back(a);
          go(pos + 1, nk, q * e);
        }
      };
      go(p + 2, head, Rational(1));
    }
  }
  return out;
}

inline Vec tau_eval(const MorphismHochschild& M, const Vec& x) {
  if (!h_membership(M, x)) throw Error(ErrorKind::NotInSubalgebraH, format_vec(*M.carrier.space, x));
  return tau_linear(M, x);
}

// (Tau1) on b_{1,n-1} and (Tau2) on d_1, d_2 over tuples of H basis vectors.
inline std::vector<CheckResult> verify_tau_morphism(const MorphismHochschild& M, const ProbePlan& plan) {
  if (!is_injective(M.f)) throw Error(ErrorKind::InjectivityRequired, M.f.name + " is not injective");
  const BInfty& src = *M.pair;
  const BInfty& tgt = *M.CD.structure;
  std::vector<Vec> pool;
  for (const auto& [e, vs] : h_basis(M))
    for (const auto& v : vs) pool.push_back(v);
  std::vector<Vec> images;
  for (const auto& v : pool) images.push_back(tau_eval(M, v));
  std::vector<int> ids(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) ids[i] = static_cast<int>(i);
  CheckResult t1(M.f.name + ".tau.brace", "Tau1");
  CheckResult t2(M.f.name + ".tau.differential", "Tau2");
  const GradedSpace& C = tgt.carrier();
  auto inputs = [&](const Word& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + format_vec(*M.carrier.space, pool[static_cast<std::size_t>(w[i])]);
    return s + ")";
  };
  ProbeRng rng(plan.seed);
  // d_1 on every basis vector: tau is a chain map
  for (std::size_t i = 0; i < pool.size(); ++i) {
    ++t2.probes;
    Vec l = tau_linear(M, eval_d(src, {pool[i]})), r = eval_d(tgt, {images[i]});
    if (l != r) t2.fail(detail::make_witness(C, "d_1" + inputs(Word{static_cast<int>(i)}), l, r));
  }
  for (int len = 2; len <= std::min(plan.max_len, M.N); ++len) {
    for (const Word& w : probe_tuples({ids}, len, plan, rng)) {
      std::vector<Vec> xs, ys;
      for (int i : w) {
        xs.push_back(pool[static_cast<std::size_t>(i)]);
        ys.push_back(images[static_cast<std::size_t>(i)]);
      }
      ++t1.probes;
      Vec l = tau_linear(M, eval_b(src, 1, len - 1, xs)), r = eval_b(tgt, 1, len - 1, ys);
      if (l != r) t1.fail(detail::make_witness(C, "b_{1," + std::to_string(len - 1) + "}" + inputs(w), l, r));
      if (len == 2) {
        ++t2.probes;
        Vec l2 = tau_linear(M, eval_d(src, xs)), r2 = eval_d(tgt, ys);
        if (l2 != r2) t2.fail(detail::make_witness(C, "d_2" + inputs(w), l2, r2));
      }
    }
  }
  return {t1, t2};
}

// A complex given by a basis of each degree piece inside an ambient space,
// with the differential computed in the ambient space. Degrees here are
// Hochschild degrees (s-level degree + 1).
struct Subcomplex {
  std::map<int, std::vector<Vec>> basis;
  std::function<Vec(const Vec&)> d;
  int ambient_dim = 0;
};

namespace detail {

inline SparseRow to_row(const Vec& v) {
  SparseRow r;
  for (const auto& [i, c] : v) r[static_cast<std::size_t>(i)] = c;
  return r;
}

inline std::vector<SparseRow> image_rows(const Subcomplex& K, int n) {
  std::vector<SparseRow> rows;
  auto it = K.basis.find(n);
  if (it == K.basis.end()) return rows;
  for (const auto& v : it->second) rows.push_back(to_row(K.d(v)));
  return rows;
}

}  // namespace detail

// Largest arity a cochain of s-level degree e can have when every basis
// degree of A lies in [lo, hi] with hi <= 0; unbounded otherwise.
inline void require_sound_window(const AlgebraPresentation& A, int N, int top) {
  int lo = 0, hi = 0;
  for (int i = 0; i < A.dim(); ++i) {
    lo = std::min(lo, A.space->degree(i));
    hi = std::max(hi, A.space->degree(i));
  }
  if (hi > 0) throw Error(ErrorKind::TruncationUnsound, A.name + " has positive degrees; no arity cutoff is exact");
  if (top + 2 - lo > N)
    throw Error(ErrorKind::TruncationUnsound, "degree " + std::to_string(top) + " of " + A.name + " needs arity " +
                                                  std::to_string(top + 2 - lo) + " > N = " + std::to_string(N));
}

inline Subcomplex hochschild_subcomplex(const HochschildComplex& C) {
  Subcomplex K;
  const GradedSpace& S = C.structure->carrier();
  for (int i = 0; i < S.dim(); ++i) K.basis[S.degree(i) + 1].push_back(Vec(i));
  BInftyPtr B = C.structure;
  K.d = [B](const Vec& v) { return eval_d(*B, {v}); };
  K.ambient_dim = S.dim();
  return K;
}

// H inside g + h with the differential of the pair structure.
inline Subcomplex h_subcomplex(const MorphismHochschild& M) {
  Subcomplex K;
  for (auto& [e, vs] : h_basis(M)) K.basis[e + 1] = vs;
  BInftyPtr B = M.pair;
  K.d = [B](const Vec& v) { return eval_d(*B, {v}); };
  K.ambient_dim = M.carrier.space->dim();
  return K;
}

// dim H^n = (dim K_n - rank d_n) - rank d_{n-1}, exact over Q.
inline std::map<int, int> cohomology_dims(const Subcomplex& K, int lo, int hi) {
  std::map<int, int> out;
  const auto cols = static_cast<std::size_t>(K.ambient_dim);
  for (int n = lo; n <= hi; ++n) {
    auto it = K.basis.find(n);
    const std::size_t dim = it == K.basis.end() ? 0 : it->second.size();
    const std::size_t rk = rank_of_rows(detail::image_rows(K, n), cols);
    const std::size_t rk_prev = rank_of_rows(detail::image_rows(K, n - 1), cols);
    out[n] = static_cast<int>(dim - rk - rk_prev);
  }
  return out;
}

// Cocycle representatives of a basis of H^n: kernel vectors of d on K_n in
// echelon order, kept when they are independent modulo coboundaries and the
// earlier choices.
inline std::vector<Vec> cohomology_representatives(const Subcomplex& K, int n) {
  std::vector<Vec> reps;
  auto it = K.basis.find(n);
  if (it == K.basis.end()) return reps;
  const auto& basis = it->second;
  const auto cols = static_cast<std::size_t>(K.ambient_dim);
  SparseMatrix m(cols, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (const auto& [r, q] : K.d(basis[c])) m.add(static_cast<std::size_t>(r), c, q);
  std::vector<SparseRow> span = detail::image_rows(K, n - 1);
  std::size_t rk = rank_of_rows(span, cols);
  for (const auto& k : rank_kernel(m).kernel_basis) {
    Vec z;
    for (const auto& [c, q] : k) z.add(basis[c], q);
    span.push_back(detail::to_row(z));
    const std::size_t r2 = rank_of_rows(span, cols);
    if (r2 > rk) {
      rk = r2;
      reps.push_back(z);
    } else {
      span.pop_back();
    }
  }
  return reps;
}

inline bool is_coboundary(const Subcomplex& K, int n, const Vec& v) {
  return in_row_span(detail::image_rows(K, n - 1), detail::to_row(v), static_cast<std::size_t>(K.ambient_dim));
}

// Gerstenhaber identities on cohomology classes in Hochschild degrees
// [0, top]: cup from d_2 of the deformed structure, bracket = commutator of
// b_{1,1}. Every identity is tested modulo coboundaries.
inline std::vector<CheckResult> gerstenhaber_on_cohomology(const HochschildComplex& C, int top) {
  require_sound_window(C.algebra, C.endo.hom.max_arity, top);
  const BInfty& B = *C.structure;
  const GradedSpace& S = B.carrier();
  Subcomplex K = hochschild_subcomplex(C);
  struct Cls {
    Vec v;
    int n;
    std::string label;
  };
  std::vector<Cls> cls;
  for (int n = 0; n <= top; ++n) {
    auto reps = cohomology_representatives(K, n);
    for (std::size_t i = 0; i < reps.size(); ++i) cls.push_back({reps[i], n, "HH" + std::to_string(n) + "[" + std::to_string(i) + "]"});
  }
  // in the Hochschild grading x u y = (-1)^{|x|} d_2(x, y), |x| the s-level degree
  auto cup = [&](const Vec& x, const Vec& y) {
    Vec out = eval_d(B, {x, y});
    if (auto e = homogeneous_degree(S, x)) out *= koszul_pair(1, *e);
    return out;
  };
  auto br = [&](const Vec& x, const Vec& y) { return lie_bracket(B, x, y); };
  const std::string id = "C(" + C.algebra.name + ")";
  CheckResult cc(id + ".cup.cocycle", "CupCocycle");
  CheckResult cm(id + ".cup.commutative", "CupCommutative");
  CheckResult bc(id + ".bracket.cocycle", "BracketCocycle");
  CheckResult ba(id + ".bracket.antisymmetric", "BracketAntisymmetric");
  CheckResult ja(id + ".bracket.jacobi", "Jacobi");
  CheckResult lb(id + ".leibniz", "GerstenhaberLeibniz");
  for (auto* r : {&cc, &cm, &bc, &ba, &ja, &lb}) r->modulus = "coboundaries";
  auto zero_mod = [&](CheckResult& r, int n, const Vec& v, const std::string& in) {
    ++r.probes;
    if (!is_coboundary(K, n, v)) r.fail(detail::make_witness(S, in, v, Vec{}));
  };
  for (const auto& x : cls)
    for (const auto& y : cls) {
      const std::string xy = "(" + x.label + ", " + y.label + ")";
      const long ex = x.n - 1, ey = y.n - 1;
      if (x.n + y.n <= top) {
        Vec p = cup(x.v, y.v);
        ++cc.probes;
        if (!K.d(p).is_zero()) cc.fail(detail::make_witness(S, xy, K.d(p), Vec{}));
        Vec q = p;
        q.add(cup(y.v, x.v), -koszul_pair(x.n, y.n));
        zero_mod(cm, x.n + y.n, q, xy);
      }
      const int nb = x.n + y.n - 1;
      if (nb >= 0 && nb <= top) {
        Vec p = br(x.v, y.v);
        ++bc.probes;
        if (!K.d(p).is_zero()) bc.fail(detail::make_witness(S, xy, K.d(p), Vec{}));
        Vec q = p;
        q.add(br(y.v, x.v), koszul_pair(ex, ey));
        zero_mod(ba, nb, q, xy);
      }
      for (const auto& z : cls) {
        const std::string xyz = "(" + x.label + ", " + y.label + ", " + z.label + ")";
        const long ez = z.n - 1;
        const int nj = x.n + y.n + z.n - 2;
        if (nj >= 0 && nj <= top && y.n + z.n - 1 <= top && x.n + y.n - 1 <= top && z.n + x.n - 1 <= top) {
          Vec j = br(x.v, br(y.v, z.v));
          j *= koszul_pair(ex, ez);
          j.add(br(y.v, br(z.v, x.v)), koszul_pair(ey, ex));
          j.add(br(z.v, br(x.v, y.v)), koszul_pair(ez, ey));
          zero_mod(ja, nj, j, xyz);
        }
        const int nl = x.n + y.n + z.n - 1;
        if (nl >= 0 && nl <= top && y.n + z.n <= top) {
          Vec l = br(x.v, cup(y.v, z.v));
          l.add(cup(br(x.v, y.v), z.v), -1);
          l.add(cup(y.v, br(x.v, z.v)), -koszul_pair(ex, y.n));
          zero_mod(lb, nl, l, xyz);
        }
      }
    }
  return {cc, cm, bc, ba, ja, lb};
}

}  // namespace binfty
