#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binfty/actions.hpp"
#include "binfty/operators.hpp"
#include "binfty/sparse_matrix.hpp"

namespace binfty {

// Finite-dimensional dg associative algebra given by structure constants.
struct AlgebraPresentation {
  std::string name;
  SpacePtr space;
  std::map<std::pair<int, int>, Vec> mult;
  std::map<int, Vec> diff;
  std::optional<int> unit;

  Vec mul(int a, int b) const {
    auto it = mult.find({a, b});
    return it == mult.end() ? Vec{} : it->second;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    Vec out;
    for (const auto& [i, c] : a)
      for (const auto& [j, e] : b) out.add(mul(i, j), c * e);
    return out;
  }
  Vec d(int a) const {
    auto it = diff.find(a);
    return it == diff.end() ? Vec{} : it->second;
  }
  Vec d(const Vec& v) const {
    Vec out;
    for (const auto& [i, c] : v) out.add(d(i), c);
    return out;
  }
  int dim() const { return space->dim(); }
};

struct AlgebraMorphism {
  std::string name;
  AlgebraPresentation dom;
  AlgebraPresentation cod;
  std::map<int, Vec> map;

  Vec operator()(int a) const {
    auto it = map.find(a);
    return it == map.end() ? Vec{} : it->second;
  }
  Vec operator()(const Vec& v) const {
    Vec out;
    for (const auto& [i, c] : v) out.add((*this)(i), c);
    return out;
  }
};

inline TargetPtr algebra_target(const AlgebraPresentation& A) {
  auto t = std::make_shared<Target>();
  t->name = A.name;
  t->space = A.space;
  auto Ac = std::make_shared<AlgebraPresentation>(A);
  t->mult = [Ac](int a, int b) { return Ac->mul(a, b); };
  t->diff = [Ac](int a) { return Ac->d(a); };
  return t;
}

inline std::vector<CheckResult> validate_algebra(const AlgebraPresentation& A) {
  const GradedSpace& S = *A.space;
  const int n = A.dim();
  CheckResult hom(A.name + ".homogeneous", "Homogeneity");
  for (const auto& [ab, v] : A.mult) {
    ++hom.probes;
    for (const auto& [i, c] : v)
      if (S.degree(i) != S.degree(ab.first) + S.degree(ab.second))
        hom.fail({S.name(ab.first) + "*" + S.name(ab.second), format_vec(S, v), "degree " +
                  std::to_string(S.degree(ab.first) + S.degree(ab.second)), ""});
  }
  for (const auto& [a, v] : A.diff) {
    ++hom.probes;
    for (const auto& [i, c] : v)
      if (S.degree(i) != S.degree(a) + 1) hom.fail({"d(" + S.name(a) + ")", format_vec(S, v), "degree " + std::to_string(S.degree(a) + 1), ""});
  }
  CheckResult ass(A.name + ".associative", "Associativity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++ass.probes;
        Vec l = A.mul(A.mul(Vec(a), Vec(b)), Vec(c)), r = A.mul(Vec(a), A.mul(Vec(b), Vec(c)));
        if (l != r) ass.fail(detail::make_witness(S, "(" + S.name(a) + ", " + S.name(b) + ", " + S.name(c) + ")", l, r));
      }
  CheckResult dsq(A.name + ".d-squared", "DifferentialSquare");
  for (int a = 0; a < n; ++a) {
    ++dsq.probes;
    Vec l = A.d(A.d(Vec(a)));
    if (!l.is_zero()) dsq.fail(detail::make_witness(S, "(" + S.name(a) + ")", l, Vec{}));
  }
  CheckResult leib(A.name + ".leibniz", "Leibniz");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++leib.probes;
      Vec l = A.d(A.mul(a, b));
      Vec r = A.mul(A.d(Vec(a)), Vec(b));
      r.add(A.mul(Vec(a), A.d(Vec(b))), koszul_pair(1, S.degree(a)));
      if (l != r) leib.fail(detail::make_witness(S, "(" + S.name(a) + ", " + S.name(b) + ")", l, r));
    }
  std::vector<CheckResult> out{hom, ass, dsq, leib};
  if (A.unit) {
    CheckResult u(A.name + ".unit", "Unit");
    const int e = *A.unit;
    if (S.degree(e) != 0) u.fail({S.name(e), "degree " + std::to_string(S.degree(e)), "degree 0", ""});
    if (!A.d(e).is_zero()) u.fail({"d(" + S.name(e) + ")", format_vec(S, A.d(e)), "0", ""});
    for (int a = 0; a < n; ++a) {
      ++u.probes;
      if (A.mul(e, a) != Vec(a)) u.fail({S.name(e) + "*" + S.name(a), format_vec(S, A.mul(e, a)), S.name(a), ""});
      if (A.mul(a, e) != Vec(a)) u.fail({S.name(a) + "*" + S.name(e), format_vec(S, A.mul(a, e)), S.name(a), ""});
    }
    out.push_back(u);
  }
  return out;
}

inline std::vector<CheckResult> validate_morphism(const AlgebraMorphism& f) {
  const GradedSpace& D = *f.dom.space;
  const GradedSpace& C = *f.cod.space;
  CheckResult deg(f.name + ".degree", "MorphismDegree");
  for (const auto& [a, v] : f.map) {
    ++deg.probes;
    for (const auto& [i, c] : v)
      if (C.degree(i) != D.degree(a)) deg.fail({D.name(a), format_vec(C, v), "degree " + std::to_string(D.degree(a)), ""});
  }
  CheckResult mult(f.name + ".multiplicative", "MorphismProduct");
  for (int a = 0; a < D.dim(); ++a)
    for (int b = 0; b < D.dim(); ++b) {
      ++mult.probes;
      Vec l = f(f.dom.mul(a, b)), r = f.cod.mul(f(a), f(b));
      if (l != r) mult.fail(detail::make_witness(C, "(" + D.name(a) + ", " + D.name(b) + ")", l, r));
    }
  CheckResult chain(f.name + ".chain", "MorphismDifferential");
  for (int a = 0; a < D.dim(); ++a) {
    ++chain.probes;
    Vec l = f(f.dom.d(a)), r = f.cod.d(f(a));
    if (l != r) chain.fail(detail::make_witness(C, "(" + D.name(a) + ")", l, r));
  }
  return {deg, mult, chain};
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.passed) return false;
  return true;
}

inline bool is_injective(const AlgebraMorphism& f) {
  std::vector<SparseRow> rows;
  for (int a = 0; a < f.dom.dim(); ++a) {
    SparseRow r;
    for (const auto& [i, c] : f(a)) r[static_cast<std::size_t>(i)] = c;
    rows.push_back(r);
  }
  return rank_of_rows(rows, static_cast<std::size_t>(f.cod.dim())) == static_cast<std::size_t>(f.dom.dim());
}

// sA: same basis, degrees lowered by one, names prefixed with "s".
inline SpacePtr suspend(const GradedSpace& A, const std::string& label) {
  auto s = std::make_shared<GradedSpace>(label);
  for (int i = 0; i < A.dim(); ++i) s->add("s" + A.name(i), A.degree(i) - 1);
  return s;
}

// mu~(sa, sb) = (-1)^{|a|} s(ab) and d~(sa) = s(da) as a vector of the Hom-space
// Hom(+ (sA)^(x)m, sA). The sum is the Maurer-Cartan element of A.
inline Vec s_level_structure(const AlgebraPresentation& A, const HomSpace& H, bool with_mult = true,
                             bool with_diff = true) {
  Vec out;
  const GradedSpace& S = *A.space;
  if (with_mult)
    for (const auto& [ab, v] : A.mult)
      for (const auto& [c, q] : v)
        if (auto i = H.space->find(Key{c, ab.first, ab.second})) out.add(*i, q * koszul_pair(1, S.degree(ab.first)));
  if (with_diff)
    for (const auto& [a, v] : A.diff)
      for (const auto& [c, q] : v)
        if (auto i = H.space->find(Key{c, a})) out.add(*i, q);
  return out;
}

struct HochschildComplex {
  AlgebraPresentation algebra;
  SpacePtr sA;
  OperatorAlgebra endo;  // undeformed braces on Hom(+ (sA)^m, sA)
  Vec mc;                // mu~ + d~
  BInftyPtr structure;   // deformed by mc
};

// Hochschild B-infinity algebra: braces on cochains of sA deformed by
// mu~ + d~. min_arity 0 keeps the constant cochains needed in degree 0.
inline HochschildComplex hochschild_binfty(const AlgebraPresentation& A, int N, int min_arity = 1) {
  if (!all_passed(validate_algebra(A))) throw Error(ErrorKind::InvalidInput, A.name + " is not a dg associative algebra");
  auto sA = suspend(*A.space, "s" + A.name);
  auto E = build_operator_binfty(sA, OperatorSide::endo, N, std::nullopt, min_arity, "C(" + A.name + ")");
  Vec mc = s_level_structure(A, E.hom);
  auto B = deform_mc(E.structure, mc, "C(" + A.name + ")");
  return HochschildComplex{A, sA, E, mc, B};
}

// Lower triangular 2x2 matrix algebra A + B + B' of f : A -> B:
// (a1 + b1 + b1')(a2 + b2 + b2') = a1 a2 + b1 b2 + (b1' f(a2))' + (b1 b2')'.
struct DiagramAlgebra {
  AlgebraPresentation base;
  int offset_b = 0;
  int offset_bp = 0;
};

inline DiagramAlgebra diagram_algebra(const AlgebraMorphism& f) {
  if (!all_passed(validate_morphism(f))) throw Error(ErrorKind::InvalidInput, f.name + " is not a dg algebra morphism");
  const AlgebraPresentation& A = f.dom;
  const AlgebraPresentation& B = f.cod;
  auto s = std::make_shared<GradedSpace>("D(" + f.name + ")");
  for (int i = 0; i < A.dim(); ++i) s->add(A.space->name(i) + "@A", A.space->degree(i), Key{0, i});
  for (int i = 0; i < B.dim(); ++i) s->add(B.space->name(i) + "@B", B.space->degree(i), Key{1, i});
  for (int i = 0; i < B.dim(); ++i) s->add(B.space->name(i) + "'", B.space->degree(i), Key{2, i});
  const int ob = A.dim(), op = A.dim() + B.dim();
  auto shift = [](const Vec& v, int off) {
    Vec out;
    for (const auto& [i, c] : v) out.add(i + off, c);
    return out;
  };
  AlgebraPresentation D;
  D.name = "D(" + f.name + ")";
  D.space = s;
  auto put = [&](int x, int y, const Vec& v) {
    if (!v.is_zero()) D.mult[{x, y}] = v;
  };
  for (const auto& [ab, v] : A.mult) put(ab.first, ab.second, v);
  for (const auto& [ab, v] : B.mult) put(ab.first + ob, ab.second + ob, shift(v, ob));
  for (int b = 0; b < B.dim(); ++b) {
    for (int a = 0; a < A.dim(); ++a) put(b + op, a, shift(B.mul(Vec(b), f(a)), op));
    for (int b2 = 0; b2 < B.dim(); ++b2) put(b + ob, b2 + op, shift(B.mul(b, b2), op));
  }
  for (const auto& [a, v] : A.diff) D.diff[a] = v;
  for (const auto& [b, v] : B.diff) {
    D.diff[b + ob] = shift(v, ob);
    D.diff[b + op] = shift(v, op);
  }
  return DiagramAlgebra{D, ob, op};
}

}  // namespace binfty
