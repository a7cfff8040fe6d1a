#include <gtest/gtest.h>

#include "binfty/algebra.hpp"
#include "binfty/extensions.hpp"
#include "binfty/morphism_complex.hpp"
#include "support.hpp"

using namespace binfty;
using namespace testing_support;

namespace {

SpacePtr space(std::vector<int> degrees) {
  auto s = std::make_shared<GradedSpace>("W");
  for (std::size_t i = 0; i < degrees.size(); ++i) s->add("w" + std::to_string(i), degrees[i]);
  return s;
}

std::vector<std::vector<int>> strata_of(const SumSpace& S) {
  std::vector<std::vector<int>> out(S.parts.size());
  for (int x = 0; x < S.space->dim(); ++x) out[static_cast<std::size_t>(S.tag(x))].push_back(x);
  return out;
}

// E'(W) acting canonically on T(W) cut at weight 3.
struct CoendoOnTensor {
  OperatorAlgebra E;
  TargetPtr T;
  ActionData act;
  AlgebraPresentation A;
};

CoendoOnTensor coendo_on_tensor(std::vector<int> degrees, int N = 3) {
  auto W = space(std::move(degrees));
  auto E = build_operator_binfty(W, OperatorSide::coendo, N);
  auto T = tensor_algebra_target(W, words_up_to(*W, N), "T(W)");
  auto act = canonical_action(E, T, N);
  return CoendoOnTensor{E, T, act, presentation_of(*T)};
}

// The same action, but on T(W) seen as a B-infinity algebra.
ActionData as_bb(const ActionData& a, const AlgebraPresentation& A, int bound) {
  auto T = std::make_shared<Target>(*a.target());
  T->binfty = algebra_binfty(A, bound);
  ActionData src = a;
  return ActionData(a.name() + "[bb]", Side::left, ActionKind::bb, a.actor(), T, a.max_len(),
                    [src](const Word& bs, int x) { return src.apply(bs, x); });
}

void expect_extension_sound(const ExtensionResult& r, const ProbePlan& p) {
  ProbeSet ps{strata_of(r.carrier), p};
  auto rs = verify_binfty(*r.total, ps);
  EXPECT_TRUE(all_pass(rs)) << failures(rs);
  EXPECT_TRUE(check_short_exact(r).passed);
  EXPECT_TRUE(all_pass(verify_morphism(r.include, default_probes(r.sub->carrier(), p))));
  EXPECT_TRUE(all_pass(verify_morphism(r.project, ps)));
}

MorphismComplexLAB lab_of(const std::string& f_name, int N, int P, int F) {
  auto f = catalog_morphism(f_name);
  return assemble_LAB(make_hom_complexes(suspend(*f.dom.space, "sA"), suspend(*f.cod.space, "sB"), N, P, F));
}

}  // namespace

TEST(ExtendByAlgebra, CorrectionTermMultipliesFromTheLeft) {
  // s^-1(dual) acting on dual by left multiplication in arity 2
  auto A = catalog_algebra("dual");
  auto B = algebra_binfty(A, 3);
  auto Ac = std::make_shared<AlgebraPresentation>(A);
  ActionData act("mult", Side::left, ActionKind::algebra, B, algebra_target(A), 3,
                 [Ac](const Word& bs, int x) { return bs.size() == 1 ? Ac->mul(bs[0], x) : Vec{}; });
  auto E = extend_by_algebra(act, A);
  const SumSpace& S = E.carrier;
  for (int m1 = 0; m1 < A.dim(); ++m1)
    for (int a = 0; a < A.dim(); ++a)
      for (int m2 = 0; m2 < A.dim(); ++m2) {
        Vec want = S.embed(0, A.mul(Vec(m1), A.mul(a, m2)));
        EXPECT_EQ(E.total->b(2, 1, {S.offsets[0] + m1, S.offsets[1] + a, S.offsets[0] + m2}), want);
        // nothing with the algebra letter in the middle
        EXPECT_TRUE(E.total->b(2, 1, {S.offsets[1] + a, S.offsets[0] + m1, S.offsets[0] + m2}).is_zero());
      }
  EXPECT_EQ(E.total->b(1, 1, {S.offsets[1] + 1, S.offsets[0] + 0}), S.embed(0, A.mul(1, 0)));
}

TEST(ExtendByAlgebra, TrivialActionIsTheDirectProduct) {
  auto A = catalog_algebra("dg");
  auto C = hochschild_binfty(catalog_algebra("dual"), 3);
  auto triv = trivial_action("trivial", Side::left, ActionKind::algebra, C.structure, algebra_target(A), 3);
  auto E = extend_by_algebra(triv, A);
  auto prod = product_binfty({algebra_binfty(A, 3), C.structure}, "prod");
  const SumSpace& S = E.carrier;
  ProbeSet ps{strata_of(S), plan(3)};
  auto c = compare_structures(*E.total, *prod, ps, "trivial=product");
  EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs : "");
  EXPECT_GT(c.probes, 0);
  for (int a = 0; a < A.dim(); ++a)
    for (int b = 0; b < A.dim(); ++b) EXPECT_EQ(E.total->b(1, 1, {a, b}), A.mul(a, b));
  expect_extension_sound(E, plan(3));
}

TEST(ExtendByAlgebra, HochschildOfDualActingTriviallyOnDgAtFour) {
  auto A = catalog_algebra("dg");
  auto C = hochschild_binfty(catalog_algebra("dual"), 4);
  auto triv = trivial_action("trivial", Side::left, ActionKind::algebra, C.structure, algebra_target(A), 4);
  expect_extension_sound(extend_by_algebra(triv, A), plan(4, 150));
}

TEST(ExtendByAlgebra, CanonicalCoendoActionOnTruncatedTensorAlgebra) {
  for (auto degrees : {std::vector<int>{0}, std::vector<int>{-1, 0}}) {
    auto s = coendo_on_tensor(degrees);
    ASSERT_TRUE(all_pass(verify_action(s.act, default_action_probes(s.act, plan(3)))));
    expect_extension_sound(extend_by_algebra(s.act, s.A), plan(3, 150));
  }
}

TEST(ExtendByAlgebra, RejectsCoalgebraActions) {
  auto W = space({0});
  auto E = build_operator_binfty(W, OperatorSide::endo, 2);
  auto T = tensor_coalgebra_target(W, words_up_to(*W, 2), "Tc(W)");
  auto act = canonical_action(E, T, 2);
  try {
    extend_by_algebra(act, presentation_of(*T));
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ActionAxiomViolation);
  }
}

TEST(ExtendByBinfty, AlgebraTargetReducesToExtendByAlgebra) {
  for (auto degrees : {std::vector<int>{0}, std::vector<int>{-1, 0}}) {
    auto s = coendo_on_tensor(degrees);
    auto by_alg = extend_by_algebra(s.act, s.A);
    auto by_bb = extend_by_binfty(as_bb(s.act, s.A, 3));
    ProbeSet ps{strata_of(by_alg.carrier), plan(3, 300)};
    auto c = compare_structures(*by_bb.total, *by_alg.total, ps, "bb=algebra");
    EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs + ": " + c.witness->diff : "");
    expect_extension_sound(by_bb, plan(3, 150));
  }
}

TEST(ExtendByBinfty, TrivialActionIsTheDirectProduct) {
  auto C = hochschild_binfty(catalog_algebra("dual"), 3);
  auto K = hochschild_binfty(catalog_algebra("k"), 3);
  auto T = std::make_shared<Target>();
  T->name = "C(k)";
  T->space = K.structure->carrier_ptr();
  T->binfty = K.structure;
  auto triv = trivial_action("trivial", Side::left, ActionKind::bb, C.structure, T, 3);
  auto E = extend_by_binfty(triv);
  auto prod = product_binfty({K.structure, C.structure}, "prod");
  auto c = compare_structures(*E.total, *prod, ProbeSet{strata_of(E.carrier), plan(3)}, "trivial=product");
  EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs : "");
  expect_extension_sound(E, plan(3, 150));
}

TEST(ExtendByBinfty, EmptyLeftBlockIsTheAction) {
  auto s = coendo_on_tensor({-1, 0});
  auto bb = as_bb(s.act, s.A, 3);
  auto E = extend_by_binfty(bb);
  const SumSpace& S = E.carrier;
  const int nb = s.E.structure->carrier().dim(), nt = s.T->space->dim();
  for (int m = 1; m <= 2; ++m)
    for (const Word& bs : all_tuples(full_pool(s.E.structure->carrier()), m))
      for (int x = 0; x < nt; ++x) {
        Word w;
        for (int b : bs) w.push_back(S.offsets[1] + b);
        w.push_back(S.offsets[0] + x);
        EXPECT_EQ(E.total->b(m, 1, w), S.embed(0, s.act.apply(bs, x)));
      }
  EXPECT_GT(nb, 0);
}

TEST(Commutation, TrivialActionCommutesWithAnything) {
  auto M = lab_of("unit_k_dual", 2, 2, 2);
  auto triv = trivial_action("trivial", Side::left, ActionKind::algebra, M.left_gamma.actor(), M.left_gamma.target(), 2);
  auto c = check_commutation(triv, M.right_gamma, default_action_probes(triv, plan(3)),
                             {full_pool(M.right_gamma.actor()->carrier())});
  EXPECT_TRUE(c.passed);
  EXPECT_GT(c.probes, 0);
}

TEST(Commutation, LeftAndRightCompositionsCommute) {
  auto M = lab_of("id_dual", 3, 3, 3);
  for (auto [l, r] : {std::pair{&M.left_tc, &M.right_tc}, std::pair{&M.left_gamma, &M.right_gamma}}) {
    auto c = check_commutation(*l, *r, default_action_probes(*l, plan(3)), {full_pool(r->actor()->carrier())});
    EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs : "");
    EXPECT_GT(c.probes, 0);
  }
}

TEST(Commutation, LeftCompositionOnBothSidesIsCaught) {
  auto M = lab_of("id_dual", 3, 3, 3);
  ActionData l = M.left_tc;
  ActionData forced("h-left[as right]", Side::right, ActionKind::coalgebra, l.actor(), l.target(), l.max_len(),
                    [l](const Word& bs, int x) { return l.apply(bs, x); });
  auto c = check_commutation(l, forced, default_action_probes(l, plan(3)), {full_pool(l.actor()->carrier())});
  EXPECT_FALSE(c.passed);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_NE(c.witness->lhs, c.witness->rhs);
}

TEST(ExtendTwoSided, NonCommutingActionsAreRejected) {
  auto M = lab_of("id_dual", 2, 2, 2);
  ActionData l = M.left_gamma;
  ActionData r = M.right_gamma;
  ActionData also_left("g-right[from h]", Side::right, ActionKind::algebra, l.actor(), l.target(), l.max_len(),
                       [l](const Word& bs, int x) { return l.apply(bs, x); });
  auto ps = default_action_probes(l, plan(3));
  std::vector<std::vector<int>> strata{full_pool(l.actor()->carrier())};
  try {
    extend_two_sided(l, also_left, M.gamma, &ps, strata);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ActionsDoNotCommute);
  }
  std::vector<std::vector<int>> rstrata{full_pool(r.actor()->carrier())};
  EXPECT_NO_THROW(extend_two_sided(l, r, M.gamma, &ps, rstrata));
}

TEST(ExtendTwoSided, TrivialActionsGiveTheThreeWayProduct) {
  auto A = catalog_algebra("dual");
  auto B = hochschild_binfty(catalog_algebra("k"), 3).structure;
  auto Bp = hochschild_binfty(catalog_algebra("dual"), 3).structure;
  auto T = algebra_target(A);
  auto l = trivial_action("l", Side::left, ActionKind::algebra, B, T, 3);
  auto r = trivial_action("r", Side::right, ActionKind::algebra, Bp, T, 3);
  auto E = extend_two_sided(l, r, A);
  auto prod = product_binfty({algebra_binfty(A, 3), Bp, B}, "prod");
  auto c = compare_structures(*E.total, *prod, ProbeSet{strata_of(E.carrier), plan(3)}, "trivial=product");
  EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs : "");
  expect_extension_sound(E, plan(3, 150));
}

TEST(ExtendTwoSided, LeftFamilyIsTheLeftAction) {
  auto M = lab_of("unit_k_dual", 3, 3, 3);
  const SumSpace& S = M.L.carrier;
  const GradedSpace& H = M.left_gamma.actor()->carrier();
  const int ng = M.gamma.dim();
  int nonzero = 0;
  for (int m = 1; m <= 2; ++m)
    for (const Word& bs : all_tuples(full_pool(H), m))
      for (int x = 0; x < ng; ++x) {
        Word w;
        for (int b : bs) w.push_back(S.offsets[2] + b);
        w.push_back(S.offsets[0] + x);
        Vec got = M.L.total->b(m, 1, w);
        EXPECT_EQ(got, S.embed(0, M.left_gamma.apply(bs, x)));
        nonzero += got.is_zero() ? 0 : 1;
      }
  EXPECT_GT(nonzero, 0);
}

TEST(ExtendTwoSided, MorphismComplexAgreesWithTwoStepConstruction) {
  auto M = lab_of("unit_k_dual", 3, 3, 3);
  auto p = plan(3, 150);
  ProbeSet ps{M.strata(), p};
  auto rs = verify_binfty(*M.L.total, ps);
  EXPECT_TRUE(all_pass(rs)) << failures(rs);
  auto two = extend_two_step(M.left_gamma, M.right_gamma, M.gamma);
  auto c = compare_structures(*M.L.total, *two.total, ps, "two-sided=two-step");
  EXPECT_TRUE(c.passed) << (c.witness ? c.witness->inputs + ": " + c.witness->diff : "");
  EXPECT_GT(c.probes, 0);
  EXPECT_TRUE(check_short_exact(M.L).passed);
  EXPECT_TRUE(check_short_exact(two).passed);
}
