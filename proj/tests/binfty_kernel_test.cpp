#include <gtest/gtest.h>

#include <functional>

#include "binfty/algebra.hpp"
#include "binfty/extensions.hpp"
#include "binfty/verify.hpp"
#include "support.hpp"

using namespace binfty;
using namespace testing_support;

namespace {

OperatorAlgebra endo_of(const AlgebraPresentation& A, int N, int min_arity = 1) {
  return build_operator_binfty(suspend(*A.space, "s" + A.name), OperatorSide::endo, N, std::nullopt, min_arity);
}

int index_of_key(const HomSpace& H, const Key& k) {
  auto i = H.space->find(k);
  if (!i) throw std::runtime_error("missing key");
  return *i;
}

// Every b and d value agrees on the probe words.
bool same_tables(const BInfty& X, const BInfty& Y, int max_len) {
  for (int len = 1; len <= max_len; ++len)
    for (const Word& w : all_tuples(full_pool(X.carrier()), len)) {
      if (X.d(len, w) != Y.d(len, w)) return false;
      for (int m = 1; m < len; ++m)
        if (X.b(m, len - m, w) != Y.b(m, len - m, w)) return false;
    }
  return true;
}

// dim of derivations D: A -> A (degree 0, ungraded A), solved directly from
// D(ab) = D(a) b + a D(b) on structure constants.
std::size_t derivation_dim(const AlgebraPresentation& A) {
  const int n = A.dim();
  // unknowns D[i][j] = coefficient of e_j in D(e_i), index i*n + j
  std::vector<SparseRow> rows;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int out = 0; out < n; ++out) {
        SparseRow r;
        auto put = [&](int i, int j, const Rational& c) {
          if (c == 0) return;
          auto& x = r[static_cast<std::size_t>(i * n + j)];
          x += c;
        };
        for (const auto& [k, c] : A.mul(a, b)) put(k, out, c);
        for (int j = 0; j < n; ++j) {
          put(a, j, -A.mul(j, b).coeff(out));
          put(b, j, -A.mul(a, j).coeff(out));
        }
        for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
        if (!r.empty()) rows.push_back(r);
      }
  return static_cast<std::size_t>(n * n) - rank_of_rows(rows, static_cast<std::size_t>(n * n));
}

}  // namespace

TEST(CompositeBrace, OneBlockIsTheOperation) {
  auto C = hochschild_binfty(catalog_algebra("dual"), 3);
  const BInfty& B = *C.structure;
  for (const Word& w : all_tuples(full_pool(B.carrier()), 2)) {
    Tensor want;
    for (const auto& [x, c] : B.b(1, 1, w)) want.add(Word{x}, c);
    EXPECT_EQ(composite_brace(B, {w[0]}, {w[1]}, 1), want);
  }
}

TEST(CompositeBrace, DesuspendedAlgebraGivesShuffleOfTwo) {
  auto A = catalog_algebra("dg");
  auto B = algebra_binfty(A, 4);
  const GradedSpace& S = B->carrier();
  for (int u = 0; u < S.dim(); ++u)
    for (int v = 0; v < S.dim(); ++v) {
      Tensor want;
      want.add(Word{u, v}, 1);
      want.add(Word{v, u}, koszul_pair(S.degree(u), S.degree(v)));
      EXPECT_EQ(composite_brace(*B, {u}, {v}, 2), want);
    }
}

TEST(CompositeBrace, SingleLeftArgumentIsAnInsertionSum) {
  auto A = catalog_algebra("dual");
  auto E = endo_of(A, 4);
  const BInfty& B = *E.structure;
  const GradedSpace& S = B.carrier();
  const int mu = index_of_key(E.hom, {1, 0, 1});  // e <- (s1, se)
  // b_p(u; v_1..v_n) = sum over i, j of v_1..v_i, b_{1,j}(u, v_{i+1}..v_{i+j}), rest
  // with sign (-1)^{|u| (|v_1| + .. + |v_i|)}
  auto oracle = [&](int u, const Word& v, int p) {
    Tensor out;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (static_cast<int>(n - j + 1) != p) continue;
        Vec mid = B.b(1, static_cast<int>(j), concat(Word{u}, slice(v, i, i + j)));
        std::vector<Vec> factors;
        long pre = 0;
        for (std::size_t t = 0; t < i; ++t) {
          factors.push_back(Vec(v[t]));
          pre += S.degree(v[t]);
        }
        factors.push_back(mid);
        for (std::size_t t = i + j; t < n; ++t) factors.push_back(Vec(v[t]));
        out.add(tensor_of(factors), koszul_pair(S.degree(u), pre));
      }
    return out;
  };
  ProbeRng rng(5);
  const auto pool = full_pool(S);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    Word v;
    for (int t = 0; t < n; ++t) v.push_back(pool[rng.below(pool.size())]);
    const int u = trial % 2 ? mu : pool[rng.below(pool.size())];
    for (int p = 1; p <= n + 1; ++p) EXPECT_EQ(composite_brace(B, {u}, v, p), oracle(u, v, p));
  }
}

TEST(CompositeBraceProperty, AllSingletonBlocksAreShuffles) {
  auto C = hochschild_binfty(catalog_algebra("dg"), 3);
  const BInfty& B = *C.structure;
  const GradedSpace& S = B.carrier();
  ProbeRng rng(9);
  const auto pool = full_pool(S);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t m = rng.below(3), n = 1 + rng.below(4 - m);
    Word u, v;
    for (std::size_t t = 0; t < m; ++t) u.push_back(pool[rng.below(pool.size())]);
    for (std::size_t t = 0; t < n; ++t) v.push_back(pool[rng.below(pool.size())]);
    // every (m, n) shuffle, sign: each v letter passes the u letters after it
    Tensor want;
    std::function<void(std::size_t, std::size_t, Word, long)> go = [&](std::size_t i, std::size_t j, Word acc, long e) {
      if (i == m && j == n) {
        want.add(acc, koszul_pair(1, e));
        return;
      }
      if (i < m) {
        Word a = acc;
        a.push_back(u[i]);
        go(i + 1, j, a, e);
      }
      if (j < n) {
        long rest = 0;
        for (std::size_t t = i; t < m; ++t) rest += S.degree(u[t]);
        Word a = acc;
        a.push_back(v[j]);
        go(i, j + 1, a, e + rest * S.degree(v[j]));
      }
    };
    go(0, 0, Word{}, 0);
    EXPECT_EQ(composite_brace(B, u, v, static_cast<int>(m + n)), want);
  }
}

TEST(VerifyBinfty, HochschildBracesOfDualNumbersPass) {
  auto C = hochschild_binfty(catalog_algebra("dual"), 4);
  auto rs = verify_binfty(*C.structure, default_probes(C.structure->carrier(), plan(4)));
  EXPECT_TRUE(all_pass(rs)) << failures(rs);
  for (const auto& r : rs) EXPECT_GT(r.probes, 0);
}

TEST(VerifyBinfty, FlippedSignIsCaughtWithAWitness) {
  auto C = hochschild_binfty(catalog_algebra("dual"), 4);
  BInftyPtr B = C.structure;
  auto b = [B](int m, int n, const Word& w) {
    Vec v = B->b(m, n, w);
    if (m == 1 && n == 1) v *= -1;
    return v;
  };
  auto d = [B](int m, const Word& w) { return B->d(m, w); };
  BInfty flipped("flipped", B->carrier_ptr(), B->op_bound(), b, d);
  auto rs = verify_binfty(flipped, default_probes(flipped.carrier(), plan(4)));
  EXPECT_FALSE(all_pass(rs));
  bool witnessed = false;
  for (const auto& r : rs)
    if (!r.passed) {
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_NE(r.witness->lhs, r.witness->rhs);
      EXPECT_FALSE(r.witness->inputs.empty());
      witnessed = true;
    }
  EXPECT_TRUE(witnessed);
}

TEST(VerifyBinfty, ZeroStructurePasses) {
  auto S = suspend(*catalog_algebra("x3").space, "V");
  BInfty zero("zero", S, 4, nullptr, nullptr);
  EXPECT_TRUE(all_pass(verify_binfty(zero, default_probes(*S, plan(4)))));
}

TEST(VerifyBinfty, TuplesBeyondTheCutoffAreCountedAsUnsafe) {
  auto C = hochschild_binfty(catalog_algebra("k"), 2);
  auto rs = verify_binfty(*C.structure, default_probes(C.structure->carrier(), plan(4)));
  EXPECT_TRUE(all_pass(rs));
  long skipped = 0;
  for (const auto& r : rs) skipped += r.skipped_unsafe;
  EXPECT_GT(skipped, 0);
}

TEST(McCheck, ZeroIsMaurerCartan) {
  auto E = endo_of(catalog_algebra("dual"), 3);
  EXPECT_TRUE(mc_check(*E.structure, Vec{}));
}

TEST(McCheck, MultiplicationOfGroundField) {
  auto A = catalog_algebra("k");
  auto E = endo_of(A, 3);
  Vec mu = s_level_structure(A, E.hom);
  ASSERT_FALSE(mu.is_zero());
  EXPECT_TRUE(mc_check(*E.structure, mu));
}

TEST(McCheck, NonAssociativeProductIsNotMaurerCartan) {
  auto A = non_associative();
  auto E = endo_of(A, 3);
  Vec mu = s_level_structure(A, E.hom);
  EXPECT_FALSE(mc_check(*E.structure, mu));
  EXPECT_FALSE(mc_check(*E.structure, 2 * mu));
  EXPECT_FALSE(eval_b(*E.structure, 1, 1, {mu, mu}).is_zero());
}

TEST(McCheck, ScaledAssociativeProductStaysMaurerCartan) {
  // with d = 0 the equation is homogeneous, so 2 mu~ of an associative
  // algebra is again a solution
  auto A = catalog_algebra("dual");
  auto E = endo_of(A, 3);
  Vec mu = s_level_structure(A, E.hom);
  EXPECT_TRUE(mc_check(*E.structure, 2 * mu));
}

TEST(DeformMc, RejectsNonSolutions) {
  auto A = non_associative();
  auto E = endo_of(A, 3);
  try {
    deform_mc(E.structure, s_level_structure(A, E.hom));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMaurerCartan);
  }
}

TEST(DeformMc, ZeroLeavesTheStructureUnchanged) {
  auto C = hochschild_binfty(catalog_algebra("dual"), 3);
  auto D = deform_mc(C.structure, Vec{});
  EXPECT_TRUE(same_tables(*C.structure, *D, 3));
}

TEST(DeformMc, EulerDerivationIsACocycleAndIdentityIsNot) {
  auto A = catalog_algebra("dual");
  auto C = hochschild_binfty(A, 3);
  const BInfty& B = *C.structure;
  const HomSpace& H = C.endo.hom;
  Vec euler(index_of_key(H, {1, 1}));
  Vec id = Vec(index_of_key(H, {0, 0})) + Vec(index_of_key(H, {1, 1}));
  EXPECT_TRUE(B.d(1, Word{index_of_key(H, {1, 1})}).is_zero());
  EXPECT_TRUE(eval_d(B, {euler}).is_zero());
  EXPECT_FALSE(eval_d(B, {id}).is_zero());
}

TEST(DeformMc, CocyclesOfArityOneAreTheDerivations) {
  for (const auto& n : {"k", "dual", "x3", "ut2", "z2"}) {
    auto A = catalog_algebra(n);
    auto C = hochschild_binfty(A, 3);
    const BInfty& B = *C.structure;
    const GradedSpace& S = B.carrier();
    std::vector<int> cols;
    for (int i = 0; i < S.dim(); ++i)
      if (HomSpace::arity_of(S.key(i)) == 1 && S.degree(i) == 0) cols.push_back(i);
    SparseMatrix m(static_cast<std::size_t>(S.dim()), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, q] : B.d(1, Word{cols[c]})) m.add(static_cast<std::size_t>(r), c, q);
    EXPECT_EQ(rank_kernel(m).kernel_basis.size(), derivation_dim(A)) << n;
  }
}

TEST(DeformMcProperty, DeformedStructuresVerify) {
  for (const auto& n : {"k", "dual", "z2"}) {
    auto A = catalog_algebra(n);
    auto E = endo_of(A, 4);
    Vec mu = s_level_structure(A, E.hom);
    for (Rational scale : {Rational(1), Rational(2)}) {
      auto D = deform_mc(E.structure, scale * mu);
      auto rs = verify_binfty(*D, default_probes(D->carrier(), plan(4, 150)));
      EXPECT_TRUE(all_pass(rs)) << n << "\n" << failures(rs);
    }
  }
}

TEST(DeformMcProperty, DifferentialSquaresToZero) {
  for (const auto& n : {"k", "dual", "x3", "ut2", "z2", "dg"}) {
    auto C = hochschild_binfty(catalog_algebra(n), 3);
    const BInfty& B = *C.structure;
    for (int i = 0; i < B.carrier().dim(); ++i) {
      Vec once = B.d(1, Word{i});
      EXPECT_TRUE(eval_d(B, {once}).is_zero()) << n << " " << B.carrier().name(i);
    }
  }
}

TEST(LieBracket, GradedAntisymmetry) {
  auto C = hochschild_binfty(catalog_algebra("x3"), 3);
  const BInfty& B = *C.structure;
  const GradedSpace& S = B.carrier();
  for (int x = 0; x < S.dim(); x += 3)
    for (int y = 0; y < S.dim(); y += 2) {
      Vec l = lie_bracket(B, Vec(x), Vec(y));
      Vec r = lie_bracket(B, Vec(y), Vec(x));
      r *= -koszul_pair(S.degree(x), S.degree(y));
      EXPECT_EQ(l, r);
    }
}
