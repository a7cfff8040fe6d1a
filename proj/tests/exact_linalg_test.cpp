#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "binfty/sparse_matrix.hpp"
#include "support.hpp"

using namespace binfty;
using testing_support::random_rational;

namespace {

// Dense Gauss-Jordan rank, written independently of rref().
std::size_t dense_rank(const SparseMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  SparseMatrix m(rows, cols);
  std::bernoulli_distribution keep(density);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (keep(rng)) m.set(r, c, random_rational(rng));
  return m;
}

}  // namespace

TEST(Rational, AddsExactly) { EXPECT_EQ(rational_arith(make_rational(1, 2), make_rational(1, 3), ArithOp::add), make_rational(5, 6)); }

TEST(Rational, ReducedOnConstruction) {
  Rational q = make_rational(2, 4);
  EXPECT_EQ(q.get_num(), 1);
  EXPECT_EQ(q.get_den(), 2);
  Rational n = make_rational(3, -6);
  EXPECT_EQ(n.get_num(), -1);
  EXPECT_EQ(n.get_den(), 2);
  EXPECT_EQ(make_rational(0, 7).get_den(), 1);
}

TEST(Rational, InverseOfZeroIsRejected) {
  try {
    rational_arith(Rational(0), Rational(0), ArithOp::inv);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  EXPECT_THROW(make_rational(1, 0), Error);
}

TEST(Rational, ParsesStrings) {
  EXPECT_EQ(parse_rational("2/4"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("+5/10"), make_rational(1, 2));
  for (const char* bad : {"", "1.5", "1/", "/2", "1/-2", "x", "1/0"}) EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(Rational, CoefficientGrowthStaysExact) {
  Rational acc(1);
  for (int i = 1; i <= 60; ++i) acc *= make_rational(3 * i + 1, 2 * i + 1);
  for (int i = 60; i >= 1; --i) acc /= make_rational(3 * i + 1, 2 * i + 1);
  EXPECT_EQ(acc, Rational(1));
}

TEST(RankKernel, Identity) {
  SparseMatrix m(2, 2);
  m.set(0, 0, 1);
  m.set(1, 1, 1);
  auto rk = rank_kernel(m);
  EXPECT_EQ(rk.rank, 2u);
  EXPECT_TRUE(rk.kernel_basis.empty());
}

TEST(RankKernel, RowOfOnes) {
  SparseMatrix m(1, 2);
  m.set(0, 0, 1);
  m.set(0, 1, 1);
  auto rk = rank_kernel(m);
  EXPECT_EQ(rk.rank, 1u);
  ASSERT_EQ(rk.kernel_basis.size(), 1u);
  SparseRow want{{0, Rational(1)}, {1, Rational(-1)}};
  EXPECT_EQ(rk.kernel_basis[0], want);
}

TEST(RankKernel, ZeroMatrix) {
  auto rk = rank_kernel(SparseMatrix(3, 3));
  EXPECT_EQ(rk.rank, 0u);
  EXPECT_EQ(rk.kernel_basis.size(), 3u);
}

TEST(SparseMatrix, NeverStoresZeros) {
  SparseMatrix m(2, 2);
  m.add(0, 1, 3);
  m.add(0, 1, -3);
  m.set(1, 1, 0);
  EXPECT_TRUE(m.entries().empty());
  EXPECT_THROW(m.set(2, 0, 1), std::out_of_range);
}

TEST(RankKernelProperty, RankMatchesTransposeAndDenseOracle) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    SparseMatrix m = random_matrix(rng, r, c, 0.2 + 0.1 * (trial % 6));
    const std::size_t rk = rank(m);
    EXPECT_EQ(rk, rank(m.transpose())) << "trial " << trial;
    EXPECT_EQ(rk, dense_rank(m)) << "trial " << trial;
  }
}

TEST(RankKernelProperty, RankNullityAndKernelVectors) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
    SparseMatrix m = random_matrix(rng, r, c, 0.35);
    auto rk = rank_kernel(m);
    EXPECT_EQ(rk.rank + rk.kernel_basis.size(), c);
    std::size_t last_pivot = 0;
    for (std::size_t i = 0; i < rk.kernel_basis.size(); ++i) {
      const auto& v = rk.kernel_basis[i];
      EXPECT_TRUE(mat_vec(m, v).empty());
      ASSERT_FALSE(v.empty());
      // reduced echelon: leading entry 1, strictly increasing leads, zero
      // in the other rows' lead columns
      EXPECT_EQ(v.begin()->second, 1);
      if (i) {
        EXPECT_GT(v.begin()->first, last_pivot);
      }
      last_pivot = v.begin()->first;
      for (std::size_t j = 0; j < rk.kernel_basis.size(); ++j)
        if (j != i) {
          EXPECT_EQ(rk.kernel_basis[j].count(v.begin()->first), 0u);
        }
    }
    EXPECT_EQ(rank_of_rows(rk.kernel_basis, c), rk.kernel_basis.size());
  }
}

TEST(RankKernelProperty, EchelonIndependentOfInsertionOrder) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 2 + rng() % 5, c = 2 + rng() % 6;
    SparseMatrix m = random_matrix(rng, r, c, 0.4);
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> entries(m.entries().begin(), m.entries().end());
    std::shuffle(entries.begin(), entries.end(), rng);
    SparseMatrix shuffled(r, c);
    for (const auto& [rc, v] : entries) shuffled.add(rc.first, rc.second, v);
    auto rows = m.row_maps();
    std::shuffle(rows.begin(), rows.end(), rng);
    Echelon a = rref(m.row_maps(), c), b = rref(shuffled.row_maps(), c), p = rref(rows, c);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.rows, p.rows);
    EXPECT_EQ(a.pivots, p.pivots);
    EXPECT_EQ(rank_kernel(m).kernel_basis, rank_kernel(shuffled).kernel_basis);
  }
}

TEST(RankKernel, RowSpanMembership) {
  std::vector<SparseRow> rows{{{0, Rational(1)}, {1, Rational(2)}}, {{1, Rational(1)}}};
  EXPECT_TRUE(in_row_span(rows, {{0, Rational(3)}}, 3));
  EXPECT_FALSE(in_row_span(rows, {{2, Rational(1)}}, 3));
  EXPECT_TRUE(in_row_span(rows, {}, 3));
}
