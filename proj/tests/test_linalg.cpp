#include "ospcoh/linalg.hpp"

#include "dense_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ospcoh;

TEST(SparseMatrix, BasicAccessAndProducts) {
  SparseMatrix m(2, 3);
  m.set(0, 0, Rational(1));
  m.add(0, 2, Rational(2));
  m.add(0, 2, Rational(-2));
  m.set(1, 1, Rational(1, 2));
  EXPECT_EQ(m.nonzeros(), 2u);
  EXPECT_EQ(m.at(0, 2), Rational(0));
  EXPECT_THROW(m.at(2, 0), std::out_of_range);
  SparseVec<std::size_t> x{{0, Rational(3)}, {1, Rational(4)}};
  EXPECT_EQ(m.multiply(x), (SparseVec<std::size_t>{{0, Rational(3)}, {1, Rational(2)}}));
  EXPECT_THROW(m.multiply(SparseMatrix(2, 2)), DimensionMismatch);
  EXPECT_EQ(SparseMatrix::identity(3).multiply(SparseMatrix::identity(3)), SparseMatrix::identity(3));
}

TEST(SparseMatrix, MatrixMarketDump) {
  SparseMatrix m(2, 2);
  m.set(1, 0, Rational(-1, 3));
  EXPECT_NE(m.to_matrix_market().find("2 1 -1/3"), std::string::npos);
}

TEST(Linalg, KernelOfRowOnes) {
  SparseMatrix m(1, 2);
  m.set(0, 0, Rational(1));
  m.set(0, 1, Rational(1));
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (SparseVec<std::size_t>{{0, Rational(1)}, {1, Rational(-1)}}));
}

TEST(Linalg, EmptyAndZeroMatrices) {
  EXPECT_EQ(rank(SparseMatrix(0, 0)), 0u);
  EXPECT_EQ(kernel_basis(SparseMatrix(3, 4)).size(), 4u);
  EXPECT_TRUE(solve(SparseMatrix(2, 2), {}).has_value());
  EXPECT_FALSE(solve(SparseMatrix(2, 2), {{1, Rational(1)}}).has_value());
  EXPECT_THROW(solve(SparseMatrix(2, 2), {{5, Rational(1)}}), DimensionMismatch);
}

TEST(Linalg, AgreesWithDenseOracle) {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<std::size_t> dim(1, 30);
  std::uniform_real_distribution<double> dens(0.05, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    const SparseMatrix m = dense::random_sparse(rng, r, c, dens(rng));
    const auto d = dense::from_sparse(m);
    const std::size_t rk = dense::rank(d);
    ASSERT_EQ(rank(m), rk) << "trial " << trial;

    const auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), c - rk);
    for (const auto& v : ker) EXPECT_TRUE(m.multiply(v).empty());
    EXPECT_EQ(Echelon<std::size_t>(ker).dim(), ker.size());

    // consistent right-hand side from a random x, then an arbitrary one
    SparseVec<std::size_t> x;
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % 3 == 0) x.emplace(j, Rational(static_cast<long>(rng() % 7) - 3));
    std::erase_if(x, [](const auto& kv) { return kv.second.is_zero(); });
    const auto b = m.multiply(x);
    auto sol = solve(m, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.multiply(*sol), b);

    std::vector<Rational> bd(r);
    SparseVec<std::size_t> b2;
    for (std::size_t i = 0; i < r; ++i)
      if (rng() % 2) {
        bd[i] = Rational(static_cast<long>(rng() % 5) + 1);
        b2.emplace(i, bd[i]);
      }
    auto sol2 = solve(m, b2);
    EXPECT_EQ(sol2.has_value(), dense::consistent(d, bd)) << "trial " << trial;
    if (sol2) EXPECT_EQ(m.multiply(*sol2), b2);
  }
}

TEST(Echelon, CanonicalFormIsIndependentOfInsertionOrder) {
  using V = SparseVec<int>;
  V a{{0, Rational(1)}, {1, Rational(2)}}, b{{1, Rational(1)}, {2, Rational(1)}}, c{{0, Rational(1)}, {2, Rational(-2)}};
  Echelon<int> e1, e2;
  e1.insert(a);
  e1.insert(b);
  EXPECT_FALSE(e1.insert(c));  // c = a − 2b
  e2.insert(b);
  e2.insert(c);
  EXPECT_EQ(e1, e2);
  EXPECT_EQ(e1.dim(), 2u);
  EXPECT_TRUE(e1.contains(a + b));
  EXPECT_FALSE(e1.contains(V{{2, Rational(1)}}));
}

TEST(Echelon, SubspaceArithmetic) {
  using V = SparseVec<int>;
  Echelon<int> u(std::vector<V>{{{0, Rational(1)}}, {{1, Rational(1)}}});
  Echelon<int> w(std::vector<V>{{{1, Rational(1)}, {2, Rational(1)}}, {{0, Rational(1)}, {1, Rational(1)}}});
  auto i = subspace_intersection(u, w);
  EXPECT_EQ(i.dim(), 1u);
  EXPECT_TRUE(i.contains(V{{0, Rational(1)}, {1, Rational(1)}}));
  EXPECT_EQ(subspace_sum(u, w).dim(), 3u);
  EXPECT_EQ(subspace_quotient_dim(u, i), 1u);
  EXPECT_THROW(subspace_quotient_dim(i, u), DimensionMismatch);
  auto comp = subspace_complement(i, u);
  EXPECT_EQ(comp.dim(), 1u);
  EXPECT_EQ(subspace_sum(comp, i), u);
  EXPECT_THROW(subspace_complement(w, u), DimensionMismatch);
}

TEST(Echelon, IntersectionDimensionFormulaOnRandomSubspaces) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Echelon<std::size_t> u, w;
    for (int i = 0; i < 4; ++i) {
      SparseVec<std::size_t> a, b;
      for (std::size_t k = 0; k < 6; ++k) {
        if (rng() % 2) add_term(a, k, Rational(static_cast<long>(rng() % 5) - 2));
        if (rng() % 2) add_term(b, k, Rational(static_cast<long>(rng() % 5) - 2));
      }
      u.insert(a);
      w.insert(b);
    }
    EXPECT_EQ(subspace_intersection(u, w).dim() + subspace_sum(u, w).dim(), u.dim() + w.dim());
  }
}
