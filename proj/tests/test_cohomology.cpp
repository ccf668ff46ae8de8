#include "ospcoh/cohomology.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ospcoh;

namespace {

std::vector<std::size_t> totals(const std::vector<HDim>& d) {
  std::vector<std::size_t> out;
  for (const auto& x : d) out.push_back(x.total);
  return out;
}

using Dims = std::vector<std::size_t>;

}  // namespace

TEST(WeightBlock, ComposesToZero) {
  for (const auto& mod : testsupport::sample_modules())
    for (int n = 1; n <= 3; ++n)
      for (int j = -3; j <= 3; ++j) {
        const WeightBlock b = build_block(mod, n, Rational(j, 2) - mod.p());
        EXPECT_TRUE(b.outgoing.multiply(b.incoming).is_zero());
        EXPECT_EQ(b.outgoing.cols(), b.domain.size());
        EXPECT_EQ(b.incoming.rows(), b.domain.size());
      }
}

TEST(WeightBlock, DegreeThreeAtK2Assembles) {
  const TruncatedDlm mod{Rational(0), Rational(1, 2), 2};
  const WeightBlock b = build_block(mod, 3, Rational(0));
  std::size_t expected = 0;
  for (const auto& u : monomial_basis(3)) expected += weight_basis(mod, u.weight()).size();
  EXPECT_EQ(b.domain.size(), expected);
}

TEST(WeightBlock, EmptySlice) {
  const TruncatedDlm mod{Rational(1, 3), Rational(0), 3};
  const WeightBlock b = build_block(mod, 1, Rational(0));
  EXPECT_EQ(b.domain.size(), 0u);
  EXPECT_EQ(h_dim(mod, 1, Rational(0)).total, 0u);
}

TEST(HDim, PropositionExamples) {
  EXPECT_EQ(totals(h_dims({Rational(0), Rational(1, 2), 3}, 3, Rational(0))), (Dims{1, 2, 1, 0}));
  EXPECT_EQ(totals(h_dims({Rational(1), Rational(1), 3}, 2, Rational(0))), (Dims{1, 1, 0}));
  EXPECT_EQ(totals(h_dims({Rational(1, 3), Rational(0), 3}, 3, Rational(0))), (Dims{0, 0, 0, 0}));
}

TEST(HDim, SingleDegreeAgreesWithBatch) {
  const TruncatedDlm mod{Rational(-1, 2), Rational(1), 3};
  const auto batch = h_dims(mod, 3, Rational(0), Algebra::osp, 2);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(h_dim(mod, n, Rational(0)), batch[n]);
}

TEST(HDim, InvariantOfOddFamilyIsOdd) {
  for (int k = 0; k <= 2; ++k) {
    const TruncatedDlm mod = f_k_module(k);
    const HDim d0 = h_dim(mod, 0, Rational(0));
    EXPECT_EQ(d0.odd, 1u);
    EXPECT_EQ(d0.even, 0u);
    const auto reps = class_representatives(mod, 0, Rational(0), 1);
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].at(SuperMonomial{}), vec(d(0, k)));
  }
}

TEST(Predictions, Theorem) {
  EXPECT_EQ(predict_theorem({Rational(2), Rational(2), 3}), (Dims{1, 1, 0, 0, 0}));
  EXPECT_EQ(predict_theorem({Rational(-1), Rational(3, 2), 4}), (Dims{1, 2, 1, 0, 0}));
  EXPECT_EQ(predict_theorem({Rational(0), Rational(1, 3), 3}), (Dims{0, 0, 0, 0, 0}));
}

TEST(Predictions, Proposition) {
  EXPECT_EQ(predict_proposition(Rational(7, 3), Rational(7, 3), 3), (Dims{1, 1, 0, 0}));
  EXPECT_EQ(predict_proposition(Rational(-1), Rational(3, 2), 3), (Dims{1, 2, 1, 0}));
  EXPECT_EQ(predict_proposition(Rational(0), Rational(2), 3), (Dims{0, 0, 0, 0}));
  EXPECT_EQ(predict_proposition(Rational(1, 2), Rational(1), 3), (Dims{0, 0, 0, 0}));  // p = 1/2, λ ≠ 0
}

TEST(Predictions, Sl2MatchesBruteForce) {
  const std::vector<std::pair<Rational, Rational>> grid{
      {0, 0}, {1, 1}, {0, Rational(1, 2)}, {Rational(-1, 2), 1}, {Rational(1, 3), 0}, {1, Rational(1, 2)}};
  for (const auto& [l, m] : grid) {
    const TruncatedDlm mod{l, m, guarded_K(m - l, 3)};
    EXPECT_EQ(totals(h_dims(mod, 3, Rational(0), Algebra::sl2)), predict_sl2(mod)) << l << "," << m;
  }
  EXPECT_GE(predict_sl2({Rational(4), Rational(4), 3})[0], 1u);
  EXPECT_EQ(predict_sl2({Rational(0), Rational(1, 3), 3}), (Dims{0, 0, 0, 0}));
}

TEST(Predictions, HypothesisGuard) {
  EXPECT_TRUE(a_is_onto({Rational(0), Rational(0), 3}));
  EXPECT_EQ(guarded_K(Rational(5, 2), 3), 4);
  EXPECT_EQ(guarded_K(Rational(-7, 2), 3), 5);
  EXPECT_EQ(guarded_K(Rational(0), 3), 3);
}

TEST(Coboundary, MembershipInSl2Complex) {
  std::mt19937 rng(5);
  const TruncatedDlm mod{Rational(1, 3), Rational(5, 7), 3};
  const Cochain g0 = testsupport::random_cochain(rng, mod, 1, 0, 2, 0.3);
  const Sl2Cochain h = sl2_coboundary(restrict_sl2(g0));
  auto g = is_sl2_coboundary(h);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(sl2_coboundary(*g), h);
}

TEST(Restriction, InjectiveOnClasses) {
  const auto rep = restriction_injectivity_check({Rational(0), Rational(1, 2), 3});
  EXPECT_TRUE(rep.ok());
  std::size_t h1 = 0;
  for (const auto& c : rep.classes) h1 += c.degree == 1;
  EXPECT_EQ(h1, 2u);
  const auto rep2 = restriction_injectivity_check({Rational(-1, 2), Rational(1), 3});
  EXPECT_TRUE(rep2.ok());
  bool has_h2 = false;
  for (const auto& c : rep2.classes) has_h2 |= c.degree == 2;
  EXPECT_TRUE(has_h2);
}

TEST(Localization, ReducedCocyclesDeterminedByBn) {
  const TruncatedDlm mod{Rational(0), Rational(1, 2), 3};
  for (int n = 1; n <= 3; ++n)
    for (int j = -4; j <= 4; ++j)
      for (int par : {0, 1}) {
        EXPECT_EQ(localization_kernel_dim(mod, n, Rational(j, 2), par), 0u);
        if (n >= 2) EXPECT_EQ(reduced_coboundary_failures(mod, n, Rational(j, 2), par), 0u);
      }
}

TEST(Lemma, InclusionHolds) {
  for (int k0 = 0; k0 <= 2; ++k0)
    for (const Rational& lambda : {Rational(-k0, 2), Rational(1, 3), Rational(2)}) {
      const TruncatedDlm mod{lambda, lambda + Rational(2 * k0 + 1, 2), k0 + 3};
      EXPECT_TRUE(lemma_check(mod).holds);
    }
}

TEST(GelfandFuchs, SingleConstantPerK) {
  for (int k = 0; k <= 2; ++k) {
    const GelfandFuchsReport g = gelfand_fuchs_check(k);
    EXPECT_TRUE(g.cocycle);
    EXPECT_TRUE(g.nontrivial);
    EXPECT_TRUE(g.sl2_nontrivial);
    EXPECT_FALSE(g.C.is_zero());
    ASSERT_EQ(g.pairs.size(), 3u);
    EXPECT_EQ(g.pairs[0].omega, Rational(0));  // ω(1, x)
    EXPECT_EQ(g.pairs[1].omega, Rational(0));  // ω(1, x²)
    EXPECT_EQ(g.pairs[2].omega, Rational(2));  // ω(x, x²)
  }
  EXPECT_THROW(gelfand_fuchs_check(-1), std::invalid_argument);
}

TEST(GelfandFuchs, KZeroIsPureTheta) {
  EXPECT_EQ(gelfand_fuchs_operator(0), vec(c(0, 0), Rational(-1)));
}

TEST(Report, MatchAndWeightVanishing) {
  ReportOptions opt;
  opt.window = 2;
  opt.nmax = 2;
  for (const auto& [l, m] : std::vector<std::pair<Rational, Rational>>{{0, Rational(1, 2)}, {1, 1}}) {
    const CohomologyReport r = compute_report(l, m, opt);
    EXPECT_TRUE(r.match);
    EXPECT_TRUE(r.weight_vanishing);
  }
  EXPECT_THROW(compute_report(Rational(0), Rational(0), ReportOptions{3, 7, 0, 1}), std::invalid_argument);
}

TEST(ParallelMap, KeepsOrderAndPropagatesErrors) {
  std::vector<int> xs{1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_EQ(parallel_map(xs, [](int x) { return x * x; }, 4), (std::vector<int>{1, 4, 9, 16, 25, 36, 49, 64}));
  EXPECT_THROW(parallel_map(xs, [](int x) -> int { if (x == 5) throw std::runtime_error("x"); return x; }, 3),
               std::runtime_error);
}
