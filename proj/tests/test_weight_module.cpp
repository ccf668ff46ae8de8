#include "ospcoh/audit.hpp"
#include "ospcoh/weight_module.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace ospcoh;

TEST(BasisVector, WeightsAndParity) {
  const TruncatedDlm mod{Rational(0), Rational(1, 2), 3};  // p = 1/2
  EXPECT_EQ(mod.weight(a(0, 0)), Rational(-1, 2));
  EXPECT_EQ(mod.weight(c(0, 0)), Rational(-1));
  EXPECT_EQ(mod.weight(d(0, 0)), Rational(0));
  EXPECT_EQ(mod.weight(b(2, 1)), Rational(-3, 2));
  EXPECT_EQ(c(0, 0).parity(), 1);
  EXPECT_EQ(b(0, 0).parity(), 0);
  EXPECT_EQ(d(1, 2).str(), "d_{1,2}");
}

TEST(Action, HandValues) {
  const TruncatedDlm mod{Rational(1, 3), Rational(5, 7), 3};
  EXPECT_EQ(act(mod, Gen::X, a(2, 1)), vec(a(1, 1), Rational(2)));
  EXPECT_TRUE(act(mod, Gen::X, a(0, 1)).empty());
  EXPECT_EQ(act(mod, Gen::A, c(3, 2)), vec(a(3, 2)));
  EXPECT_EQ(act(mod, Gen::H, d(1, 1)), vec(d(1, 1), mod.weight(d(1, 1))));
  EXPECT_THROW(act(mod, Gen::H, a(0, 4)), TruncationViolation);
}

TEST(Action, RaisesWeightByGeneratorWeight) {
  for (const auto& mod : testsupport::sample_modules())
    for (const auto& v : basis_box(mod, 3, 3))
      for (Gen g : kGenerators)
        for (const auto& [w, coeff] : act(mod, g, v)) {
          EXPECT_EQ(mod.weight(w), mod.weight(v) + weight(g));
          EXPECT_EQ(w.parity(), (v.parity() + parity(g)) % 2);
          EXPECT_LE(w.k, v.k);
        }
}

TEST(Action, EqualsRealizationOracle) {
  for (const auto& [l, m] : std::vector<std::pair<Rational, Rational>>{
           {0, 0}, {1, 1}, {0, Rational(1, 2)}, {Rational(-1, 2), 1}, {-1, Rational(3, 2)}, {Rational(1, 3), 0}}) {
    const auto bad = oracle_mismatches(TruncatedDlm{l, m, 4}, adopted_realization());
    EXPECT_TRUE(bad.empty()) << "λ=" << l << " μ=" << m << ": " << (bad.empty() ? "" : bad[0].vector.str());
  }
}

TEST(Action, PrintedYdRowDisagreesWithOddSquare) {
  TruncatedDlm mod{Rational(1, 3), Rational(5, 7), 3, ActionRows::printed};
  // Y = −B² on d_{0,1}
  const ModuleVector y = act(mod, Gen::Y, d(0, 1));
  const ModuleVector bb = scaled(act(mod, Gen::B, act(mod, Gen::B, vec(d(0, 1)))), Rational(-1));
  EXPECT_NE(y, bb);
  mod.rows = ActionRows::corrected;
  EXPECT_EQ(act(mod, Gen::Y, d(0, 1)), bb);
}

TEST(Action, CompatibilityDefectOnPrintedTable) {
  const TruncatedDlm mod{Rational(0), Rational(0), 3};
  EXPECT_EQ(action_compat_defect(mod, printed_table(), Gen::A, Gen::B, c(0, 0)), vec(c(0, 0), Rational(-2)));
  EXPECT_TRUE(action_compat_defect(mod, adopted_table(), Gen::A, Gen::B, c(0, 0)).empty());
}

TEST(OperatorForm, RoundTrip) {
  const TruncatedDlm mod{Rational(0), Rational(0), 3};
  for (const auto& v : basis_box(mod, 3, 3)) EXPECT_EQ(from_operator(to_operator(v)), vec(v));
  EXPECT_EQ(from_operator(op(2, 0, 1, 1)), vec(d(2, 1)) + vec(c(2, 2)));
  EXPECT_EQ(max_order(vec(a(0, 2)) + vec(c(1, 3))), 3);
}

TEST(WeightSlices, BasisAndKernels) {
  const TruncatedDlm mod{Rational(0), Rational(1, 2), 3};
  for (const auto& v : weight_basis(mod, Rational(0))) EXPECT_EQ(mod.weight(v), Rational(0));
  EXPECT_EQ(weight_basis(mod, Rational(1, 3)).size(), 0u);
  // (ker A ∩ ker B)^0 spanned by d_{0,0} when λ = 0, μ = 1/2
  const Subspace inv = kernel_slice(mod, {Gen::A, Gen::B}, Rational(0));
  ASSERT_EQ(inv.dim(), 1u);
  EXPECT_TRUE(inv.contains(vec(d(0, 0))));
  EXPECT_THROW(kernel_slice(mod, {}, Rational(0)), std::invalid_argument);
}

TEST(WeightSlices, IdentityIsInvariantWhenDensitiesAgree) {
  const TruncatedDlm mod{Rational(5, 2), Rational(5, 2), 3};
  const Subspace inv = kernel_slice(mod, {Gen::A, Gen::B}, Rational(0));
  EXPECT_EQ(inv.dim(), 1u);
  EXPECT_TRUE(inv.contains(vec(a(0, 0))));
  EXPECT_TRUE(kernel_slice(mod, {Gen::X, Gen::Y}, Rational(0)).contains(vec(a(0, 0))));
}

TEST(WeightSlices, QuotientAndComplement) {
  const TruncatedDlm mod{Rational(1, 3), Rational(5, 6), 3};
  const Subspace full = full_slice(mod, Rational(-1, 2));
  const Subspace ka = kernel_slice(mod, {Gen::A}, Rational(-1, 2));
  EXPECT_TRUE(full.contains(ka));
  const Subspace comp = complement(ka, full);
  EXPECT_EQ(comp.dim() + ka.dim(), full.dim());
  EXPECT_EQ(intersection(comp, ka).dim(), 0u);
  EXPECT_EQ(quotient_dim(full, ka), comp.dim());
  EXPECT_THROW(quotient_dim(ka, full), NotContained);
}

TEST(WeightSlices, AIsOnto) {
  for (const auto& mod : testsupport::sample_modules()) EXPECT_TRUE(a_is_onto(mod));
}
