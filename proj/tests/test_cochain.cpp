#include "ospcoh/cochain.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ospcoh;
using testsupport::random_cochain;

namespace {

const TruncatedDlm kGeneric{Rational(1, 3), Rational(5, 7), 3};
const SuperMonomial kAB = SuperMonomial::parse("A B");

}  // namespace

TEST(Cochain, ParityInvariantEnforced) {
  Cochain f(1, 0, kGeneric);
  EXPECT_NO_THROW(f.set(SuperMonomial::parse("H"), vec(a(0, 0))));
  EXPECT_NO_THROW(f.set(SuperMonomial::parse("B"), vec(c(0, 0))));
  EXPECT_THROW(f.set(SuperMonomial::parse("B"), vec(a(0, 0))), std::invalid_argument);
  EXPECT_THROW(f.set(SuperMonomial::parse("A B"), vec(a(0, 0))), std::invalid_argument);
  f.set(SuperMonomial::parse("H"), {});
  EXPECT_EQ(f.values.size(), 1u);
}

TEST(Evaluate, GradedSigns) {
  Cochain f(2, 0, kGeneric);
  f.set(kAB, vec(a(1, 1)));
  EXPECT_EQ(evaluate(f, {Gen::B, Gen::A}), vec(a(1, 1)));
  EXPECT_TRUE(evaluate(f, {Gen::H, Gen::H}).empty());
  Cochain g(3, 1, kGeneric);
  g.set(SuperMonomial::parse("H B Y"), vec(a(0, 1)));
  // (Y,H,B) → (H,Y,B) → (H,B,Y)
  EXPECT_EQ(evaluate(g, {Gen::Y, Gen::H, Gen::B}), vec(a(0, 1)));
  EXPECT_EQ(evaluate(g, {Gen::B, Gen::H, Gen::Y}), vec(a(0, 1), Rational(-1)));
  EXPECT_THROW(evaluate(g, {Gen::H}), std::invalid_argument);
}

TEST(Coboundary, ZeroCochain) {
  for (int par : {0, 1}) {
    Cochain v(0, par, kGeneric);
    const BasisVector bv = par == 0 ? b(1, 2) : c(2, 1);
    v.set(SuperMonomial{}, vec(bv));
    const Cochain dv = coboundary(v);
    for (Gen u : kGenerators) {
      const ModuleVector expected = scaled(act(kGeneric, u, bv), Rational(parity_sign(par * parity(u))));
      EXPECT_EQ(evaluate(dv, {u}), expected);
    }
  }
}

TEST(Coboundary, ReducedOneCochainOnAB) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain f = random_cochain(rng, kGeneric, 1, 0, 3, 0.5);
    f.set(SuperMonomial::parse("A"), {});
    // (∂f)(AB) = A·f(B) − f([A,B]) with [A,B] = −2H
    ModuleVector expected = act(kGeneric, Gen::A, evaluate(f, {Gen::B}));
    axpy(expected, Rational(2), evaluate(f, {Gen::H}));
    EXPECT_EQ(coboundary(f).at(kAB), expected);
  }
}

TEST(Coboundary, SquaresToZeroOnRandomCochains) {
  std::mt19937 rng(50);
  int count = 0;
  for (const auto& mod : testsupport::sample_modules())
    for (int n = 0; n <= 2; ++n)
      for (int par : {0, 1})
        for (int trial = 0; trial < 3; ++trial, ++count) {
          const Cochain f = random_cochain(rng, mod, n, par);
          const Cochain df = coboundary(f);
          EXPECT_EQ(df.parity, f.parity);
          EXPECT_TRUE(coboundary(df).is_zero()) << "n=" << n << " par=" << par;
        }
  EXPECT_GE(count, 50);
}

TEST(Coboundary, PreservesCochainWeight) {
  std::mt19937 rng(8);
  const Cochain f = random_cochain(rng, kGeneric, 1, 1);
  for (const auto& [w, fw] : weight_components(f))
    for (const auto& [w2, part] : weight_components(coboundary(fw))) EXPECT_EQ(w2, w);
}

TEST(Coboundary, StencilMatchesDirectFormula) {
  std::mt19937 rng(9);
  for (int n = 0; n <= 3; ++n)
    for (int par : {0, 1}) {
      const Cochain f = random_cochain(rng, kGeneric, n, par, 2, 0.2);
      for (const auto& [w, fw] : weight_components(f)) {
        const CellBasis dom = cell_basis(kGeneric, Algebra::osp, n, w, par);
        const CellBasis cod = cell_basis(kGeneric, Algebra::osp, n + 1, w, par);
        const SparseMatrix m = coboundary_matrix(kGeneric, coboundary_stencil(adopted_table(), Algebra::osp, n), dom, cod);
        EXPECT_EQ(m.multiply(to_cells(fw.values, dom)), to_cells(coboundary(fw).values, cod));
      }
    }
}

TEST(Reduced, Predicates) {
  EXPECT_TRUE(is_reduced(Cochain(2, 0, kGeneric)));
  Cochain f(1, 1, kGeneric);
  f.set(SuperMonomial::parse("A"), vec(a(0, 0)));
  EXPECT_FALSE(is_reduced(f));
}

TEST(Reduce, AlreadyReducedIsUnchanged) {
  std::mt19937 rng(4);
  Cochain f = random_cochain(rng, kGeneric, 1, 0);
  f.set(SuperMonomial::parse("A"), {});
  const Reduction r = reduce(f);
  EXPECT_TRUE(r.g.is_zero());
  EXPECT_EQ(r.reduced, f);
}

TEST(Reduce, OneCochainSupportedOnA) {
  Cochain f(1, 1, kGeneric);
  f.set(SuperMonomial::parse("A"), vec(a(1, 2)));
  const Reduction r = reduce(f);
  EXPECT_TRUE(is_reduced(r.reduced));
  EXPECT_EQ(r.reduced, f - coboundary(r.g));
}

TEST(Reduce, RandomCoboundariesAndCochains) {
  std::mt19937 rng(12);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 6; ++trial) {
      const int par = trial % 2;
      const Cochain f = n == 1 ? random_cochain(rng, kGeneric, 1, par) : coboundary(random_cochain(rng, kGeneric, n - 1, par, 2, 0.2));
      const Reduction r = reduce(f);
      EXPECT_TRUE(is_reduced(r.reduced));
      EXPECT_EQ(f - r.reduced, coboundary(r.g));
    }
}

TEST(Restriction, CommutesWithCoboundary) {
  std::mt19937 rng(21);
  for (const auto& mod : testsupport::sample_modules())
    for (int n = 0; n <= 3; ++n)
      for (int par : {0, 1}) {
        const Cochain f = random_cochain(rng, mod, n, par, 2, 0.3);
        EXPECT_EQ(restrict_sl2(coboundary(f)), sl2_coboundary(restrict_sl2(f))) << "n=" << n;
      }
}

TEST(Restriction, FourCochainsVanish) {
  std::mt19937 rng(22);
  EXPECT_TRUE(restrict_sl2(random_cochain(rng, kGeneric, 4, 0, 1, 0.5)).is_zero());
}

TEST(Coboundary, SolvesForPrimitives) {
  std::mt19937 rng(31);
  for (int n = 0; n <= 2; ++n) {
    const Cochain g0 = random_cochain(rng, kGeneric, n, 1, 2, 0.3);
    const Cochain f = coboundary(g0);
    auto g = is_coboundary(f);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(coboundary(*g), f);
  }
  Cochain bad(1, 0, kGeneric);
  bad.set(SuperMonomial::parse("H"), vec(a(0, 0)));
  EXPECT_THROW(is_coboundary(bad), NotACocycle);
}

TEST(ExplicitCocycles, HLambda) {
  for (const Rational& lambda : {Rational(0), Rational(1), Rational(-3, 2), Rational(5, 2)}) {
    const DerivedCocycle h = make_h_lambda(lambda);
    EXPECT_TRUE(coboundary(h.cocycle).is_zero());
    EXPECT_TRUE(is_reduced(h.cocycle));
    EXPECT_FALSE(is_coboundary(h.cocycle).has_value());
    EXPECT_TRUE(evaluate(h.cocycle, {Gen::X}).empty());
    EXPECT_EQ(evaluate(h.cocycle, {Gen::B}), vec(c(0, 0)));
    ASSERT_EQ(h.slots.size(), 3u);
    for (const auto& s : h.slots) EXPECT_FALSE(s.ratio.is_zero()) << name(s.slot);
  }
}

TEST(ExplicitCocycles, FkAndFtildeK) {
  for (int k = 0; k <= 3; ++k) {
    const DerivedCocycle f = make_f_k(k);
    const DerivedCocycle ft = make_ftilde_k(k);
    for (const auto* d : {&f, &ft}) {
      EXPECT_TRUE(coboundary(d->cocycle).is_zero()) << k;
      EXPECT_TRUE(is_reduced(d->cocycle));
      EXPECT_FALSE(is_coboundary(d->cocycle).has_value());
      EXPECT_FALSE(is_sl2_coboundary(restrict_sl2(d->cocycle)).has_value());
      for (const auto& s : d->slots) EXPECT_FALSE(s.ratio.is_zero());
    }
    EXPECT_EQ(evaluate(f.cocycle, {Gen::B}), vec(b(0, k)));
    EXPECT_EQ(evaluate(ft.cocycle, {Gen::B}), vec(a(0, k)));
    EXPECT_TRUE(restrict_sl2(ft.cocycle).at(SuperMonomial::parse("H")).empty());
  }
}

TEST(Cup, ZeroFactorGivesZero) {
  const DerivedCocycle f = make_f_k(1);
  const Cochain zero(1, 0, h_lambda_module(Rational(-1, 2), f.cocycle.module.K));
  EXPECT_TRUE(cup(f.cocycle, zero).is_zero());
}

TEST(Cup, TypeMismatch) {
  const DerivedCocycle f = make_f_k(1);
  EXPECT_THROW(cup(f.cocycle, make_h_lambda(Rational(3)).cocycle), TypeMismatch);
}

TEST(Cup, IsACocycle) {
  for (int k = 0; k <= 2; ++k) {
    const DerivedCocycle f = make_f_k(k);
    const DerivedCocycle h = make_h_lambda(Rational(-k, 2), f.cocycle.module.K);
    const CupResult c = cup_cocycle(f.cocycle, h.cocycle);
    EXPECT_TRUE(coboundary(c.omega).is_zero());
    EXPECT_EQ(c.sign, CupSign::printed);
  }
}
