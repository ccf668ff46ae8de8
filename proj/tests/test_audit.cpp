#include "ospcoh/audit.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace ospcoh;

TEST(Audit, RepairsPrintedTable) {
  const auto t0 = std::chrono::steady_clock::now();
  const AuditResult r = audit_and_repair(printed_table());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
  EXPECT_TRUE(r.module_compatible);
  EXPECT_TRUE(satisfies_jacobi(r.table));
  EXPECT_TRUE(is_module_compatible(r.table));
  EXPECT_EQ(r.table.label(), "repaired-V");
  ASSERT_EQ(r.changes.size(), 2u);
  EXPECT_EQ(r.changes[0].pair, "[Y,A]");
  EXPECT_EQ(r.changes[0].to, "B");
  EXPECT_EQ(r.changes[1].pair, "[A,B]");
  EXPECT_EQ(r.changes[1].to, "-2H");
  EXPECT_FALSE(r.jacobi_failures_input.empty());
}

TEST(Audit, MinimalJacobiVariantIsNotAModule) {
  const AuditResult r = audit_and_repair(printed_table());
  ASSERT_EQ(r.jacobi_consistent_variants.size(), 1u);
  ASSERT_EQ(r.jacobi_consistent_variants[0].size(), 1u);
  EXPECT_EQ(r.jacobi_consistent_variants[0][0].pair, "[X,B]");
  StructureTable t = printed_table();
  t.set(Gen::X, Gen::B, Rational(-1) * unit(Gen::A));
  EXPECT_TRUE(satisfies_jacobi(t));
  EXPECT_FALSE(is_module_compatible(t));
}

TEST(Audit, AdoptedTableIsAFixedPoint) {
  const AuditResult r = audit_and_repair(adopted_table());
  EXPECT_TRUE(r.changes.empty());
  EXPECT_EQ(r.table, adopted_table());
}

TEST(Audit, RejectsMalformedInput) {
  StructureTable t = printed_table();
  t.set(Gen::H, Gen::X, unit(Gen::Y));  // breaks weight additivity
  EXPECT_THROW(audit_and_repair(t), std::invalid_argument);
}

TEST(Audit, NoConsistentRepairForBrokenAlgebra) {
  StructureTable t = printed_table();
  t.set(Gen::X, Gen::Y, LieVec{});  // sl(2) part made abelian in one relation
  EXPECT_THROW(audit_and_repair(t), NoConsistentRepair);
}

TEST(Audit, DetectsThePrintedYdRow) {
  const auto rows = audit_action_rows(adopted_table());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].gen, Gen::Y);
  EXPECT_EQ(rows[0].family, Family::d);
}
