/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/cop.hpp"
#include "hubo/metrics.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hubo;
using hubo::testing::all_assignments;
using hubo::testing::random_instance;

TEST(CopInstance, EmptyInstanceEvaluatesToConstant) {
  CopInstance inst(3, 2);
  inst.add_constant(1.5);
  Assignment s{0, 1, 1};
  EXPECT_DOUBLE_EQ(inst.evaluate(s), 1.5);
  EXPECT_TRUE(inst.feasible(s));
}

TEST(CopInstance, QuadraticAcceptsEitherOrientation) {
  CopInstance inst(2, 3);
  inst.add_quadratic(1, 0, 2, 1, 4.0);
  EXPECT_DOUBLE_EQ(inst.quadratic(0, 1, 1, 2), 4.0);
  EXPECT_DOUBLE_EQ(inst.quadratic(1, 0, 2, 1), 4.0);
  EXPECT_DOUBLE_EQ(inst.evaluate(Assignment{1, 2}), 4.0);
  EXPECT_DOUBLE_EQ(inst.evaluate(Assignment{2, 1}), 0.0);
}

TEST(CopInstance, RejectsBadIndices) {
  CopInstance inst(2, 3);
  EXPECT_THROW(inst.add_linear(2, 0, 1.0), InvalidArgument);
  EXPECT_THROW(inst.add_linear(0, 3, 1.0), InvalidArgument);
  EXPECT_THROW(inst.add_quadratic(1, 1, 0, 0, 1.0), InvalidArgument);
  EXPECT_THROW(inst.evaluate(Assignment{0}), InvalidArgument);
  EXPECT_THROW(inst.evaluate(Assignment{0, 3}), InvalidArgument);
}

TEST(CopInstance, PenaltyLayerIsSeparateFromObjective) {
  CopInstance inst(2, 2);
  inst.add_linear(0, 1, 3.0);
  inst.add_constraint(Constraint{0, 1, 1, 1, 10.0});
  Assignment bad{1, 1};
  EXPECT_DOUBLE_EQ(inst.objective(bad), 3.0);
  EXPECT_DOUBLE_EQ(inst.evaluate(bad), 13.0);
  EXPECT_FALSE(inst.feasible(bad));
  EXPECT_TRUE(inst.feasible(Assignment{1, 0}));
}

TEST(CopProperties, ScalingIsLinear) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CopInstance inst = random_instance(3, 3, seed);
    CopInstance scaled = scale(inst, -2.5);
    for (const Assignment& s : all_assignments(3, 3))
      EXPECT_NEAR(scaled.evaluate(s), -2.5 * inst.evaluate(s), 1e-9);
  }
}

TEST(CopProperties, NotEqualPenaltyLeavesProperColoringsAlone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CopInstance inst = random_instance(4, 3, seed);
    std::vector<VariablePair> pairs{{0, 1}, {1, 3}, {2, 3}};
    CopInstance pen = add_not_equal_penalty(inst, pairs, 7.0);
    for (const Assignment& s : all_assignments(4, 3)) {
      bool distinct = std::all_of(pairs.begin(), pairs.end(),
                                  [&](const VariablePair& p) { return s[p.first] != s[p.second]; });
      if (distinct)
        EXPECT_NEAR(pen.evaluate(s), inst.evaluate(s), 1e-12);
      else
        EXPECT_GE(pen.evaluate(s), inst.evaluate(s) + 7.0 - 1e-9);
      EXPECT_EQ(pen.feasible(s), distinct && inst.feasible(s));
    }
  }
}

TEST(CopProperties, FixingCommutesWithEvaluate) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = 2; m <= 4; ++m) {
      CopInstance inst = random_instance(n, m, 100 * n + m, true);
      for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t v = 0; v < m; ++v) {
          CopInstance fixed = fix_variable(inst, i, v);
          ASSERT_EQ(fixed.num_variables(), n - 1);
          for (const Assignment& rest : all_assignments(n - 1, m)) {
            Assignment full = rest;
            full.insert(full.begin() + static_cast<std::ptrdiff_t>(i), v);
            EXPECT_NEAR(fixed.evaluate(rest), inst.evaluate(full), 1e-9);
            EXPECT_NEAR(fixed.objective(rest), inst.objective(full), 1e-9);
            EXPECT_EQ(fixed.feasible(rest), inst.feasible(full));
          }
        }
    }
}

TEST(CopProperties, FixingAnAllZeroInstance) {
  CopInstance inst(4, 3);
  CopInstance fixed = fix_variable(inst, 2, 1);
  EXPECT_EQ(fixed.num_variables(), 3u);
  for (const Assignment& s : all_assignments(3, 3))
    EXPECT_EQ(fixed.evaluate(s), 0.0);
}

TEST(CopProperties, RemovingDropsTouchingTerms) {
  CopInstance inst = random_instance(4, 3, 5, true);
  CopInstance removed = remove_variable(inst, 1);
  ASSERT_EQ(removed.num_variables(), 3u);
  for (const VariablePair& p : removed.coupled_pairs())
    EXPECT_LT(p.second, 3u);
  for (const Constraint& c : removed.constraints()) {
    EXPECT_LT(c.i, 3u);
    if (!c.unary()) {
      EXPECT_LT(c.j, 3u);
    }
  }
}

namespace {

std::size_t monochromatic(const std::vector<VariablePair>& edges, const Assignment& s) {
  std::size_t count = 0;
  for (const auto& [a, b] : edges)
    count += s[a] == s[b];
  return count;
}

} // namespace

TEST(Mkcs, EvaluateCountsMonochromaticEdges) {
  std::vector<VariablePair> edges;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b)
      if ((a + b) % 3 != 0)
        edges.push_back({a, b});
  for (std::size_t vertices = 2; vertices <= 5; ++vertices)
    for (std::size_t k = 2; k <= 4; ++k) {
      std::vector<VariablePair> sub;
      for (const auto& e : edges)
        if (e.second < vertices)
          sub.push_back(e);
      CopInstance inst = mkcs_instance(sub, vertices, k);
      for (const Assignment& s : all_assignments(vertices, k))
        EXPECT_DOUBLE_EQ(inst.evaluate(s), static_cast<double>(monochromatic(sub, s)));
    }
}

TEST(Mkcs, BuiltinIsK5MinusAnEdge) {
  CopInstance inst = builtin_mkcs_benchmark();
  EXPECT_EQ(inst.num_variables(), 5u);
  EXPECT_EQ(inst.num_values(), 4u);
  EXPECT_EQ(inst.coupled_pairs().size(), 9u);
}

TEST(Mkcs, FixingAVertexMatchesExhaustively) {
  CopInstance inst = builtin_mkcs_benchmark();
  CopInstance fixed = fix_variable(inst, 4, 0);
  ASSERT_EQ(fixed.num_variables(), 4u);
  for (const Assignment& rest : all_assignments(4, 4)) {
    Assignment full = rest;
    full.push_back(0);
    EXPECT_DOUBLE_EQ(fixed.evaluate(rest), inst.evaluate(full));
  }
}

TEST(Gap, BuiltinShapeAndValidation) {
  GapData data = builtin_gap_benchmark();
  EXPECT_NO_THROW(data.validate());
  EXPECT_EQ(data.num_flights(), 5u);
  EXPECT_EQ(data.num_gates(), 4u);
  GapData broken = data;
  broken.walk_trans[0][1] += 1.0;
  EXPECT_THROW(broken.validate(), InvalidArgument);
  broken = data;
  broken.conflicts.push_back({0, 9});
  EXPECT_THROW(broken.validate(), InvalidArgument);
}

TEST(Gap, ConflictsAreHardConstraints) {
  GapData data = builtin_gap_benchmark();
  CopInstance inst = gap_instance(data, 0.0);
  ASSERT_FALSE(data.conflicts.empty());
  Assignment s(data.num_flights(), 0);
  EXPECT_FALSE(inst.feasible(s));
  EXPECT_GT(inst.evaluate(s), inst.objective(s));
}

TEST(Gap, FixingLadderSizes) {
  CopInstance inst = gap_instance(builtin_gap_benchmark(), 0.0);
  GroundTruth truth = brute_force(inst);
  std::vector<std::size_t> sizes;
  CopInstance cur = inst;
  sizes.push_back(cur.num_variables() * cur.num_values());
  for (std::size_t k = inst.num_variables(); k-- > 1;) {
    cur = fix_variable(cur, k, truth.argmin[k]);
    sizes.push_back(cur.num_variables() * cur.num_values());
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{20, 16, 12, 8, 4}));
  GroundTruth sub = brute_force(cur);
  EXPECT_NEAR(sub.c_min, truth.c_min, 1e-9);
}

TEST(Ip, BuiltinShape) {
  CopInstance inst = builtin_ip_benchmark();
  EXPECT_EQ(inst.num_variables(), 4u);
  EXPECT_EQ(inst.num_values(), 4u);
  EXPECT_FALSE(inst.constraints().empty());
}

TEST(Penalty, DefaultIsTwiceTheCoefficientBound) {
  CopInstance inst(2, 2);
  inst.add_linear(0, 0, -3.0);
  inst.add_quadratic(0, 1, 1, 1, 2.0);
  EXPECT_DOUBLE_EQ(default_penalty(inst), 2.0 * (3.0 + 2.0));
}
