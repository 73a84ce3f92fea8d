/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/instance_io.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hubo;
using hubo::testing::all_assignments;
using hubo::testing::random_instance;

namespace {

CopInstance round_trip(const CopInstance& inst) {
  std::stringstream text;
  write_instance(text, inst);
  return read_instance(text);
}

void expect_same(const CopInstance& a, const CopInstance& b) {
  ASSERT_EQ(a.num_variables(), b.num_variables());
  ASSERT_EQ(a.num_values(), b.num_values());
  for (const Assignment& s : all_assignments(a.num_variables(), a.num_values())) {
    EXPECT_DOUBLE_EQ(a.evaluate(s), b.evaluate(s));
    EXPECT_DOUBLE_EQ(a.objective(s), b.objective(s));
    EXPECT_EQ(a.feasible(s), b.feasible(s));
  }
}

} // namespace

TEST(InstanceIo, GenericRoundTrip) {
  CopInstance inst = random_instance(3, 3, 1, true);
  inst.set_metadata("random test instance");
  CopInstance back = round_trip(inst);
  expect_same(inst, back);
  EXPECT_EQ(back.metadata(), inst.metadata());
  EXPECT_EQ(instance_hash(back), instance_hash(inst));
}

TEST(InstanceIo, BuiltinsRoundTrip) {
  expect_same(gap_instance(builtin_gap_benchmark(), 0.0),
              round_trip(gap_instance(builtin_gap_benchmark(), 0.0)));
  expect_same(builtin_mkcs_benchmark(), round_trip(builtin_mkcs_benchmark()));
  expect_same(builtin_ip_benchmark(), round_trip(builtin_ip_benchmark()));
}

TEST(InstanceIo, GapDataRoundTrip) {
  const GapData data = builtin_gap_benchmark();
  std::stringstream text;
  write_gap_data(text, data, 0.0);
  const GapData back = read_gap_data(text);
  EXPECT_EQ(back.walk_arr, data.walk_arr);
  EXPECT_EQ(back.passengers_arr, data.passengers_arr);
  EXPECT_EQ(back.transfers, data.transfers);
  EXPECT_EQ(back.conflicts, data.conflicts);
}

TEST(InstanceIo, MkcsFormat) {
  std::stringstream text(R"(# a triangle
[meta]
type = mkcs
vertices = 3
colors = 2
[edges]
0 1
1 2
0 2
)");
  CopInstance inst = read_instance(text);
  EXPECT_EQ(inst.num_variables(), 3u);
  EXPECT_EQ(inst.num_values(), 2u);
  EXPECT_DOUBLE_EQ(inst.evaluate(Assignment{0, 0, 0}), 3.0);
  EXPECT_DOUBLE_EQ(inst.evaluate(Assignment{0, 1, 0}), 1.0);
}

TEST(InstanceIo, HashTracksContent) {
  CopInstance a = random_instance(2, 3, 4);
  CopInstance b = a;
  b.add_linear(1, 2, 1e-6);
  EXPECT_NE(instance_hash(a), instance_hash(b));
  EXPECT_EQ(instance_hash(a), instance_hash(random_instance(2, 3, 4)));
}

TEST(InstanceIo, MalformedInputsNameTheLine) {
  const char* bad[] = {
      "n = 2\n",
      "[meta\ntype = cop\n",
      "[meta]\ntype = cop\nn = 2\nm = x\n",
      "[meta]\ntype = cop\nn = 2\nm = 2\n[linear]\n0 1\n",
      "[meta]\ntype = cop\nn = 2\nm = 2\n[linear]\n5 0 1.0\n",
      "[meta]\ntype = widget\n",
      "[meta]\ntype = cop\nm = 2\n",
  };
  for (const char* text : bad) {
    std::stringstream in(text);
    EXPECT_THROW(read_instance(in), ParseError) << text;
  }
}

TEST(InstanceIo, MissingFileIsAnIoError) {
  EXPECT_THROW(load_instance("/nonexistent/dir/instance.txt"), IoError);
  EXPECT_THROW(save_instance("/nonexistent/dir/instance.txt", builtin_mkcs_benchmark()), IoError);
}
