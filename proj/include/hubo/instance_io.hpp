/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

// Text formats for problem instances.
//
// Every file is a list of `[section]` blocks. Blank lines and text after `#`
// are ignored. Sections hold either `key = value` lines or whitespace
// separated rows. All indices are zero-based.
//
// Generic instance (`type = cop`):
//
//   [meta]
//   type = cop
//   n = 2
//   m = 3
//   constant = 0.5
//   metadata = free text
//   [linear]          # i v cost
//   0 1 2.5
//   [quadratic]       # i j v w cost
//   0 1 2 2 1.0
//   [constraints]     # i j v w lambda   (pair)  |  i v lambda   (unary)
//   0 1 0 0 10
//   [labels]          # v label...
//   0 red
//
// The [linear]/[quadratic] sections carry the raw objective only; penalties
// are regenerated from [constraints] on load.
//
// Gate assignment (`type = gap`): [gates] with `walk_arr = ...` and
// `walk_dep = ...`; [walk_trans] rows; [flights] rows `flight arr dep`;
// [transfers] rows `i j passengers`; [conflicts] rows `i j`; optional
// `lambda` in [meta].
//
// Maximum k-colorable subgraph (`type = mkcs`): `vertices` and `colors` in
// [meta]; [edges] rows `i j`.
//
// Integer program (`type = ip`): `domain = y0 y1 ...` and optional `lambda`
// in [meta]; [q] a single row; [Q] n rows; [violations] rows `i j v w`.

#include "hubo/cop.hpp"

#include <iosfwd>
#include <string>

namespace hubo {

/// Thrown on malformed input text; the message carries the line number.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a file cannot be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

CopInstance read_instance(std::istream& in);
CopInstance load_instance(const std::string& path);

void write_instance(std::ostream& out, const CopInstance& instance);
void save_instance(const std::string& path, const CopInstance& instance);

/// Stable 64-bit content hash of the canonical text form.
std::uint64_t instance_hash(const CopInstance& instance);

GapData read_gap_data(std::istream& in);
void write_gap_data(std::ostream& out, const GapData& data, double lambda = 0.0);

} // namespace hubo
