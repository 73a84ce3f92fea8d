/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cstddef>

namespace hubo::detail {

inline constexpr std::size_t kLowBlockQubits = 11;
inline constexpr std::size_t kHighGroupQubits = 8;
inline constexpr std::size_t kColumn = 64;

/// Visits every (i, i + 2^k) amplitude pair of a q-qubit state for all k,
/// as calls fn(i, j, len) over runs of len consecutive pairs. Qubit k is
/// finished on a pair before qubit k+1 touches it, and the traversal keeps
/// the working set in cache: the low qubits are done block by block, the
/// rest in groups whose columns stay resident across the group.
template <class Fn>
void sweep_pairs(std::size_t q, Fn&& fn) {
  const std::size_t size = std::size_t{1} << q;
  const std::size_t low = std::min(q, kLowBlockQubits);
  const std::size_t block = std::size_t{1} << low;
  for (std::size_t base = 0; base < size; base += block) {
    if (low > 0)
      fn.first_qubit(base, block / 2);
    for (std::size_t k = 1; k < low; ++k) {
      const std::size_t stride = std::size_t{1} << k;
      for (std::size_t i = base; i < base + block; i += 2 * stride)
        fn(i, i + stride, stride);
    }
  }
  for (std::size_t h0 = low; h0 < q; h0 += kHighGroupQubits) {
    const std::size_t h1 = std::min(q, h0 + kHighGroupQubits);
    const std::size_t rows = std::size_t{1} << (h1 - h0);
    const std::size_t column = std::min(kColumn, std::size_t{1} << h0);
    for (std::size_t hi = 0; hi < (std::size_t{1} << (q - h1)); ++hi)
      for (std::size_t lo = 0; lo < (std::size_t{1} << h0); lo += column) {
        const std::size_t base = (hi << h1) | lo;
        for (std::size_t bit = 1; bit < rows; bit <<= 1)
          for (std::size_t r = 0; r < rows; ++r)
            if (!(r & bit))
              fn(base + (r << h0), base + ((r | bit) << h0), column);
      }
  }
}

} // namespace hubo::detail
