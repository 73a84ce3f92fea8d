/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/encode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace hubo {

// --- PauliPolynomial --------------------------------------------------------

void PauliPolynomial::add_term(std::span<const std::uint32_t> qubits, double c) {
  QubitSet key(qubits.begin(), qubits.end());
  std::sort(key.begin(), key.end());
  // Z_q Z_q = I: drop indices that occur an even number of times.
  QubitSet reduced;
  for (std::size_t k = 0; k < key.size();) {
    std::size_t run = k;
    while (run < key.size() && key[run] == key[k])
      ++run;
    if ((run - k) % 2 == 1)
      reduced.push_back(key[k]);
    k = run;
  }
  for (std::uint32_t q : reduced)
    if (q >= num_qubits_)
      throw InvalidArgument("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(num_qubits_) + " qubits");
  if (c == 0.0)
    return;
  auto [it, inserted] = terms_.try_emplace(std::move(reduced), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0)
      terms_.erase(it);
  }
}

void PauliPolynomial::prune(double relative) {
  double largest = 0.0;
  for (const auto& [_, c] : terms_)
    largest = std::max(largest, std::abs(c));
  const double cutoff = relative * largest;
  std::erase_if(terms_, [cutoff](const auto& kv) { return std::abs(kv.second) < cutoff; });
}

double PauliPolynomial::coefficient(const QubitSet& qubits) const {
  auto it = terms_.find(qubits);
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t PauliPolynomial::num_nonidentity_terms() const {
  return terms_.size() - (terms_.contains(QubitSet{}) ? 1 : 0);
}

std::vector<std::size_t> PauliPolynomial::order_census() const {
  std::vector<std::size_t> census(1, 0);
  for (const auto& [key, _] : terms_) {
    if (census.size() <= key.size())
      census.resize(key.size() + 1, 0);
    ++census[key.size()];
  }
  return census;
}

double PauliPolynomial::max_abs_coefficient() const {
  double largest = 0.0;
  for (const auto& [key, c] : terms_)
    if (!key.empty())
      largest = std::max(largest, std::abs(c));
  return largest;
}

PauliPolynomial PauliPolynomial::scaled(double alpha) const {
  PauliPolynomial out(num_qubits_);
  for (const auto& [key, c] : terms_)
    out.add_term(key, alpha * c);
  return out;
}

// --- layout -----------------------------------------------------------------

const char* to_string(Encoding e) {
  return e == Encoding::qubo ? "qubo" : "hubo";
}

Encoding parse_encoding(const std::string& text) {
  if (text == "qubo")
    return Encoding::qubo;
  if (text == "hubo")
    return Encoding::hubo;
  throw InvalidArgument("unknown encoding '" + text + "'");
}

std::size_t bits_for_values(std::size_t m) {
  if (m == 0)
    throw InvalidArgument("number of values must be positive");
  return m == 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
}

std::uint32_t QubitLayout::qubit_of(std::size_t i, std::size_t slot) const {
  const std::size_t width = qubits_per_variable();
  if (i >= n || slot >= width)
    throw InvalidArgument("layout slot (" + std::to_string(i) + ", " + std::to_string(slot) +
                          ") out of range");
  return static_cast<std::uint32_t>(i * width + slot);
}

std::vector<QubitSet> QubitLayout::registers() const {
  std::vector<QubitSet> out;
  if (encoding == Encoding::qubo) {
    for (std::uint32_t q = 0; q < num_qubits(); ++q)
      out.push_back({q});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    QubitSet block;
    for (std::size_t a = 0; a < d; ++a)
      block.push_back(qubit_of(i, a));
    if (!block.empty())
      out.push_back(std::move(block));
  }
  return out;
}

// --- transforms -------------------------------------------------------------

void walsh_hadamard_inplace(std::span<double> values) {
  const std::size_t size = values.size();
  if (size == 0 || !std::has_single_bit(size))
    throw InvalidArgument("Walsh-Hadamard transform needs a power-of-two length, got " +
                          std::to_string(size));
  for (std::size_t half = 1; half < size; half <<= 1)
    for (std::size_t base = 0; base < size; base += 2 * half)
      for (std::size_t k = base; k < base + half; ++k) {
        const double a = values[k];
        const double b = values[k + half];
        values[k] = a + b;
        values[k + half] = a - b;
      }
}

std::vector<double> wht(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  walsh_hadamard_inplace(out);
  const double norm = 1.0 / static_cast<double>(out.size());
  for (double& x : out)
    x *= norm;
  return out;
}

double r_coefficient(std::uint32_t subset, std::uint32_t v, std::size_t d) {
  if (d < 32 && (subset >> d) != 0)
    throw InvalidArgument("subset mask exceeds " + std::to_string(d) + " bits");
  const double sign = (std::popcount(subset & v) % 2 == 0) ? 1.0 : -1.0;
  return sign / std::ldexp(1.0, static_cast<int>(d));
}

// --- encoders ---------------------------------------------------------------

namespace {

// c * x_a with x = (1 - Z)/2.
void add_binary_linear(PauliPolynomial& poly, std::uint32_t a, double c) {
  poly.add_term({}, c / 2.0);
  poly.add_term({a}, -c / 2.0);
}

// c * x_a * x_b, a != b.
void add_binary_pair(PauliPolynomial& poly, std::uint32_t a, std::uint32_t b, double c) {
  const double k = c / 4.0;
  poly.add_term({}, k);
  poly.add_term({a}, -k);
  poly.add_term({b}, -k);
  poly.add_term({a, b}, k);
}

void add_mask_term(PauliPolynomial& poly, const QubitLayout& layout, std::size_t i,
                   std::uint32_t mask_i, std::size_t j, std::uint32_t mask_j, double c) {
  QubitSet qubits;
  for (std::size_t a = 0; a < layout.d; ++a)
    if ((mask_i >> a) & 1u)
      qubits.push_back(layout.qubit_of(i, a));
  for (std::size_t a = 0; a < layout.d; ++a)
    if ((mask_j >> a) & 1u)
      qubits.push_back(layout.qubit_of(j, a));
  poly.add_term(qubits, c);
}

} // namespace

EncodedProblem encode_qubo(const CopInstance& instance, double lambda_onehot) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  if (lambda_onehot <= 0.0)
    lambda_onehot = default_penalty(instance);
  QubitLayout layout{Encoding::qubo, n, m, bits_for_values(m)};
  PauliPolynomial poly(layout.num_qubits());

  poly.add_term({}, instance.constant());
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t v = 0; v < m; ++v)
      add_binary_linear(poly, layout.qubit_of(i, v), instance.linear(i, v));
  for (const auto& [i, j] : instance.coupled_pairs())
    for (std::uint32_t v = 0; v < m; ++v)
      for (std::uint32_t w = 0; w < m; ++w)
        if (const double c = instance.quadratic(i, j, v, w); c != 0.0)
          add_binary_pair(poly, layout.qubit_of(i, v), layout.qubit_of(j, w), c);

  // lambda (1 - sum_v x_v)^2 = lambda - lambda sum_v x_v + 2 lambda sum_{v<w} x_v x_w
  for (std::size_t i = 0; i < n; ++i) {
    poly.add_term({}, lambda_onehot);
    for (std::uint32_t v = 0; v < m; ++v) {
      add_binary_linear(poly, layout.qubit_of(i, v), -lambda_onehot);
      for (std::uint32_t w = v + 1; w < m; ++w)
        add_binary_pair(poly, layout.qubit_of(i, v), layout.qubit_of(i, w), 2.0 * lambda_onehot);
    }
  }
  poly.prune(kPruneRelative);
  return {std::move(poly), layout, lambda_onehot};
}

EncodedProblem encode_hubo(const CopInstance& instance, double lambda_invalid) {
  const std::size_t n = instance.num_variables();
  const std::size_t m = instance.num_values();
  if (lambda_invalid <= 0.0)
    lambda_invalid = default_penalty(instance);
  QubitLayout layout{Encoding::hubo, n, m, bits_for_values(m)};
  const std::size_t d = layout.d;
  const std::size_t width = std::size_t{1} << d;
  PauliPolynomial poly(layout.num_qubits());

  poly.add_term({}, instance.constant());
  std::vector<double> costs(width);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < width; ++v)
      costs[v] = v < m ? instance.linear(i, static_cast<std::uint32_t>(v)) : lambda_invalid;
    const auto coeffs = wht(costs);
    for (std::uint32_t mask = 0; mask < width; ++mask)
      add_mask_term(poly, layout, i, mask, i, 0, coeffs[mask]);
  }

  std::vector<double> block(width * width);
  for (const auto& [i, j] : instance.coupled_pairs()) {
    std::fill(block.begin(), block.end(), 0.0);
    bool any = false;
    for (std::uint32_t v = 0; v < m; ++v)
      for (std::uint32_t w = 0; w < m; ++w) {
        const double c = instance.quadratic(i, j, v, w);
        block[v + (std::size_t{w} << d)] = c;
        any = any || c != 0.0;
      }
    if (!any)
      continue;
    // Two-sided transform of the m x m block is the transform over 2d bits.
    const auto coeffs = wht(block);
    const std::uint32_t low = static_cast<std::uint32_t>(width - 1);
    for (std::uint32_t mask = 0; mask < width * width; ++mask)
      add_mask_term(poly, layout, i, mask & low, j, mask >> d, coeffs[mask]);
  }
  poly.prune(kPruneRelative);
  return {std::move(poly), layout, lambda_invalid};
}

EncodedProblem encode(const CopInstance& instance, Encoding encoding, double penalty) {
  return encoding == Encoding::qubo ? encode_qubo(instance, penalty)
                                    : encode_hubo(instance, penalty);
}

// --- diagonal ---------------------------------------------------------------

std::vector<double> diagonal_of(const PauliPolynomial& poly, std::size_t cap) {
  const std::size_t q = poly.num_qubits();
  if (q > cap || q >= 63)
    throw InvalidArgument("diagonal of " + std::to_string(q) + " qubits exceeds cap of " +
                          std::to_string(cap));
  std::vector<double> diag(std::size_t{1} << q, 0.0);
  for (const auto& [key, c] : poly.terms()) {
    std::uint64_t mask = 0;
    for (std::uint32_t qubit : key)
      mask |= std::uint64_t{1} << qubit;
    diag[mask] += c;
  }
  // diag[b] = sum_S J_S (-1)^{|S & b|}, the unnormalized transform of J.
  walsh_hadamard_inplace(diag);
  return diag;
}

double diagonal_entry(const PauliPolynomial& poly, std::uint64_t basis) {
  double total = 0.0;
  for (const auto& [key, c] : poly.terms()) {
    int parity = 0;
    for (std::uint32_t qubit : key)
      parity ^= static_cast<int>((basis >> qubit) & 1u);
    total += parity ? -c : c;
  }
  return total;
}

std::uint64_t encode_assignment(std::span<const std::uint32_t> s, const QubitLayout& layout) {
  if (s.size() != layout.n)
    throw InvalidArgument("assignment length " + std::to_string(s.size()) +
                          " does not match layout with " + std::to_string(layout.n) +
                          " variables");
  if (layout.num_qubits() >= 64)
    throw InvalidArgument("bitstring wider than 64 qubits");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= layout.m)
      throw InvalidArgument("assignment entry " + std::to_string(i) + " out of range");
    if (layout.encoding == Encoding::qubo) {
      bits |= std::uint64_t{1} << layout.qubit_of(i, s[i]);
    } else {
      for (std::size_t a = 0; a < layout.d; ++a)
        if ((s[i] >> a) & 1u)
          bits |= std::uint64_t{1} << layout.qubit_of(i, a);
    }
  }
  return bits;
}

// --- text format ------------------------------------------------------------

void write_polynomial(std::ostream& out, const PauliPolynomial& poly) {
  const auto precision = out.precision();
  out << "# num_qubits " << poly.num_qubits() << "\n" << std::setprecision(17);
  for (const auto& [key, c] : poly.terms()) {
    for (std::uint32_t q : key)
      out << q << " ";
    out << c << "\n";
  }
  out.precision(precision);
}

PauliPolynomial read_polynomial(std::istream& in) {
  std::string line;
  std::size_t num_qubits = 0;
  bool have_header = false;
  std::vector<std::pair<QubitSet, double>> terms;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first))
      continue;
    if (first == "#") {
      std::string tag;
      if (fields >> tag && tag == "num_qubits" && fields >> num_qubits)
        have_header = true;
      continue;
    }
    std::vector<std::string> tokens{first};
    for (std::string t; fields >> t;)
      tokens.push_back(t);
    QubitSet key;
    for (std::size_t k = 0; k + 1 < tokens.size(); ++k)
      key.push_back(static_cast<std::uint32_t>(std::stoul(tokens[k])));
    terms.emplace_back(std::move(key), std::stod(tokens.back()));
  }
  if (!have_header)
    throw InvalidArgument("polynomial text lacks '# num_qubits' header");
  PauliPolynomial poly(num_qubits);
  for (const auto& [key, c] : terms)
    poly.add_term(key, c);
  return poly;
}

} // namespace hubo
