/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#pragma once

#include "hubo/cop.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace hubo {

/// Sorted, duplicate-free list of qubit indices. The empty set denotes the
/// identity.
using QubitSet = std::vector<std::uint32_t>;

/// Diagonal Hamiltonian as a sum of Pauli-Z monomials.
///
/// Terms are kept in lexicographic order of their index sets, like terms are
/// merged on insertion and exact zeros are never stored.
class PauliPolynomial {
public:
  PauliPolynomial() = default;
  explicit PauliPolynomial(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }

  /// Adds c * Z_{qubits}. Indices may come in any order; repeated indices
  /// cancel in pairs (Z^2 = I).
  void add_term(std::span<const std::uint32_t> qubits, double c);
  void add_term(std::initializer_list<std::uint32_t> qubits, double c) {
    add_term(std::span<const std::uint32_t>(qubits.begin(), qubits.size()), c);
  }

  /// Drops terms with |c| < relative * max|c| (identity included in the max).
  void prune(double relative);

  double coefficient(const QubitSet& qubits) const;
  /// Coefficient of the identity term.
  double constant() const { return coefficient({}); }

  const std::map<QubitSet, double>& terms() const { return terms_; }
  /// Number of stored terms excluding the identity.
  std::size_t num_nonidentity_terms() const;
  /// Histogram of term order (index set size); entry 0 is the identity.
  std::vector<std::size_t> order_census() const;
  /// Largest |coefficient| over non-identity terms.
  double max_abs_coefficient() const;

  PauliPolynomial scaled(double alpha) const;

private:
  std::size_t num_qubits_ = 0;
  std::map<QubitSet, double> terms_;
};

enum class Encoding { qubo, hubo };

const char* to_string(Encoding e);
Encoding parse_encoding(const std::string& text);

/// ceil(log2 m) for m >= 1.
std::size_t bits_for_values(std::size_t m);

/// Maps assignment variables onto qubits.
///
/// QUBO: qubit (i, v) = i*m + v, one qubit per variable/value pair.
/// HUBO: qubit (i, a) = i*d + a, where bit a = 0 is the least significant bit
/// of the value index.
struct QubitLayout {
  Encoding encoding = Encoding::hubo;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;

  std::size_t qubits_per_variable() const { return encoding == Encoding::qubo ? m : d; }
  std::size_t num_qubits() const { return n * qubits_per_variable(); }
  /// QUBO: slot = value index. HUBO: slot = bit index.
  std::uint32_t qubit_of(std::size_t i, std::size_t slot) const;
  /// Groups of qubits treated as one parity register by the Gray-code
  /// compiler. HUBO: the d qubits of each variable. QUBO: every qubit alone.
  std::vector<QubitSet> registers() const;
};

struct EncodedProblem {
  PauliPolynomial hamiltonian;
  QubitLayout layout;
  double penalty = 0.0; // one-hot (QUBO) or invalid-index (HUBO) multiplier
};

/// Relative pruning threshold applied after global term merging.
inline constexpr double kPruneRelative = 1e-12;

/// One-hot QUBO encoding. lambda_onehot <= 0 selects default_penalty.
EncodedProblem encode_qubo(const CopInstance& instance, double lambda_onehot);

/// Binary HUBO encoding with Walsh-Hadamard coefficients. lambda_invalid <= 0
/// selects default_penalty; it is unused when m is a power of two.
EncodedProblem encode_hubo(const CopInstance& instance, double lambda_invalid);

EncodedProblem encode(const CopInstance& instance, Encoding encoding, double penalty);

/// Unnormalized in-place butterfly: out[S] = sum_v (-1)^{|S & v|} in[v].
/// Throws InvalidArgument unless the length is a power of two.
void walsh_hadamard_inplace(std::span<double> values);

/// Normalized transform, (1/2^d) * H^{(x)d} * values, indexed by subset mask.
std::vector<double> wht(std::span<const double> values);

/// (1/2^d) * prod_{a in S} (-1)^{bit a of v}; `subset` is a bit mask over
/// bit positions 0..d-1.
double r_coefficient(std::uint32_t subset, std::uint32_t v, std::size_t d);

/// Default cap on the number of qubits for dense diagonal materialization.
inline constexpr std::size_t kDefaultQubitCap = 24;

/// Diagonal of the Hamiltonian in the computational basis, where bit q of
/// the basis index is the state of qubit q.
std::vector<double> diagonal_of(const PauliPolynomial& poly, std::size_t cap = kDefaultQubitCap);

/// Diagonal entry for a single basis state, evaluated term by term.
double diagonal_entry(const PauliPolynomial& poly, std::uint64_t basis);

/// Canonical bitstring of an assignment under a layout.
std::uint64_t encode_assignment(std::span<const std::uint32_t> s, const QubitLayout& layout);

/// One term per line: qubit indices ascending, then the coefficient with 17
/// significant digits. A leading comment carries the qubit count.
void write_polynomial(std::ostream& out, const PauliPolynomial& poly);
PauliPolynomial read_polynomial(std::istream& in);

} // namespace hubo
