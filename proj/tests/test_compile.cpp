/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/compile.hpp"
#include "hubo/statevector.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

using namespace hubo;
using hubo::testing::random_polynomial;

namespace {

std::vector<QubitSet> groups_of(std::size_t q, std::size_t size) {
  std::vector<QubitSet> out;
  for (std::uint32_t a = 0; a < q; a += static_cast<std::uint32_t>(size)) {
    QubitSet g;
    for (std::uint32_t b = a; b < std::min<std::size_t>(q, a + size); ++b)
      g.push_back(b);
    out.push_back(g);
  }
  return out;
}

// Largest deviation of the compiled layer from exp(-i gamma E_b), over all b.
// run_circuit applies the dropped global phase.
double phase_error(const PauliPolynomial& poly, const Circuit& layer, double gamma) {
  const std::size_t q = poly.num_qubits();
  StateVector state = run_circuit(layer, StateVector::uniform(q));
  const auto diag = diagonal_of(poly);
  const double amp = 1.0 / std::sqrt(static_cast<double>(state.size()));
  double worst = 0.0;
  for (std::uint64_t b = 0; b < state.size(); ++b) {
    const Amplitude expected = std::polar(amp, -gamma * diag[b]);
    worst = std::max(worst, std::abs(state[b] - expected) / amp);
  }
  return worst;
}

std::size_t count_kind(const Circuit& c, GateKind kind) {
  std::size_t k = 0;
  for (const Gate& g : c.gates())
    k += g.kind == kind;
  return k;
}

} // namespace

TEST(Chain, SingleTermGadget) {
  double phase = 0.0;
  auto gates = compile_term_chain({0, 2, 3}, 0.5, 0.3, &phase);
  std::size_t cnots = 0, rz = 0;
  for (const Gate& g : gates) {
    cnots += g.kind == GateKind::CNOT;
    if (g.kind == GateKind::RZ) {
      ++rz;
      EXPECT_DOUBLE_EQ(g.angle, 2 * 0.3 * 0.5);
      EXPECT_EQ(g.target, 3u);
    }
  }
  EXPECT_EQ(cnots, 4u);
  EXPECT_EQ(rz, 1u);
}

TEST(Gray, SequenceVisitsEverySubsetByUnitSteps) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto seq = gray_sequence(d);
    ASSERT_EQ(seq.size(), (std::size_t{1} << d) - 1);
    std::set<std::uint32_t> seen(seq.begin(), seq.end());
    EXPECT_EQ(seen.size(), seq.size());
    EXPECT_EQ(seen.count(0u), 0u);
    for (std::size_t k = 1; k < seq.size(); ++k)
      EXPECT_EQ(std::popcount(seq[k] ^ seq[k - 1]), 1);
  }
}

TEST(Gray, DenseCounts) {
  const std::size_t expected_cnot[] = {0, 0, 2, 6, 14, 30, 62};
  for (std::size_t d = 1; d <= 6; ++d) {
    QubitSet qubits;
    std::map<std::uint32_t, double> coeffs;
    for (std::uint32_t a = 0; a < d; ++a)
      qubits.push_back(a);
    for (std::uint32_t s = 1; s < (1u << d); ++s)
      coeffs[s] = 0.1 * s;
    Circuit c(d);
    for (const Gate& g : compile_dense_lattice(qubits, coeffs, 0.7))
      c.append(g);
    EXPECT_EQ(count_kind(c, GateKind::CNOT), expected_cnot[d]) << "d=" << d;
    EXPECT_EQ(count_kind(c, GateKind::RZ), (std::size_t{1} << d) - 1) << "d=" << d;
    // At d = 2 both need two CNOTs; the lattice wins from d = 3 on.
    if (d == 2) {
      EXPECT_EQ(count_kind(c, GateKind::CNOT), dense_chain_cnot_count(d));
    } else if (d > 2) {
      EXPECT_LT(count_kind(c, GateKind::CNOT), dense_chain_cnot_count(d));
    }
  }
  EXPECT_EQ(dense_chain_cnot_count(3), 10u);
  EXPECT_EQ(dense_chain_cnot_count(4), 34u);
}

TEST(Gray, DenseLatticePhases) {
  for (std::size_t d = 1; d <= 5; ++d) {
    PauliPolynomial poly(d);
    std::map<std::uint32_t, double> coeffs;
    QubitSet qubits;
    for (std::uint32_t a = 0; a < d; ++a)
      qubits.push_back(a);
    SplitMix64 rng(d);
    for (std::uint32_t s = 1; s < (1u << d); ++s) {
      coeffs[s] = rng.uniform() - 0.5;
      QubitSet t;
      for (std::uint32_t a = 0; a < d; ++a)
        if ((s >> a) & 1u)
          t.push_back(a);
      poly.add_term(t, coeffs[s]);
    }
    Circuit c(d);
    for (const Gate& g : compile_dense_lattice(qubits, coeffs, 0.9))
      c.append(g);
    EXPECT_LT(phase_error(poly, c, 0.9), 1e-9);
  }
}

TEST(CompileProperties, PhaseEquivalenceAllStrategies) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t q = 1 + rng() % 10;
    const auto poly = random_polynomial(q, 1 + rng() % 30, std::min<std::size_t>(q, 5), rng());
    const double gamma = 4.0 * rng.uniform() - 2.0;
    const auto registers = groups_of(q, 1 + rng() % 4);
    for (Strategy s : {Strategy::chain, Strategy::gray, Strategy::best}) {
      Circuit layer = compile_cost_layer(poly, gamma, s, registers);
      EXPECT_LT(phase_error(poly, layer, gamma), 1e-9)
          << "trial " << trial << " strategy " << to_string(s);
    }
    Circuit plain = compile_cost_layer(poly, gamma, Strategy::gray);
    EXPECT_LT(phase_error(poly, plain, gamma), 1e-9);
  }
}

TEST(CompileProperties, BasisStatesStayBasisStates) {
  const auto poly = random_polynomial(6, 25, 4, 8);
  for (Strategy s : {Strategy::chain, Strategy::gray}) {
    Circuit layer = compile_cost_layer(poly, 0.4, s, groups_of(6, 3));
    for (std::uint64_t b = 0; b < 64; b += 5) {
      StateVector out = run_circuit(layer, StateVector::basis(6, b));
      EXPECT_NEAR(std::abs(out[b]), 1.0, 1e-12);
    }
  }
}

TEST(CompileProperties, DenseBoundDominates) {
  const CopInstance instances[] = {gap_instance(builtin_gap_benchmark(), 0.0),
                                   builtin_mkcs_benchmark(), builtin_ip_benchmark()};
  for (const CopInstance& inst : instances)
    for (Encoding e : {Encoding::qubo, Encoding::hubo}) {
      EncodedProblem ep = encode(inst, e, 0.0);
      const auto bound = scaling_formulas(inst.num_variables(), inst.num_values(), e);
      for (Strategy s : {Strategy::chain, Strategy::gray, Strategy::best}) {
        const auto r = layer_resources(ep.hamiltonian, s, ep.layout.registers(), 1);
        EXPECT_LE(r.cnot_per_layer, bound.cnot_per_layer);
        EXPECT_LE(r.rz_per_layer, bound.rz_per_layer);
        EXPECT_EQ(r.rx_per_layer, bound.rx_per_layer);
      }
    }
}

TEST(Resources, BenchmarkCounts) {
  struct Row {
    CopInstance inst;
    std::size_t qubo_cnot, qubo_rz, hubo_chain, hubo_rz;
  };
  const Row rows[] = {{gap_instance(builtin_gap_benchmark(), 0.0), 140, 90, 76, 27},
                      {builtin_mkcs_benchmark(), 132, 86, 90, 27}};
  for (const Row& row : rows) {
    EncodedProblem q = encode(row.inst, Encoding::qubo, 0.0);
    EncodedProblem h = encode(row.inst, Encoding::hubo, 0.0);
    for (Strategy s : {Strategy::chain, Strategy::gray, Strategy::best}) {
      const auto r = layer_resources(q.hamiltonian, s, q.layout.registers(), 1);
      EXPECT_EQ(r.cnot_per_layer, row.qubo_cnot);
      EXPECT_EQ(r.rz_per_layer, row.qubo_rz);
    }
    const auto chain = layer_resources(h.hamiltonian, Strategy::chain, h.layout.registers(), 1);
    EXPECT_EQ(chain.cnot_per_layer, row.hubo_chain);
    EXPECT_EQ(chain.rz_per_layer, row.hubo_rz);
    const auto best = layer_resources(h.hamiltonian, Strategy::best, h.layout.registers(), 1);
    EXPECT_LE(best.cnot_per_layer, chain.cnot_per_layer);
  }
}

TEST(Resources, FullCircuitTotals) {
  EncodedProblem h = encode(builtin_mkcs_benchmark(), Encoding::hubo, 0.0);
  Circuit c = qaoa_circuit(h.hamiltonian, {0.1, 0.2, 0.3}, {0.3, 0.2, 0.1}, Strategy::chain,
                           h.layout.registers());
  const ResourceReport r = count_resources(c, 3);
  EXPECT_EQ(r.cnot_total(), 270u);
  EXPECT_EQ(r.rz_total(), 81u);
  EXPECT_EQ(r.rx_total(), 30u);
  EXPECT_EQ(r.hadamard_init, 10u);
  EXPECT_EQ(r, layer_resources(h.hamiltonian, Strategy::chain, h.layout.registers(), 3));
  EXPECT_EQ(r.total_gates(), 270u + 81u + 30u + 10u);
}

TEST(Resources, ScalingFormulas) {
  const auto q = scaling_formulas(5, 4, Encoding::qubo);
  EXPECT_EQ(q.num_qubits, 20u);
  EXPECT_EQ(q.rx_per_layer, 20u);
  const auto h = scaling_formulas(5, 4, Encoding::hubo);
  EXPECT_EQ(h.num_qubits, 10u);
  EXPECT_EQ(h.rx_per_layer, 10u);
  EXPECT_LT(h.cnot_per_layer, q.cnot_per_layer);
}

TEST(CircuitModel, RejectsMalformedGates) {
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::cnot(1, 1)), InvalidArgument);
  EXPECT_THROW(c.append(Gate::rz(2, 0.1)), InvalidArgument);
  EXPECT_NO_THROW(c.append(Gate::cnot(0, 1)));
}

TEST(CircuitModel, TextRoundTrip) {
  EncodedProblem h = encode(builtin_mkcs_benchmark(), Encoding::hubo, 0.0);
  Circuit c = qaoa_circuit(h.hamiltonian, {0.1, 0.2}, {0.3, 0.2}, Strategy::gray,
                           h.layout.registers());
  std::stringstream text;
  write_circuit(text, c);
  Circuit back = read_circuit(text, c.num_qubits());
  ASSERT_EQ(back.gates().size(), c.gates().size());
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    EXPECT_EQ(back.gates()[k].kind, c.gates()[k].kind);
    EXPECT_EQ(back.gates()[k].target, c.gates()[k].target);
    EXPECT_NEAR(back.gates()[k].angle, c.gates()[k].angle, 1e-15);
  }
}

TEST(Strategies, ParseAndPrint) {
  for (Strategy s : {Strategy::chain, Strategy::gray, Strategy::best})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_THROW(parse_strategy("fastest"), InvalidArgument);
}
