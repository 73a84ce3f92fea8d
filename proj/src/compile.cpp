/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/compile.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace hubo {

const char* to_string(GateKind kind) {
  switch (kind) {
  case GateKind::H:
    return "H";
  case GateKind::RX:
    return "RX";
  case GateKind::RZ:
    return "RZ";
  case GateKind::CNOT:
    return "CNOT";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
  case Strategy::chain:
    return "chain";
  case Strategy::gray:
    return "gray";
  case Strategy::best:
    return "best";
  }
  return "?";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "chain")
    return Strategy::chain;
  if (text == "gray")
    return Strategy::gray;
  if (text == "best")
    return Strategy::best;
  throw InvalidArgument("unknown strategy '" + text + "'");
}

void Circuit::append(const Gate& gate) {
  if (gate.target >= num_qubits_)
    throw InvalidArgument("gate target " + std::to_string(gate.target) + " outside " +
                          std::to_string(num_qubits_) + "-qubit circuit");
  if (gate.kind == GateKind::CNOT) {
    if (gate.control >= num_qubits_)
      throw InvalidArgument("gate control " + std::to_string(gate.control) + " outside " +
                            std::to_string(num_qubits_) + "-qubit circuit");
    if (gate.control == gate.target)
      throw InvalidArgument("CNOT control equals target " + std::to_string(gate.target));
  }
  gates_.push_back(gate);
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_)
    throw InvalidArgument("appended circuit is wider than the target");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  global_phase_ += other.global_phase_;
}

std::vector<Gate> compile_term_chain(const QubitSet& term, double coefficient, double gamma,
                                     double* global_phase) {
  std::vector<Gate> out;
  if (term.empty()) {
    if (global_phase)
      *global_phase -= gamma * coefficient;
    return out;
  }
  const std::uint32_t last = term.back();
  for (std::size_t k = 0; k + 1 < term.size(); ++k)
    out.push_back(Gate::cnot(term[k], last));
  out.push_back(Gate::rz(last, 2.0 * gamma * coefficient));
  for (std::size_t k = term.size() - 1; k-- > 0;)
    out.push_back(Gate::cnot(term[k], last));
  return out;
}

std::vector<std::uint32_t> gray_sequence(std::size_t d) {
  if (d == 0 || d > 31)
    throw InvalidArgument("gray_sequence needs 1 <= d <= 31, got " + std::to_string(d));
  std::vector<std::uint32_t> out;
  out.reserve((std::size_t{1} << d) - 1);
  for (std::uint32_t t = 1; t < (std::uint32_t{1} << d); ++t)
    out.push_back(t ^ (t >> 1));
  return out;
}

std::size_t dense_chain_cnot_count(std::size_t d) {
  // sum_k C(d,k) 2(k-1) = d 2^d - 2^{d+1} + 2
  return (std::size_t{1} << d) * d + 2 - (std::size_t{2} << d);
}

namespace {

int top_bit(std::uint32_t mask) {
  return std::bit_width(mask) - 1;
}

// Appends a CNOT, cancelling it against an identical predecessor.
void push_cancelling(std::vector<Gate>& segment, const Gate& g) {
  if (!segment.empty() && segment.back() == g)
    segment.pop_back();
  else
    segment.push_back(g);
}

} // namespace

std::vector<Gate> compile_dense_lattice(const QubitSet& qubits,
                                        const std::map<std::uint32_t, double>& coefficients,
                                        double gamma, double* global_phase) {
  const std::size_t d = qubits.size();
  std::vector<Gate> out;
  std::size_t present = 0;
  for (const auto& [mask, c] : coefficients) {
    if (d < 32 && (mask >> d) != 0)
      throw InvalidArgument("lattice subset mask " + std::to_string(mask) + " exceeds " +
                            std::to_string(d) + " qubits");
    if (mask == 0) {
      if (global_phase)
        *global_phase -= gamma * c;
    } else {
      ++present;
    }
  }
  if (present == 0)
    return out;

  // Full walk, cut into CNOT segments separated by emitted subsets.
  std::vector<std::vector<Gate>> segments(1);
  std::vector<std::uint32_t> emitted;
  std::uint32_t prev = 0;
  for (std::uint32_t mask : gray_sequence(d)) {
    if (prev != 0) {
      const int flipped = std::countr_zero(prev ^ mask);
      const int acc = top_bit(prev);
      // The top element only changes when growing from the singleton below it.
      const Gate g = flipped > acc ? Gate::cnot(qubits[acc], qubits[flipped])
                                   : Gate::cnot(qubits[flipped], qubits[acc]);
      push_cancelling(segments.back(), g);
    }
    if (mask != 0 && coefficients.contains(mask)) {
      emitted.push_back(mask);
      segments.emplace_back();
    }
    prev = mask;
  }

  // Segments 1..k-1 sit between emitted subsets; try the direct shortcut.
  for (std::size_t s = 1; s + 1 < segments.size(); ++s) {
    const std::uint32_t a = emitted[s - 1];
    const std::uint32_t b = emitted[s];
    const int acc = top_bit(a);
    if (acc != top_bit(b))
      continue;
    const std::uint32_t diff = a ^ b;
    const auto len = static_cast<std::size_t>(std::popcount(diff));
    if (len > 2 || len >= segments[s].size())
      continue;
    std::vector<Gate> shortcut;
    for (std::uint32_t rest = diff; rest != 0; rest &= rest - 1)
      shortcut.push_back(Gate::cnot(qubits[std::countr_zero(rest)], qubits[acc]));
    segments[s] = std::move(shortcut);
  }

  for (std::size_t s = 0; s < segments.size(); ++s) {
    out.insert(out.end(), segments[s].begin(), segments[s].end());
    if (s < emitted.size()) {
      const std::uint32_t mask = emitted[s];
      out.push_back(Gate::rz(qubits[top_bit(mask)], 2.0 * gamma * coefficients.at(mask)));
    }
  }
  return out;
}

namespace {

struct LatticeGroup {
  QubitSet qubits;
  std::vector<std::pair<QubitSet, double>> terms;
};

std::vector<Gate> compile_group(const LatticeGroup& group, double gamma, double* phase) {
  std::map<std::uint32_t, double> coeffs;
  for (const auto& [term, c] : group.terms) {
    std::uint32_t mask = 0;
    for (std::uint32_t q : term) {
      const auto pos = std::lower_bound(group.qubits.begin(), group.qubits.end(), q) -
                       group.qubits.begin();
      mask |= std::uint32_t{1} << pos;
    }
    coeffs[mask] += c;
  }
  return compile_dense_lattice(group.qubits, coeffs, gamma, phase);
}

std::size_t cnot_count(const std::vector<Gate>& gates) {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::CNOT; }));
}

} // namespace

Circuit compile_cost_layer(const PauliPolynomial& poly, double gamma, Strategy strategy,
                           const std::vector<QubitSet>& registers) {
  Circuit circuit(poly.num_qubits());
  double phase = 0.0;
  auto emit = [&](const std::vector<Gate>& gates) {
    for (const Gate& g : gates)
      circuit.append(g);
  };

  if (strategy == Strategy::chain) {
    for (const auto& [term, c] : poly.terms())
      emit(compile_term_chain(term, c, gamma, &phase));
    circuit.add_global_phase(phase);
    return circuit;
  }

  // Register of every qubit; uncovered qubits become singleton registers.
  const std::size_t q = poly.num_qubits();
  std::vector<std::size_t> reg_of(q, SIZE_MAX);
  std::vector<QubitSet> regs;
  for (const QubitSet& r : registers) {
    QubitSet sorted = r;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t qubit : sorted) {
      if (qubit >= q)
        throw InvalidArgument("register qubit " + std::to_string(qubit) + " out of range");
      if (reg_of[qubit] != SIZE_MAX)
        throw InvalidArgument("qubit " + std::to_string(qubit) + " in two registers");
      reg_of[qubit] = regs.size();
    }
    if (!sorted.empty())
      regs.push_back(std::move(sorted));
  }
  for (std::uint32_t qubit = 0; qubit < q; ++qubit)
    if (reg_of[qubit] == SIZE_MAX) {
      reg_of[qubit] = regs.size();
      regs.push_back({qubit});
    }
  // Order registers by lowest qubit so group order follows qubit order.
  std::vector<std::size_t> rank(regs.size());
  {
    std::vector<std::size_t> order(regs.size());
    for (std::size_t k = 0; k < order.size(); ++k)
      order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return regs[a].front() < regs[b].front(); });
    for (std::size_t k = 0; k < order.size(); ++k)
      rank[order[k]] = k;
  }

  using Key = std::pair<std::size_t, std::size_t>; // ranks; second == SIZE_MAX for singles
  std::map<Key, LatticeGroup> groups;
  std::vector<std::pair<QubitSet, double>> singles;
  std::vector<std::pair<QubitSet, double>> chained;
  std::vector<const QubitSet*> reg_by_rank(regs.size());
  for (std::size_t r = 0; r < regs.size(); ++r)
    reg_by_rank[rank[r]] = &regs[r];

  for (const auto& [term, c] : poly.terms()) {
    if (term.empty()) {
      phase -= gamma * c;
      continue;
    }
    std::set<std::size_t> touched;
    for (std::uint32_t qubit : term)
      touched.insert(rank[reg_of[qubit]]);
    if (touched.size() == 1) {
      singles.emplace_back(term, c);
    } else if (touched.size() == 2) {
      groups[{*touched.begin(), *touched.rbegin()}].terms.emplace_back(term, c);
    } else {
      chained.emplace_back(term, c);
    }
  }
  for (auto& [term, c] : singles) {
    const std::size_t r = rank[reg_of[term.front()]];
    auto home = std::find_if(groups.begin(), groups.end(), [&](const auto& kv) {
      return kv.first.first == r || kv.first.second == r;
    });
    if (home != groups.end() && home->first.second != SIZE_MAX)
      home->second.terms.emplace_back(term, c);
    else
      groups[{r, SIZE_MAX}].terms.emplace_back(term, c);
  }
  for (auto& [key, group] : groups) {
    group.qubits = *reg_by_rank[key.first];
    if (key.second != SIZE_MAX)
      group.qubits.insert(group.qubits.end(), reg_by_rank[key.second]->begin(),
                          reg_by_rank[key.second]->end());
    std::sort(group.qubits.begin(), group.qubits.end());
    if (group.qubits.size() > 31)
      throw InvalidArgument("lattice group wider than 31 qubits");
    if (strategy == Strategy::gray) {
      emit(compile_group(group, gamma, &phase));
      continue;
    }
    double lattice_phase = 0.0, chain_phase = 0.0;
    const std::vector<Gate> lattice = compile_group(group, gamma, &lattice_phase);
    std::vector<Gate> chain;
    for (const auto& [term, c] : group.terms) {
      const auto gates = compile_term_chain(term, c, gamma, &chain_phase);
      chain.insert(chain.end(), gates.begin(), gates.end());
    }
    if (cnot_count(chain) < cnot_count(lattice)) {
      emit(chain);
      phase += chain_phase;
    } else {
      emit(lattice);
      phase += lattice_phase;
    }
  }
  for (const auto& [term, c] : chained)
    emit(compile_term_chain(term, c, gamma, &phase));
  circuit.add_global_phase(phase);
  return circuit;
}

Circuit qaoa_circuit(const PauliPolynomial& poly, const std::vector<double>& gammas,
                     const std::vector<double>& betas, Strategy strategy,
                     const std::vector<QubitSet>& registers) {
  if (gammas.size() != betas.size())
    throw InvalidArgument("gammas (" + std::to_string(gammas.size()) + ") and betas (" +
                          std::to_string(betas.size()) + ") differ in length");
  if (gammas.empty())
    throw InvalidArgument("QAOA needs at least one layer");
  const auto q = static_cast<std::uint32_t>(poly.num_qubits());
  Circuit circuit(q);
  for (std::uint32_t k = 0; k < q; ++k)
    circuit.append(Gate::h(k));
  for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
    circuit.append(compile_cost_layer(poly, gammas[layer], strategy, registers));
    for (std::uint32_t k = 0; k < q; ++k)
      circuit.append(Gate::rx(k, 2.0 * betas[layer]));
  }
  return circuit;
}

ResourceReport scaling_formulas(std::size_t n, std::size_t m, Encoding encoding) {
  if (n == 0 || m < 2)
    throw InvalidArgument("scaling formulas need n >= 1 and m >= 2");
  const std::size_t pairs = n * (n - 1) / 2;
  ResourceReport r;
  r.layers = 1;
  if (encoding == Encoding::qubo) {
    r.num_qubits = n * m;
    r.cnot_per_layer = 2 * pairs * m * m;
    r.rz_per_layer = n * m + pairs * m * m;
  } else {
    const std::size_t d = bits_for_values(m);
    const std::size_t lattice = std::size_t{1} << (2 * d);
    r.num_qubits = n * d;
    r.cnot_per_layer = pairs * (lattice - 2);
    r.rz_per_layer = pairs * (lattice - 1);
  }
  r.rx_per_layer = r.num_qubits;
  r.hadamard_init = r.num_qubits;
  return r;
}

ResourceReport count_resources(const Circuit& circuit, std::size_t layers) {
  std::size_t h = 0, rx = 0, rz = 0, cx = 0;
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
    case GateKind::H:
      ++h;
      break;
    case GateKind::RX:
      ++rx;
      break;
    case GateKind::RZ:
      ++rz;
      break;
    case GateKind::CNOT:
      ++cx;
      break;
    }
  }
  if (layers == 0) {
    if (rx + rz + cx != 0)
      throw InvalidArgument("zero layers with non-initialization gates");
    return {circuit.num_qubits(), 0, 0, 0, 0, h};
  }
  if (rx % layers || rz % layers || cx % layers)
    throw InvalidArgument("gate counts are not divisible by " + std::to_string(layers) +
                          " layers");
  return {circuit.num_qubits(), layers, cx / layers, rz / layers, rx / layers, h};
}

ResourceReport layer_resources(const PauliPolynomial& poly, Strategy strategy,
                               const std::vector<QubitSet>& registers, std::size_t layers) {
  const Circuit one = qaoa_circuit(poly, {0.5}, {0.5}, strategy, registers);
  ResourceReport r = count_resources(one, 1);
  r.layers = layers;
  return r;
}

void write_circuit(std::ostream& out, const Circuit& circuit) {
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const Gate& g : circuit.gates()) {
    out << to_string(g.kind) << ' ';
    switch (g.kind) {
    case GateKind::H:
      out << g.target;
      break;
    case GateKind::RX:
    case GateKind::RZ:
      out << g.target << ' ' << g.angle;
      break;
    case GateKind::CNOT:
      out << g.control << ' ' << g.target;
      break;
    }
    out << '\n';
  }
  out.precision(precision);
}

Circuit read_circuit(std::istream& in, std::size_t num_qubits) {
  Circuit circuit(num_qubits);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind.front() == '#')
      continue;
    std::uint32_t a = 0, b = 0;
    double theta = 0.0;
    bool ok = false;
    if (kind == "H") {
      ok = static_cast<bool>(fields >> a);
      if (ok)
        circuit.append(Gate::h(a));
    } else if (kind == "RX" || kind == "RZ") {
      ok = static_cast<bool>(fields >> a >> theta);
      if (ok)
        circuit.append(kind == "RX" ? Gate::rx(a, theta) : Gate::rz(a, theta));
    } else if (kind == "CNOT") {
      ok = static_cast<bool>(fields >> a >> b);
      if (ok)
        circuit.append(Gate::cnot(a, b));
    }
    if (!ok)
      throw InvalidArgument("bad gate on line " + std::to_string(lineno) + ": " + line);
  }
  return circuit;
}

std::string resource_json(const ResourceReport& r) {
  nlohmann::ordered_json j;
  j["num_qubits"] = r.num_qubits;
  j["layers"] = r.layers;
  j["cnot_per_layer"] = r.cnot_per_layer;
  j["rz_per_layer"] = r.rz_per_layer;
  j["rx_per_layer"] = r.rx_per_layer;
  j["hadamard_init"] = r.hadamard_init;
  j["cnot_total"] = r.cnot_total();
  j["single_qubit_total"] = r.single_qubit_total();
  j["total_gates"] = r.total_gates();
  return j.dump(2);
}

} // namespace hubo
