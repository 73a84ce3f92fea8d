/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
#include "hubo/qaoa.hpp"
#include "hubo/rng.hpp"
#include "pair_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hubo {

const char* to_string(GradientMethod m) {
  return m == GradientMethod::adjoint ? "adjoint" : "finite-difference";
}

GradientMethod parse_gradient_method(const std::string& text) {
  if (text == "adjoint")
    return GradientMethod::adjoint;
  if (text == "finite-difference" || text == "fd")
    return GradientMethod::finite_difference;
  throw InvalidArgument("unknown gradient method '" + text + "'");
}

const char* to_string(Descent d) {
  return d == Descent::lbfgs ? "lbfgs" : "steepest";
}

Descent parse_descent(const std::string& text) {
  if (text == "lbfgs")
    return Descent::lbfgs;
  if (text == "steepest" || text == "gd")
    return Descent::steepest;
  throw InvalidArgument("unknown descent method '" + text + "'");
}

namespace {

// Phase tables are used while the distinct diagonal values number at most
// this fraction of the basis.
constexpr std::size_t kLevelFraction = 4;
// Forward states are kept for the adjoint sweep while they fit in this.
constexpr std::size_t kStoreBudgetBytes = std::size_t{1} << 30;

void check_params(const QaoaParams& params) {
  if (params.gammas.size() != params.betas.size())
    throw InvalidArgument("gammas and betas differ in length");
  for (std::size_t k = 0; k < params.layers(); ++k)
    if (!std::isfinite(params.gammas[k]) || !std::isfinite(params.betas[k]))
      throw InvalidArgument("non-finite QAOA parameter at layer " + std::to_string(k));
}

// Accumulates Im <lam| sum_j X_j |psi>.
struct XOverlap {
  const double* l;
  const double* p;
  double total = 0.0;

  // conj(l_a) p_c + conj(l_c) p_a for each pair (a, c).
  void first_qubit(std::size_t base, std::size_t pairs) {
    const double* __restrict x = l + 2 * base;
    const double* __restrict y = p + 2 * base;
    double acc = 0.0;
    for (std::size_t k = 0; k < 4 * pairs; k += 4)
      acc += x[k] * y[k + 3] - x[k + 1] * y[k + 2] + x[k + 2] * y[k + 1] - x[k + 3] * y[k];
    total += acc;
  }
  void operator()(std::size_t i, std::size_t j, std::size_t len) {
    const double* __restrict la = l + 2 * i;
    const double* __restrict lc = l + 2 * j;
    const double* __restrict pa = p + 2 * i;
    const double* __restrict pc = p + 2 * j;
    double acc = 0.0;
    for (std::size_t k = 0; k < 2 * len; k += 2)
      acc += la[k] * pc[k + 1] - la[k + 1] * pc[k] + lc[k] * pa[k + 1] - lc[k + 1] * pa[k];
    total += acc;
  }
};

double x_overlap_imag(const std::vector<Amplitude>& lam, const std::vector<Amplitude>& psi,
                      std::size_t q) {
  XOverlap sweep{reinterpret_cast<const double*>(lam.data()),
                 reinterpret_cast<const double*>(psi.data())};
  detail::sweep_pairs(q, sweep);
  return sweep.total;
}

} // namespace

QaoaLandscape::QaoaLandscape(const PauliPolynomial& poly, bool normalize, std::size_t cap)
    : num_qubits_(poly.num_qubits()) {
  if (num_qubits_ > cap)
    throw InvalidArgument("landscape of " + std::to_string(num_qubits_) +
                          " qubits exceeds cap of " + std::to_string(cap));
  diagonal_ = diagonal_of(poly, cap);
  const double largest = poly.max_abs_coefficient();
  scale_ = normalize && largest > 0.0 ? largest : 1.0;
  work_.resize(diagonal_.size());
  for (std::size_t b = 0; b < work_.size(); ++b)
    work_[b] = diagonal_[b] / scale_;

  levels_ = work_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  if (levels_.size() * kLevelFraction <= work_.size()) {
    level_of_.resize(work_.size());
    for (std::size_t b = 0; b < work_.size(); ++b)
      level_of_[b] = static_cast<std::uint32_t>(
          std::lower_bound(levels_.begin(), levels_.end(), work_[b]) - levels_.begin());
  } else {
    levels_.clear();
  }
}

QaoaParams QaoaLandscape::physical(const QaoaParams& params) const {
  QaoaParams out = params;
  for (double& g : out.gammas)
    g /= scale_;
  return out;
}

template <class Fn>
void QaoaLandscape::for_each_phase(double gamma, Fn&& fn) const {
  if (!level_of_.empty()) {
    std::vector<double> re(levels_.size()), im(levels_.size());
    for (std::size_t k = 0; k < levels_.size(); ++k) {
      re[k] = std::cos(gamma * levels_[k]);
      im[k] = -std::sin(gamma * levels_[k]);
    }
    for (std::size_t b = 0; b < work_.size(); ++b)
      fn(b, re[level_of_[b]], im[level_of_[b]]);
    return;
  }
  for (std::size_t b = 0; b < work_.size(); ++b)
    fn(b, std::cos(gamma * work_[b]), -std::sin(gamma * work_[b]));
}

void QaoaLandscape::apply_phase(std::vector<Amplitude>& amps, double gamma) const {
  double* a = reinterpret_cast<double*>(amps.data());
  for_each_phase(gamma, [a](std::size_t b, double c, double s) {
    const double ar = a[2 * b], ai = a[2 * b + 1];
    a[2 * b] = ar * c - ai * s;
    a[2 * b + 1] = ar * s + ai * c;
  });
}

double QaoaLandscape::normalized_expectation(const std::vector<Amplitude>& amps) const {
  double total = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b)
    total += std::norm(amps[b]) * work_[b];
  return total;
}

StateVector QaoaLandscape::evolve(const QaoaParams& params) const {
  check_params(params);
  StateVector state = StateVector::uniform(num_qubits_);
  auto& amps = state.amplitudes();
  for (std::size_t k = 0; k < params.layers(); ++k) {
    apply_phase(amps, params.gammas[k]);
    apply_rx_all(amps, num_qubits_, 2.0 * params.betas[k]);
  }
  return state;
}

double QaoaLandscape::normalized_energy(const QaoaParams& params) const {
  const double e = normalized_expectation(evolve(params).amplitudes());
  if (!std::isfinite(e))
    throw std::runtime_error("non-finite QAOA expectation");
  return e;
}

double QaoaLandscape::energy(const QaoaParams& params) const {
  return normalized_energy(params) * scale_;
}

double QaoaLandscape::adjoint_gradient(const QaoaParams& params,
                                       std::vector<double>& gradient) const {
  check_params(params);
  const std::size_t p = params.layers();
  const std::size_t q = num_qubits_;
  gradient.assign(2 * p, 0.0);
  const bool store = p * work_.size() * sizeof(Amplitude) <= kStoreBudgetBytes;

  std::vector<std::vector<Amplitude>> inputs;
  std::vector<Amplitude> psi = StateVector::uniform(q).amplitudes();
  for (std::size_t k = 0; k < p; ++k) {
    if (store)
      inputs.push_back(psi);
    apply_phase(psi, params.gammas[k]);
    apply_rx_all(psi, q, 2.0 * params.betas[k]);
  }
  const double value = normalized_expectation(psi);
  if (!std::isfinite(value))
    throw std::runtime_error("non-finite QAOA expectation");

  std::vector<Amplitude> lam(psi.size());
  for (std::size_t b = 0; b < psi.size(); ++b)
    lam[b] = work_[b] * psi[b];

  // psi holds the state right after mixer k at the top of each iteration.
  // One fused pass then takes the gamma derivative against the state after
  // cost k and undoes cost k on lam (and on psi when nothing was stored).
  for (std::size_t k = p; k-- > 0;) {
    gradient[p + k] = 2.0 * x_overlap_imag(lam, psi, q);
    apply_rx_all(lam, q, -2.0 * params.betas[k]);
    if (store)
      psi = std::move(inputs[k]);
    else
      apply_rx_all(psi, q, -2.0 * params.betas[k]);
    double* l = reinterpret_cast<double*>(lam.data());
    double* s = reinterpret_cast<double*>(psi.data());
    const double* w = work_.data();
    double im = 0.0;
    for_each_phase(params.gammas[k], [&](std::size_t b, double c, double sn) {
      const double lr = l[2 * b], li = l[2 * b + 1];
      double sr = s[2 * b], si = s[2 * b + 1];
      if (store) {
        // psi is the input to cost k: phase it forward for the overlap.
        const double tr = sr * c - si * sn;
        si = sr * sn + si * c;
        sr = tr;
      } else {
        s[2 * b] = sr * c + si * sn;
        s[2 * b + 1] = si * c - sr * sn;
      }
      im += w[b] * (lr * si - li * sr);
      l[2 * b] = lr * c + li * sn;
      l[2 * b + 1] = li * c - lr * sn;
    });
    gradient[k] = 2.0 * im;
  }
  return value;
}

double QaoaLandscape::finite_difference_gradient(const QaoaParams& params, double step,
                                                 std::vector<double>& gradient) const {
  if (!(step > 0.0))
    throw InvalidArgument("finite-difference step must be positive");
  const std::size_t p = params.layers();
  gradient.assign(2 * p, 0.0);
  QaoaParams probe = params;
  for (std::size_t k = 0; k < 2 * p; ++k) {
    double& x = k < p ? probe.gammas[k] : probe.betas[k - p];
    const double saved = x;
    x = saved + step;
    const double up = normalized_energy(probe);
    x = saved - step;
    const double down = normalized_energy(probe);
    x = saved;
    gradient[k] = (up - down) / (2.0 * step);
  }
  return normalized_energy(params);
}

const std::vector<double>& QaoaLandscape::start_grid(std::size_t size) const {
  std::lock_guard lock(grid_mutex_);
  if (grid_size_ == size && !grid_.empty())
    return grid_;
  if (size == 0)
    throw InvalidArgument("start grid needs at least one point per axis");
  grid_.assign(size * size, 0.0);
  const double dg = std::numbers::pi / static_cast<double>(size);
  const double db = std::numbers::pi / 2.0 / static_cast<double>(size);
  std::vector<Amplitude> base = StateVector::uniform(num_qubits_).amplitudes();
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<Amplitude> phased = base;
    apply_phase(phased, (static_cast<double>(i) + 0.5) * dg);
    for (std::size_t j = 0; j < size; ++j) {
      std::vector<Amplitude> mixed = phased;
      apply_rx_all(mixed, num_qubits_, 2.0 * (static_cast<double>(j) + 0.5) * db);
      grid_[i * size + j] = normalized_expectation(mixed);
    }
  }
  grid_size_ = size;
  return grid_;
}

QaoaParams interpolate_layers(const QaoaParams& params) {
  const std::size_t k = params.layers();
  if (k == 0)
    throw InvalidArgument("cannot interpolate an empty schedule");
  auto interp = [k](const std::vector<double>& x) {
    std::vector<double> out(k + 1);
    const double dk = static_cast<double>(k);
    for (std::size_t i = 1; i <= k + 1; ++i) {
      const double left = i >= 2 ? x[i - 2] : 0.0;
      const double right = i <= k ? x[i - 1] : 0.0;
      out[i - 1] = (static_cast<double>(i - 1) / dk) * left +
                   (static_cast<double>(k - i + 1) / dk) * right;
    }
    return out;
  };
  return {interp(params.gammas), interp(params.betas)};
}

namespace {

QaoaParams unpack(const std::vector<double>& x) {
  const std::size_t p = x.size() / 2;
  return {std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
}

std::vector<double> pack(const QaoaParams& params) {
  std::vector<double> x = params.gammas;
  x.insert(x.end(), params.betas.begin(), params.betas.end());
  return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    total += a[k] * b[k];
  return total;
}

// Two-loop recursion: -H g for the inverse-Hessian estimate held in (s, y).
std::vector<double> lbfgs_direction(const std::vector<double>& g,
                                    const std::deque<std::vector<double>>& s,
                                    const std::deque<std::vector<double>>& y) {
  std::vector<double> q = g;
  std::vector<double> alpha(s.size());
  for (std::size_t k = s.size(); k-- > 0;) {
    alpha[k] = dot(s[k], q) / dot(y[k], s[k]);
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] -= alpha[k] * y[k][i];
  }
  if (!s.empty()) {
    const double gamma = dot(s.back(), y.back()) / dot(y.back(), y.back());
    for (double& v : q)
      v *= gamma;
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double beta = dot(y[k], q) / dot(y[k], s[k]);
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] += (alpha[k] - beta) * s[k][i];
  }
  for (double& v : q)
    v = -v;
  return q;
}

LayerResult refine(const QaoaLandscape& land, const QaoaParams& start,
                   const OptimizerConfig& config) {
  const bool adjoint = config.gradient == GradientMethod::adjoint;
  const bool lbfgs = config.descent == Descent::lbfgs;
  auto value_and_gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
    return adjoint ? land.adjoint_gradient(unpack(x), g)
                   : land.finite_difference_gradient(unpack(x), config.fd_step, g);
  };
  LayerResult out;
  std::vector<double> x = pack(start);
  std::vector<double> g;
  double f = value_and_gradient(x, g);
  ++out.evaluations;
  out.history.push_back(f);
  double step = 0.0; // steepest descent: Barzilai-Borwein length of the next trial
  std::deque<std::vector<double>> s_hist, y_hist;
  std::vector<double> trial(x.size());
  std::vector<double> g_new;
  for (; out.iterations < config.max_iterations; ++out.iterations) {
    const double gn = std::sqrt(dot(g, g));
    if (gn < config.gradient_tolerance)
      break;
    std::vector<double> d;
    double t = 1.0;
    if (lbfgs && !s_hist.empty()) {
      d = lbfgs_direction(g, s_hist, y_hist);
      if (dot(d, g) >= 0.0) { // not a descent direction: restart
        s_hist.clear();
        y_hist.clear();
        d.clear();
      }
    }
    if (d.empty()) {
      d.resize(g.size());
      for (std::size_t k = 0; k < g.size(); ++k)
        d[k] = -g[k];
      // First move 0.1 in parameter space, later steepest steps use BB.
      t = !lbfgs && step > 0.0 ? step : 0.1 / gn;
    }
    const double slope = dot(g, d);
    // The first trial, usually accepted, also evaluates the gradient when it
    // is cheap (adjoint) and the direction is well scaled (L-BFGS).
    bool accepted = false;
    bool have_gradient = false;
    double f_new = f;
    for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5) {
      for (std::size_t k = 0; k < x.size(); ++k)
        trial[k] = x[k] + t * d[k];
      have_gradient = halvings == 0 && adjoint && lbfgs && !s_hist.empty();
      f_new = have_gradient ? value_and_gradient(trial, g_new)
                            : land.normalized_energy(unpack(trial));
      ++out.evaluations;
      if (f_new <= f + config.armijo * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      break;
    if (!have_gradient) {
      f_new = value_and_gradient(trial, g_new);
      ++out.evaluations;
    }
    std::vector<double> sk(x.size()), yk(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      sk[k] = trial[k] - x[k];
      yk[k] = g_new[k] - g[k];
    }
    const double sy = dot(sk, yk);
    if (lbfgs) {
      if (sy > 1e-12 * std::sqrt(dot(sk, sk) * dot(yk, yk))) {
        s_hist.push_back(std::move(sk));
        y_hist.push_back(std::move(yk));
        if (s_hist.size() > std::max<std::size_t>(config.memory, 1)) {
          s_hist.pop_front();
          y_hist.pop_front();
        }
      }
    } else {
      step = sy > 0.0 ? std::min(dot(sk, sk) / sy, 1e3 * t) : 2.0 * t;
    }
    const double improvement = f - f_new;
    f = f_new;
    std::swap(g, g_new);
    x = trial;
    out.history.push_back(std::min(out.history.back(), f));
    if (improvement < config.value_tolerance * std::max(1.0, std::abs(f))) {
      ++out.iterations;
      break;
    }
  }
  out.params = unpack(x);
  out.energy = f * land.scale();
  return out;
}

} // namespace

RunResult optimize(const QaoaLandscape& landscape, std::size_t p, const OptimizerConfig& config,
                   std::uint64_t seed, const LayerCallback& on_layer) {
  if (p == 0)
    throw InvalidArgument("optimize needs at least one layer");
  RunResult run;
  run.seed = seed;
  run.hamiltonian_scale = landscape.scale();
  SplitMix64 rng(seed);
  auto offset = [&rng](double half_width) { return (2.0 * rng.uniform() - 1.0) * half_width; };

  const std::size_t n = std::max<std::size_t>(config.grid, 1);
  const auto& grid = landscape.start_grid(n);
  const std::size_t best = static_cast<std::size_t>(
      std::min_element(grid.begin(), grid.end()) - grid.begin());
  const double dg = std::numbers::pi / static_cast<double>(n);
  const double db = std::numbers::pi / 2.0 / static_cast<double>(n);
  QaoaParams start{{(static_cast<double>(best / n) + 0.5) * dg + offset(config.jitter * dg)},
                   {(static_cast<double>(best % n) + 0.5) * db + offset(config.jitter * db)}};

  for (std::size_t layer = 1; layer <= p; ++layer) {
    if (layer > 1) {
      // Interpolation assumes a smooth schedule; when the previous optimum
      // is not smooth, appending a near-identity layer starts lower.
      const QaoaParams& previous = run.layers.back().params;
      start = interpolate_layers(previous);
      for (double& v : start.gammas)
        v += offset(config.perturbation);
      for (double& v : start.betas)
        v += offset(config.perturbation);
      QaoaParams padded = previous;
      padded.gammas.push_back(offset(config.perturbation));
      padded.betas.push_back(offset(config.perturbation));
      if (landscape.normalized_energy(padded) < landscape.normalized_energy(start))
        start = std::move(padded);
    }
    run.layers.push_back(refine(landscape, start, config));
    if (on_layer && !on_layer(run.layers.back(), landscape.evolve(run.layers.back().params)))
      break;
  }
  return run;
}

} // namespace hubo
