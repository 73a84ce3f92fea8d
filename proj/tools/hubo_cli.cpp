/*******************************************************************************
 * Copyright (c) 2026 The hubo-qaoa Authors.                                   *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/
// hubo-qaoa: encode, compile and benchmark categorical optimization problems
// as QUBO or HUBO QAOA circuits. Talks to the library through the C API only.

#include "hubo/hubo.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr const char* kCsvVersion = "1";

// Error carrying the exit code it maps to.
struct Failure {
  int code;
  std::string message;
};

void check(hubo_status status, int code = kExitRuntime) {
  if (status != HUBO_OK)
    throw Failure{code, std::string(hubo_status_string(status)) + ": " + hubo_last_error()};
}

// Input-dependent calls: bad arguments or unreadable inputs are config errors.
void check_input(hubo_status status) {
  check(status, status == HUBO_ERR_RUNTIME || status == HUBO_ERR_NO_MEMORY ? kExitRuntime
                                                                             : kExitConfig);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Instance = std::unique_ptr<hubo_instance, Deleter<hubo_instance, hubo_instance_free>>;
using Problem = std::unique_ptr<hubo_problem, Deleter<hubo_problem, hubo_problem_free>>;
using CircuitPtr = std::unique_ptr<hubo_circuit, Deleter<hubo_circuit, hubo_circuit_free>>;
using Benchmark = std::unique_ptr<hubo_benchmark, Deleter<hubo_benchmark, hubo_benchmark_free>>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---- Options shared by the subcommands ------------------------------------

struct ProblemOptions {
  std::string problem = "gap";
  std::string instance_path;
  std::string encoding = "both";
  double penalty = 0.0;

  void add(CLI::App* app) {
    app->add_option("--problem", problem, "Built-in benchmark or 'file'")
        ->check(CLI::IsMember({"gap", "mkcs", "ip", "file"}))
        ->capture_default_str();
    app->add_option("--instance", instance_path, "Instance file for --problem file");
    app->add_option("--encoding", encoding, "Qubit encoding")
        ->check(CLI::IsMember({"qubo", "hubo", "both"}))
        ->capture_default_str();
    app->add_option("--penalty", penalty, "Penalty multiplier, <= 0 for the default")
        ->capture_default_str();
  }

  json to_json() const {
    return {{"problem", problem},
            {"instance", instance_path},
            {"encoding", encoding},
            {"penalty", penalty}};
  }

  std::vector<hubo_encoding> encodings() const {
    if (encoding == "both")
      return {HUBO_ENCODING_QUBO, HUBO_ENCODING_HUBO};
    hubo_encoding e;
    check(hubo_parse_encoding(encoding.c_str(), &e), kExitConfig);
    return {e};
  }

  Instance load() const {
    hubo_instance* raw = nullptr;
    if (problem == "file") {
      if (instance_path.empty())
        throw Failure{kExitConfig, "--problem file needs --instance PATH"};
      check_input(hubo_instance_load(instance_path.c_str(), &raw));
    } else {
      check_input(hubo_instance_builtin(problem.c_str(), penalty, &raw));
    }
    return Instance(raw);
  }
};

const char* name_of(hubo_encoding e) {
  return e == HUBO_ENCODING_QUBO ? "qubo" : "hubo";
}

hubo_strategy parse_strategy(const std::string& text) {
  hubo_strategy s;
  check(hubo_parse_strategy(text.c_str(), &s), kExitConfig);
  return s;
}

Problem encode(const hubo_instance* instance, hubo_encoding e, double penalty) {
  hubo_problem* raw = nullptr;
  check_input(hubo_encode(instance, e, penalty, &raw));
  return Problem(raw);
}

json resources_json(const hubo_resources& r) {
  return {{"num_qubits", r.num_qubits},       {"layers", r.layers},
          {"cnot_per_layer", r.cnot_per_layer}, {"rz_per_layer", r.rz_per_layer},
          {"rx_per_layer", r.rx_per_layer},     {"hadamard_init", r.hadamard_init},
          {"cnot_total", r.cnot_total},         {"single_qubit_total", r.single_qubit_total},
          {"total_gates", r.total_gates}};
}

// ---- Output directory -------------------------------------------------------

// One directory per (command, config): re-running a configuration rewrites
// the same artifacts.
class Output {
public:
  Output(const std::string& root, const std::string& command, json config)
      : command_(command), config_(std::move(config)) {
    hash_ = hex64(fnv1a(command + "\n" + config_.dump()));
    dir_ = fs::path(root) / (command + "-" + hash_.substr(0, 12));
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
      throw Failure{kExitConfig, "cannot create output directory '" + dir_.string() +
                                     "': " + ec.message()};
  }

  const fs::path& dir() const { return dir_; }
  const std::string& hash() const { return hash_; }

  std::ofstream open(const std::string& name) {
    std::ofstream out(dir_ / name);
    if (!out)
      throw Failure{kExitRuntime, "cannot write '" + (dir_ / name).string() + "'"};
    files_.push_back(name);
    return out;
  }
  std::string path(const std::string& name) {
    files_.push_back(name);
    return (dir_ / name).string();
  }

  void finish(bool complete, const json& extra = json::object()) {
    json manifest = {{"tool", "hubo-qaoa"},
                     {"library_version", hubo_version()},
                     {"command", command_},
                     {"config_hash", hash_},
                     {"csv_version", kCsvVersion},
                     {"complete", complete},
                     {"config", config_},
                     {"files", files_}};
    for (const auto& [k, v] : extra.items())
      manifest[k] = v;
    std::ofstream(dir_ / "manifest.json") << manifest.dump(2) << '\n';
  }

private:
  std::string command_;
  json config_;
  std::string hash_;
  fs::path dir_;
  std::vector<std::string> files_;
};

// ---- encode -------------------------------------------------------------------

int cmd_encode(const ProblemOptions& opt, const std::string& out_root) {
  Output out(out_root, "encode", opt.to_json());
  const Instance instance = opt.load();
  size_t n = 0, m = 0;
  check(hubo_instance_shape(instance.get(), &n, &m));
  json summary = json::array();
  for (hubo_encoding e : opt.encodings()) {
    const Problem problem = encode(instance.get(), e, opt.penalty);
    size_t qubits = 0, terms = 0, top = 0;
    double penalty = 0.0;
    check(hubo_problem_num_qubits(problem.get(), &qubits));
    check(hubo_problem_num_terms(problem.get(), &terms));
    check(hubo_problem_penalty(problem.get(), &penalty));
    std::vector<size_t> census(qubits + 1);
    check(hubo_problem_order_census(problem.get(), census.data(), census.size(), &top));
    census.resize(top + 1);
    const std::string file = std::string("polynomial_") + name_of(e) + ".txt";
    check(hubo_problem_save(problem.get(), out.path(file).c_str()));
    std::printf("%s: %zu variables x %zu values -> %zu qubits, %zu terms, max order %zu\n",
                name_of(e), n, m, qubits, terms, top);
    summary.push_back({{"encoding", name_of(e)},
                       {"variables", n},
                       {"values", m},
                       {"qubits", qubits},
                       {"terms", terms},
                       {"order_census", census},
                       {"penalty", penalty},
                       {"polynomial", file}});
  }
  out.open("encode.json") << summary.dump(2) << '\n';
  out.finish(true);
  std::printf("wrote %s\n", out.dir().c_str());
  return 0;
}

// ---- compile ------------------------------------------------------------------

struct CompileOptions {
  std::string strategy = "best";
  size_t layers = 1;
  double gamma = 0.5;
  double beta = 0.5;
};

int cmd_compile(const ProblemOptions& opt, const CompileOptions& c, const std::string& out_root) {
  json config = opt.to_json();
  config["strategy"] = c.strategy;
  config["layers"] = c.layers;
  config["gamma"] = c.gamma;
  config["beta"] = c.beta;
  Output out(out_root, "compile", config);
  const hubo_strategy strategy = parse_strategy(c.strategy);
  if (c.layers == 0)
    throw Failure{kExitConfig, "--layers must be at least 1"};
  const Instance instance = opt.load();
  size_t n = 0, m = 0;
  check(hubo_instance_shape(instance.get(), &n, &m));
  json report = json::array();
  std::printf("%-5s %7s %7s %7s %7s %12s\n", "enc", "qubits", "CNOT/L", "RZ/L", "RX/L", "total");
  for (hubo_encoding e : opt.encodings()) {
    const Problem problem = encode(instance.get(), e, opt.penalty);
    const std::vector<double> gammas(c.layers, c.gamma), betas(c.layers, c.beta);
    hubo_circuit* raw = nullptr;
    check(hubo_compile(problem.get(), gammas.data(), betas.data(), c.layers, strategy, &raw));
    const CircuitPtr circuit(raw);
    hubo_resources r;
    check(hubo_circuit_resources(circuit.get(), c.layers, &r));
    const std::string file = std::string("circuit_") + name_of(e) + ".txt";
    check(hubo_circuit_save(circuit.get(), out.path(file).c_str()));
    std::printf("%-5s %7zu %7zu %7zu %7zu %12zu\n", name_of(e), r.num_qubits, r.cnot_per_layer,
                r.rz_per_layer, r.rx_per_layer, r.total_gates);
    json row = {{"encoding", name_of(e)}, {"strategy", c.strategy}, {"circuit", file},
                {"resources", resources_json(r)}};
    if (m >= 2) {
      hubo_resources dense;
      check(hubo_scaling_formulas(n, m, e, &dense));
      row["dense_formula"] = resources_json(dense);
      std::printf("%-5s %7zu %7zu %7zu %7zu %12s  (dense worst case)\n", "", dense.num_qubits,
                  dense.cnot_per_layer, dense.rz_per_layer, dense.rx_per_layer, "");
    }
    report.push_back(row);
  }
  out.open("resources.json") << report.dump(2) << '\n';
  out.finish(true);
  std::printf("wrote %s\n", out.dir().c_str());
  return 0;
}

// ---- benchmark ------------------------------------------------------------------

struct BenchOptions {
  std::string strategy = "best";
  size_t layers = 10;
  size_t runs = 20;
  std::uint64_t seed = 1;
  size_t samples = 10000;
  size_t jobs = 1;
  std::optional<double> threshold;
  size_t grid = 16;
  size_t max_iterations = 500;
  double gradient_tolerance = 1e-5;
  double value_tolerance = 1e-7;
  std::string gradient = "adjoint";
  std::string descent = "lbfgs";
  size_t memory = 6;
  std::string truth_cache;
  bool quiet = false;

  void add(CLI::App* app) {
    app->add_option("--strategy", strategy, "Cost-layer compilation for resource counts")
        ->check(CLI::IsMember({"chain", "gray", "best"}))
        ->capture_default_str();
    app->add_option("--layers", layers, "Largest layer count p")->capture_default_str();
    app->add_option("--runs", runs, "Independent runs per encoding")->capture_default_str();
    app->add_option("--seed", seed, "Master seed; run r uses a derived stream")
        ->capture_default_str();
    app->add_option("--samples", samples, "Measurement samples for the sampled ratio")
        ->capture_default_str();
    app->add_option("--jobs", jobs, "Worker threads (results do not depend on it)")
        ->capture_default_str();
    app->add_option("--grid", grid, "Points per axis of the p = 1 start grid")
        ->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "Descent iterations per layer stage")
        ->capture_default_str();
    app->add_option("--gradient-tolerance", gradient_tolerance, "Stage stops below this |g|")
        ->capture_default_str();
    app->add_option("--value-tolerance", value_tolerance,
                    "Stage stops when an iteration lowers the normalized energy less")
        ->capture_default_str();
    app->add_option("--gradient", gradient, "Gradient method")
        ->check(CLI::IsMember({"adjoint", "fd"}))
        ->capture_default_str();
    app->add_option("--descent", descent, "Search direction of each iteration")
        ->check(CLI::IsMember({"lbfgs", "steepest"}))
        ->capture_default_str();
    app->add_option("--memory", memory, "L-BFGS correction pairs")->capture_default_str();
    app->add_option("--truth-cache", truth_cache, "JSON cache of exhaustive ground truths");
    app->add_flag("--quiet", quiet, "No per-run progress on stderr");
  }

  json to_json() const {
    // jobs, quiet and the cache path do not change results and stay out of
    // the hash.
    return {{"strategy", strategy},
            {"layers", layers},
            {"runs", runs},
            {"seed", seed},
            {"samples", samples},
            {"grid", grid},
            {"max_iterations", max_iterations},
            {"gradient_tolerance", gradient_tolerance},
            {"value_tolerance", value_tolerance},
            {"gradient", gradient},
            {"descent", descent},
            {"memory", memory}};
  }

  hubo_benchmark_config config(hubo_encoding e, double penalty) const {
    if (layers == 0)
      throw Failure{kExitConfig, "--layers must be at least 1"};
    if (runs == 0)
      throw Failure{kExitConfig, "--runs must be at least 1"};
    if (samples == 0)
      throw Failure{kExitConfig, "--samples must be at least 1"};
    hubo_benchmark_config c;
    hubo_benchmark_config_default(&c);
    c.encoding = e;
    c.strategy = parse_strategy(strategy);
    c.max_layers = layers;
    c.runs = runs;
    c.seed = seed;
    c.penalty = penalty;
    c.samples = samples;
    c.jobs = jobs;
    c.grid = grid;
    c.max_iterations = max_iterations;
    c.gradient_tolerance = gradient_tolerance;
    c.value_tolerance = value_tolerance;
    c.finite_difference = gradient == "fd";
    c.descent = descent == "steepest" ? HUBO_DESCENT_STEEPEST : HUBO_DESCENT_LBFGS;
    c.memory = memory;
    c.truth_cache = truth_cache.empty() ? nullptr : truth_cache.c_str();
    if (!quiet) {
      c.on_record = [](const hubo_record* r, void*) {
        std::fprintf(stderr, "  run %zu layer %zu: A = %.4f (%zu iterations)\n", r->run,
                     r->layers, r->ratio, r->iterations);
      };
    }
    return c;
  }
};

const char* kSummaryHeader =
    "encoding,layers,total_gates,cnot,single_qubit,mean_ratio,std_ratio,best_ratio,"
    "mean_ratio_sampled,mean_objective,std_objective,mean_feasible,runs";

void write_summary_row(std::ostream& csv, hubo_encoding e, const hubo_layer_summary& s) {
  csv << name_of(e) << ',' << s.layers << ',' << s.resources.total_gates << ','
      << s.resources.cnot_total << ',' << s.resources.single_qubit_total << ','
      << fmt(s.mean_ratio) << ',' << fmt(s.std_ratio) << ',' << fmt(s.best_ratio) << ','
      << fmt(s.mean_ratio_sampled) << ',' << fmt(s.mean_objective) << ','
      << fmt(s.std_objective) << ',' << fmt(s.mean_feasible) << ',' << s.runs << '\n';
}

void write_runs(std::ostream& jsonl, hubo_encoding e, const hubo_benchmark* b) {
  size_t runs = 0;
  check(hubo_benchmark_num_runs(b, &runs));
  for (size_t r = 0; r < runs; ++r) {
    size_t length = 0;
    check(hubo_benchmark_run_length(b, r, &length));
    for (size_t k = 0; k < length; ++k) {
      hubo_record rec;
      std::vector<double> gammas(k + 1), betas(k + 1);
      check(hubo_benchmark_record(b, r, k, &rec, gammas.data(), betas.data()));
      json row = {{"encoding", name_of(e)},
                  {"run", rec.run},
                  {"layers", rec.layers},
                  {"seed", rec.seed},
                  {"energy", rec.energy},
                  {"ratio", rec.ratio},
                  {"ratio_sampled", rec.ratio_sampled},
                  {"mean_objective", rec.mean_objective},
                  {"feasible_probability", rec.feasible_probability},
                  {"iterations", rec.iterations},
                  {"gammas", gammas},
                  {"betas", betas}};
      jsonl << row.dump() << '\n';
    }
  }
}

// First layer whose ratio (mean or best run) reaches the threshold.
std::optional<hubo_layer_summary> first_reaching(const hubo_benchmark* b, double threshold,
                                                 bool best) {
  size_t count = 0;
  check(hubo_benchmark_num_layers(b, &count));
  for (size_t k = 0; k < count; ++k) {
    hubo_layer_summary s;
    check(hubo_benchmark_layer(b, k, &s));
    if ((best ? s.best_ratio : s.mean_ratio) <= threshold)
      return s;
  }
  return std::nullopt;
}

int cmd_benchmark(const ProblemOptions& opt, const BenchOptions& bench,
                  const std::string& out_root) {
  json config = opt.to_json();
  config["benchmark"] = bench.to_json();
  if (bench.threshold)
    config["threshold"] = *bench.threshold;
  Output out(out_root, "benchmark", config);
  const Instance instance = opt.load();
  const auto encodings = opt.encodings();
  for (hubo_encoding e : encodings)
    (void)bench.config(e, opt.penalty); // validate before running anything

  std::ofstream csv = out.open("summary.csv");
  csv << kSummaryHeader << '\n';
  std::ofstream jsonl = out.open("runs.jsonl");
  json thresholds = json::array();
  bool complete = true;
  std::string failure;
  for (hubo_encoding e : encodings) {
    std::fprintf(stderr, "[%s] %zu runs x %zu layers\n", name_of(e), bench.runs, bench.layers);
    const hubo_benchmark_config c = bench.config(e, opt.penalty);
    hubo_benchmark* raw = nullptr;
    const hubo_status status = hubo_benchmark_run(instance.get(), &c, &raw);
    if (status != HUBO_OK) {
      complete = false;
      failure = std::string(name_of(e)) + ": " + hubo_last_error();
      std::fprintf(stderr, "[%s] failed: %s\n", name_of(e), hubo_last_error());
      continue;
    }
    const Benchmark b(raw);
    size_t count = 0;
    check(hubo_benchmark_num_layers(b.get(), &count));
    std::printf("%-5s %6s %8s %6s %8s %8s %10s\n", "enc", "layers", "gates", "CNOT", "mean A",
                "std A", "mean obj");
    for (size_t k = 0; k < count; ++k) {
      hubo_layer_summary s;
      check(hubo_benchmark_layer(b.get(), k, &s));
      write_summary_row(csv, e, s);
      std::printf("%-5s %6zu %8zu %6zu %8.4f %8.4f %10.4f\n", name_of(e), s.layers,
                  s.resources.total_gates, s.resources.cnot_total, s.mean_ratio, s.std_ratio,
                  s.mean_objective);
    }
    write_runs(jsonl, e, b.get());
    if (bench.threshold) {
      for (bool best : {false, true}) {
        const auto hit = first_reaching(b.get(), *bench.threshold, best);
        json row = {{"encoding", name_of(e)},
                    {"series", best ? "best" : "mean"},
                    {"threshold", *bench.threshold},
                    {"reached", hit.has_value()}};
        if (hit) {
          row["layers"] = hit->layers;
          row["total_gates"] = hit->resources.total_gates;
          row["cnot"] = hit->resources.cnot_total;
          row["single_qubit"] = hit->resources.single_qubit_total;
          row["ratio"] = best ? hit->best_ratio : hit->mean_ratio;
        }
        thresholds.push_back(row);
      }
    }
  }
  if (bench.threshold)
    out.open("thresholds.json") << thresholds.dump(2) << '\n';
  json extra = json::object();
  if (!complete)
    extra["error"] = failure;
  out.finish(complete, extra);
  std::printf("wrote %s%s\n", out.dir().c_str(), complete ? "" : " (partial)");
  return complete ? 0 : kExitRuntime;
}

// ---- scaling --------------------------------------------------------------------

int cmd_scaling(const ProblemOptions& opt, const BenchOptions& bench, double threshold,
                const std::string& ladder_kind, const std::string& out_root) {
  json config = opt.to_json();
  config["benchmark"] = bench.to_json();
  config["threshold"] = threshold;
  config["ladder"] = ladder_kind;
  Output out(out_root, "scaling", config);
  const Instance full = opt.load();
  size_t n = 0;
  check(hubo_instance_shape(full.get(), &n, nullptr));
  const bool deletion =
      ladder_kind == "delete" || (ladder_kind == "auto" && opt.problem == "mkcs");

  // Ladder, smallest first: drop or fix the last variable until one is left.
  std::vector<uint32_t> optimum(n);
  if (!deletion)
    check(hubo_instance_ground_truth(full.get(), bench.truth_cache.c_str(), nullptr, nullptr,
                                     optimum.data()));
  std::vector<Instance> ladder;
  ladder.push_back(opt.load());
  for (size_t k = n; k > 1; --k) {
    hubo_instance* next = nullptr;
    check(deletion ? hubo_instance_remove(ladder.back().get(), k - 1, &next)
                   : hubo_instance_fix(ladder.back().get(), k - 1, optimum[k - 1], &next));
    ladder.emplace_back(next);
  }
  std::reverse(ladder.begin(), ladder.end());

  std::ofstream csv = out.open("scaling.csv");
  csv << "variables,encoding,qubits,series,reached,layers,total_gates,cnot,single_qubit,ratio\n";
  bool complete = true;
  std::string failure;
  for (const Instance& rung : ladder) {
    size_t rn = 0;
    check(hubo_instance_shape(rung.get(), &rn, nullptr));
    for (hubo_encoding e : opt.encodings()) {
      hubo_benchmark_config c = bench.config(e, opt.penalty);
      c.stop_threshold = threshold;
      std::fprintf(stderr, "[%zu variables, %s]\n", rn, name_of(e));
      hubo_benchmark* raw = nullptr;
      if (hubo_benchmark_run(rung.get(), &c, &raw) != HUBO_OK) {
        complete = false;
        failure = std::to_string(rn) + " variables, " + name_of(e) + ": " + hubo_last_error();
        std::fprintf(stderr, "  failed: %s\n", hubo_last_error());
        continue;
      }
      const Benchmark b(raw);
      const Problem problem = encode(rung.get(), e, opt.penalty);
      size_t qubits = 0;
      check(hubo_problem_num_qubits(problem.get(), &qubits));
      for (bool best : {true, false}) {
        const auto hit = first_reaching(b.get(), threshold, best);
        csv << rn << ',' << name_of(e) << ',' << qubits << ',' << (best ? "best" : "mean")
            << ',' << (hit ? 1 : 0) << ',';
        if (hit)
          csv << hit->layers << ',' << hit->resources.total_gates << ','
              << hit->resources.cnot_total << ',' << hit->resources.single_qubit_total << ','
              << fmt(best ? hit->best_ratio : hit->mean_ratio) << '\n';
        else
          csv << ",,,,\n";
        if (best)
          std::printf("%2zu variables %-5s %2zu qubits: %s\n", rn, name_of(e), qubits,
                      hit ? ("threshold at " + std::to_string(hit->layers) + " layers, " +
                             std::to_string(hit->resources.cnot_total) + " CNOT")
                                .c_str()
                          : "threshold not reached");
      }
    }
  }
  json extra = json::object();
  if (!complete)
    extra["error"] = failure;
  out.finish(complete, extra);
  std::printf("wrote %s%s\n", out.dir().c_str(), complete ? "" : " (partial)");
  return complete ? 0 : kExitRuntime;
}

// ---- groundtruth and calibrate ----------------------------------------------------

int cmd_groundtruth(const ProblemOptions& opt, const std::string& cache) {
  const Instance instance = opt.load();
  size_t n = 0;
  check(hubo_instance_shape(instance.get(), &n, nullptr));
  double lo = 0, hi = 0;
  std::vector<uint32_t> argmin(n);
  check(hubo_instance_ground_truth(instance.get(), cache.c_str(), &lo, &hi, argmin.data()));
  std::uint64_t hash = 0;
  check(hubo_instance_hash(instance.get(), &hash));
  json row = {{"instance_hash", hex64(hash)}, {"c_min", lo}, {"c_max", hi}, {"argmin", argmin}};
  std::printf("%s\n", row.dump(2).c_str());
  return 0;
}

int cmd_calibrate(const ProblemOptions& opt, double initial, size_t doublings) {
  if (opt.problem != "gap" && opt.problem != "ip")
    throw Failure{kExitConfig, "calibrate supports --problem gap or ip"};
  for (hubo_encoding e : opt.encodings()) {
    double lambda = 0.0;
    check(hubo_calibrate_penalty(opt.problem.c_str(), e, initial, doublings, &lambda));
    std::printf("%s: penalty %s\n", name_of(e), fmt(lambda).c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode, compile and benchmark categorical problems as QUBO or HUBO QAOA"};
  app.set_config("--config", "",
                 "TOML/INI file with one [command] section per subcommand; command-line flags "
                 "override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  std::string out_root = "hubo-runs";
  app.add_option("--out-dir", out_root, "Root for per-invocation output directories")
      ->capture_default_str();
  app.set_version_flag("--version", std::string(hubo_version()));

  ProblemOptions problem;
  CompileOptions compile;
  BenchOptions bench;
  double threshold = 0.5;
  std::string ladder = "auto";
  std::string truth_cache;
  double initial_penalty = 1.0;
  size_t doublings = 30;

  auto* encode_cmd = app.add_subcommand("encode", "Write the Ising polynomial and qubit layout");
  problem.add(encode_cmd);

  auto* compile_cmd = app.add_subcommand("compile", "Compile QAOA circuits and count gates");
  problem.add(compile_cmd);
  compile_cmd->add_option("--strategy", compile.strategy, "Cost-layer compilation")
      ->check(CLI::IsMember({"chain", "gray", "best"}))
      ->capture_default_str();
  compile_cmd->add_option("--layers", compile.layers, "QAOA layers")->capture_default_str();
  compile_cmd->add_option("--gamma", compile.gamma, "Cost angle for every layer")
      ->capture_default_str();
  compile_cmd->add_option("--beta", compile.beta, "Mixer angle for every layer")
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("benchmark", "Optimize QAOA for layers 1..p");
  problem.add(bench_cmd);
  bench.add(bench_cmd);
  bench_cmd->add_option("--threshold", bench.threshold,
                        "Also report the first layer reaching this ratio");

  auto* scaling_cmd =
      app.add_subcommand("scaling", "Resources to reach a ratio threshold over a size ladder");
  problem.add(scaling_cmd);
  bench.add(scaling_cmd);
  scaling_cmd->add_option("--threshold", threshold, "Approximation-ratio target")
      ->capture_default_str();
  scaling_cmd
      ->add_option("--ladder", ladder,
                   "fix: pin variables to the optimum; delete: drop them; auto: delete for "
                   "mkcs, fix otherwise")
      ->check(CLI::IsMember({"auto", "fix", "delete"}))
      ->capture_default_str();

  auto* truth_cmd = app.add_subcommand("groundtruth", "Exhaustive optimum and worst feasible cost");
  problem.add(truth_cmd);
  truth_cmd->add_option("--truth-cache", truth_cache, "JSON cache of ground truths");

  auto* calibrate_cmd =
      app.add_subcommand("calibrate", "Double the penalty until the ground state is feasible");
  problem.add(calibrate_cmd);
  calibrate_cmd->add_option("--initial", initial_penalty, "Starting penalty")
      ->capture_default_str();
  calibrate_cmd->add_option("--max-doublings", doublings, "Give up after this many doublings")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*encode_cmd)
      return cmd_encode(problem, out_root);
    if (*compile_cmd)
      return cmd_compile(problem, compile, out_root);
    if (*bench_cmd)
      return cmd_benchmark(problem, bench, out_root);
    if (*scaling_cmd)
      return cmd_scaling(problem, bench, threshold, ladder, out_root);
    if (*truth_cmd)
      return cmd_groundtruth(problem, truth_cache);
    if (*calibrate_cmd)
      return cmd_calibrate(problem, initial_penalty, doublings);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
