// Copyright 2026 The wfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "wfield/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace wfield {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// --- config parsing ---------------------------------------------------------

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& field, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ", field '" + field +
                    "': " + what);
}

double parse_double(int line, const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) fail(line, field, "trailing characters in '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, field, "expected a number, got '" + v + "'");
  }
}

long parse_long(int line, const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) fail(line, field, "trailing characters in '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, field, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(int line, const std::string& field, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != v.size()) fail(line, field, "trailing characters in '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, field, "expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(int line, const std::string& field, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(line, field, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> items;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

std::vector<double> parse_double_list(int line, const std::string& field,
                                      const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(line, field, item));
  return out;
}

std::vector<int> parse_int_list(int line, const std::string& field, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split_list(v))
    out.push_back(static_cast<int>(parse_long(line, field, item)));
  return out;
}

// --- formatting --------------------------------------------------------------

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string now_path(const std::string& out_dir, const std::string& id,
                     const std::string& command, const char* ext) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  return (fs::path(out_dir) / (id + "_" + command + ext)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["model"] = {{"sites", c.sites}, {"u_values", c.u_values}};
  j["weights"] = {{"values", config_weights(c).ws}};
  j["ansatz"] = {{"trotter_steps", c.trotter_steps}};
  j["optimizer"] = {{"tolerance", c.optimizer.tolerance},
                    {"max_iterations", c.optimizer.max_iterations},
                    {"initial_step", c.optimizer.initial_step},
                    {"restarts", c.optimizer.restarts},
                    {"greedy_rounds", c.optimizer.greedy_rounds},
                    {"corner_reoptimize", c.optimizer.corner_reoptimize},
                    {"corner_tolerance_scale", c.optimizer.corner_tolerance_scale},
                    {"corner_max_iterations", c.optimizer.corner_max_iterations},
                    {"corner_initial_step", c.optimizer.corner_initial_step}};
  j["run"] = {{"experiment_id", c.experiment_id}, {"sectors", c.sectors},
              {"delta", c.delta},        {"seed", c.seed},
              {"jobs", c.jobs},          {"strict", c.strict},
              {"timing", c.timing},      {"out_dir", c.out_dir}};
  return j;
}

std::uint64_t point_seed(const ExperimentConfig& c, int u_index) {
  return c.seed * 1000003ull + static_cast<std::uint64_t>(u_index);
}

// Runs task(0..count-1) on up to `jobs` threads; exceptions are rethrown
// (lowest index wins) after all workers finish.
void run_indexed(int count, int jobs, const std::function<void(int)>& task) {
  jobs = std::clamp(jobs, 1, std::max(count, 1));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& worker : workers) worker.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

long elapsed_ms(std::chrono::steady_clock::time_point start, bool timing) {
  if (!timing) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

// --- config ------------------------------------------------------------------

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  ExperimentConfig c;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("config line " + std::to_string(line) + ": unterminated section");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "model" && section != "weights" && section != "ansatz" &&
          section != "optimizer" && section != "run")
        throw ConfigError("config line " + std::to_string(line) + ": unknown section '" +
                          section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line) + ": key '" + key +
                        "' outside any section");

    const std::string field = section + "." + key;
    if (section == "model") {
      if (key == "sites") c.sites = static_cast<int>(parse_long(line, field, value));
      else if (key == "u_values") c.u_values = parse_double_list(line, field, value);
      else fail(line, field, "unknown key");
    } else if (section == "weights") {
      if (key == "values") c.weight_values = parse_double_list(line, field, value);
      else fail(line, field, "unknown key");
    } else if (section == "ansatz") {
      if (key == "trotter_steps")
        c.trotter_steps = static_cast<int>(parse_long(line, field, value));
      else fail(line, field, "unknown key");
    } else if (section == "optimizer") {
      auto& o = c.optimizer;
      if (key == "tolerance") o.tolerance = parse_double(line, field, value);
      else if (key == "max_iterations") o.max_iterations = parse_long(line, field, value);
      else if (key == "initial_step") o.initial_step = parse_double(line, field, value);
      else if (key == "restarts") o.restarts = static_cast<int>(parse_long(line, field, value));
      else if (key == "greedy_rounds")
        o.greedy_rounds = static_cast<int>(parse_long(line, field, value));
      else if (key == "corner_reoptimize") o.corner_reoptimize = parse_bool(line, field, value);
      else if (key == "corner_tolerance_scale")
        o.corner_tolerance_scale = parse_double(line, field, value);
      else if (key == "corner_max_iterations")
        o.corner_max_iterations = parse_long(line, field, value);
      else if (key == "corner_initial_step")
        o.corner_initial_step = parse_double(line, field, value);
      else fail(line, field, "unknown key");
    } else if (section == "run") {
      if (key == "experiment_id") c.experiment_id = value;
      else if (key == "sectors") c.sectors = parse_int_list(line, field, value);
      else if (key == "delta") c.delta = parse_double(line, field, value);
      else if (key == "seed") c.seed = parse_u64(line, field, value);
      else if (key == "jobs") c.jobs = static_cast<int>(parse_long(line, field, value));
      else if (key == "strict") c.strict = parse_bool(line, field, value);
      else if (key == "timing") c.timing = parse_bool(line, field, value);
      else if (key == "out_dir") c.out_dir = value;
      else fail(line, field, "unknown key");
    }
  }

  if (c.sites < 2) throw ConfigError("config: model.sites must be at least 2");
  if (!c.weight_values.empty() && static_cast<int>(c.weight_values.size()) != c.sites)
    throw ConfigError("config: weights.values must list one weight per site");
  if (c.trotter_steps < 1) throw ConfigError("config: ansatz.trotter_steps must be positive");
  if (c.delta <= 0.0) throw ConfigError("config: run.delta must be positive");
  if (c.jobs < 1) throw ConfigError("config: run.jobs must be positive");
  for (const int n : c.sectors)
    if (n < 0 || n > c.sites)
      throw ConfigError("config: run.sectors entry " + std::to_string(n) +
                        " outside 0.." + std::to_string(c.sites));
  if (c.experiment_id.empty() ||
      c.experiment_id.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
          std::string::npos)
    throw ConfigError("config: run.experiment_id must be nonempty [A-Za-z0-9_-]");
  return c;
}

WeightVector config_weights(const ExperimentConfig& config) {
  if (config.weight_values.empty()) return default_weights(config.sites);
  return make_weights(config.weight_values);
}

std::string config_json(const ExperimentConfig& config) {
  return config_to_json(config).dump(2);
}

// --- solver ------------------------------------------------------------------

EnsembleSolver::EnsembleSolver(int sites, double u, const WeightVector& w,
                               int trotter_steps)
    : sites_(sites),
      u_(u),
      w_(w),
      space_(doubled_space(sites)),
      shape_(uccsd_shape(sites, trotter_steps)),
      ansatz_(compile_ansatz(shape_, space_)) {
  if (w.n_modes() != sites)
    throw std::invalid_argument("experiment: weight count does not match sites");
  const OperatorTerms terms = hubbard_bloch_terms({sites, u});
  h_doubled_ = compile_operator(terms, space_.total_modes());
  h_plain_ = compile_operator(terms, sites);
  prepared_ = build_free_wfield(w);
  spectra_ = oracle::all_sector_spectra(terms, sites);
}

double EnsembleSolver::oracle_minimum() const {
  return oracle::ensemble_minimum(w_, spectra_);
}

StateVector EnsembleSolver::ensemble_state(const std::vector<double>& theta) const {
  StateVector psi = prepared_;
  apply_compiled_ansatz(ansatz_, theta, psi);
  return psi;
}

StateVector EnsembleSolver::ensemble_state(const std::vector<double>& theta,
                                           const WeightVector& wv) const {
  StateVector psi = build_free_wfield(wv);
  apply_compiled_ansatz(ansatz_, theta, psi);
  return psi;
}

double EnsembleSolver::energy(const std::vector<double>& theta) const {
  return ensemble_energy(h_doubled_, ansatz_, theta, prepared_);
}

double EnsembleSolver::energy(const std::vector<double>& theta,
                              const WeightVector& wv) const {
  return ensemble_energy(h_doubled_, ansatz_, theta, build_free_wfield(wv));
}

OptimizationResult EnsembleSolver::optimize(const OptimizerSettings& settings,
                                            std::uint64_t seed,
                                            std::vector<double> start) const {
  if (start.empty()) start.assign(shape_.n_params(), 0.0);
  const Objective objective = [this](const std::vector<double>& th) { return energy(th); };
  if (settings.greedy_rounds > 0)
    start = greedy_axis_start(objective, std::move(start), std::numbers::pi / 2,
                              settings.greedy_rounds);
  OptimizerConfig cfg;
  cfg.tolerance = settings.tolerance;
  cfg.max_iterations = settings.max_iterations;
  cfg.initial_step = settings.initial_step;
  cfg.restarts = settings.restarts;
  cfg.seed = seed;
  return nelder_mead(objective, std::move(start), cfg);
}

double EnsembleSolver::sector_energy_fixed(const std::vector<double>& theta,
                                           const WeightVector& wv, int sector) const {
  return sector_ensemble_energy(h_doubled_, ensemble_state(theta, wv), sector, wv);
}

double EnsembleSolver::sector_energy_reoptimized(const WeightVector& wv, int sector,
                                                 const OptimizerSettings& settings,
                                                 std::uint64_t seed,
                                                 const std::vector<double>& warm) {
  const std::string key(reinterpret_cast<const char*>(wv.ws.data()),
                        wv.ws.size() * sizeof(double));
  auto it = theta_cache_.find(key);
  if (it == theta_cache_.end()) {
    const StateVector prepared = build_free_wfield(wv);
    const Objective objective = [this, &prepared](const std::vector<double>& th) {
      return ensemble_energy(h_doubled_, ansatz_, th, prepared);
    };
    OptimizerConfig cfg;
    cfg.tolerance = settings.tolerance * settings.corner_tolerance_scale;
    cfg.max_iterations = settings.corner_max_iterations;
    cfg.initial_step = settings.corner_initial_step;
    cfg.restarts = 0;
    cfg.seed = seed;
    auto warm_start = warm.empty() ? std::vector<double>(shape_.n_params(), 0.0) : warm;
    it = theta_cache_.emplace(key, nelder_mead(objective, std::move(warm_start), cfg).x)
             .first;
  }
  return sector_energy_fixed(it->second, wv, sector);
}

std::vector<EnsembleSolver::StateReadout> EnsembleSolver::projection_energies(
    const std::vector<double>& theta, int sector) const {
  if (sector < 0 || sector > sites_)
    throw std::invalid_argument("experiment: sector out of range");
  const StateVector psi = ensemble_state(theta);
  const OrderingMap order = sector_ordering(w_, sector);
  std::vector<StateReadout> out;
  out.reserve(order.by_rank.size());
  for (int r = 1; r <= static_cast<int>(order.by_rank.size()); ++r) {
    const fock_index pattern = order.by_rank[r - 1];
    const ExtractedState ex = extract_eigenstate(psi, pattern);
    StateReadout readout;
    readout.pattern = pattern;
    readout.rank = r;
    readout.energy = state_energy(h_plain_, ex.state);
    readout.oracle = spectra_[sector][r - 1];
    readout.weight = ex.weight;
    out.push_back(readout);
  }
  return out;
}

// --- CSV ----------------------------------------------------------------------

std::string csv_header() {
  return "experiment_id,L,N,U,pattern,method,energy,oracle,abs_error,converged,"
         "iterations,wallclock_ms";
}

std::string csv_line(const ResultRow& row) {
  std::string out;
  out += row.experiment_id;
  out += ',' + std::to_string(row.sites);
  out += ',' + std::to_string(row.sector);
  out += ',' + fmt_double(row.u);
  out += ',' + row.pattern;
  out += ',' + row.method;
  out += ',' + fmt_double(row.energy);
  out += ',' + fmt_double(row.oracle);
  out += ',' + fmt_double(row.abs_error);
  out += row.converged ? ",true" : ",false";
  out += ',' + std::to_string(row.iterations);
  out += ',' + std::to_string(row.wallclock_ms);
  return out;
}

// --- runners -----------------------------------------------------------------

namespace {

struct PointOutput {
  std::vector<ResultRow> rows;
  ordered_json summary;
};

void write_outputs(const std::string& command, const ExperimentConfig& config,
                   const std::vector<PointOutput>& points, RunResult& result) {
  std::string csv = csv_header() + "\n";
  for (const auto& point : points)
    for (const auto& row : point.rows) csv += csv_line(row) + "\n";

  ordered_json doc;
  doc["command"] = command;
  doc["config"] = config_to_json(config);
  doc["results"] = ordered_json::array();
  for (const auto& point : points) doc["results"].push_back(point.summary);

  result.csv_path = now_path(config.out_dir, config.experiment_id, command, ".csv");
  result.json_path = now_path(config.out_dir, config.experiment_id, command, ".json");
  write_file(result.csv_path, csv);
  write_file(result.json_path, doc.dump(2) + "\n");

  for (const auto& point : points)
    for (const auto& row : point.rows) {
      if (!row.converged) result.ok = false;
      result.rows.push_back(row);
    }
}

ordered_json row_json(const ResultRow& row) {
  ordered_json j;
  j["sector"] = row.sector;
  j["pattern"] = row.pattern;
  j["method"] = row.method;
  j["energy"] = row.energy;
  j["oracle"] = row.oracle;
  j["abs_error"] = row.abs_error;
  j["converged"] = row.converged;
  return j;
}

}  // namespace

RunResult run_spectrum(const ExperimentConfig& config) {
  const WeightVector w = config_weights(config);
  const int count = static_cast<int>(config.u_values.size());
  std::vector<PointOutput> points(count);

  run_indexed(count, config.jobs, [&](int i) {
    const double u = config.u_values[i];
    const auto t0 = std::chrono::steady_clock::now();
    EnsembleSolver solver(config.sites, u, w, config.trotter_steps);
    const auto opt = solver.optimize(config.optimizer, point_seed(config, i));

    PointOutput& point = points[i];
    point.summary["u"] = u;
    point.summary["ensemble_energy"] = opt.value;
    point.summary["oracle_minimum"] = solver.oracle_minimum();
    point.summary["variational_bound_ok"] =
        opt.value >= solver.oracle_minimum() - 1e-9;
    point.summary["converged"] = opt.converged;
    point.summary["iterations"] = opt.iterations;
    point.summary["evaluations"] = opt.evaluations;
    point.summary["states"] = ordered_json::array();

    for (const int sector : config.sectors)
      for (const auto& readout : solver.projection_energies(opt.x, sector)) {
        ResultRow row;
        row.experiment_id = config.experiment_id;
        row.sites = config.sites;
        row.sector = sector;
        row.u = u;
        row.pattern = pattern_string(readout.pattern, config.sites);
        row.method = "projection";
        row.energy = readout.energy;
        row.oracle = readout.oracle;
        row.abs_error = std::abs(readout.energy - readout.oracle);
        row.converged = opt.converged;
        row.iterations = opt.iterations;
        point.rows.push_back(row);

        ordered_json rj = row_json(row);
        rj["rank"] = readout.rank;
        rj["weight"] = readout.weight;
        point.summary["states"].push_back(rj);
      }

    const long ms = elapsed_ms(t0, config.timing);
    for (auto& row : point.rows) row.wallclock_ms = ms;
    point.summary["wallclock_ms"] = ms;
  });

  RunResult result;
  write_outputs("spectrum", config, points, result);
  return result;
}

RunResult run_gaps(const ExperimentConfig& config) {
  const WeightVector w = config_weights(config);
  const WeightVector wprime = perturbed(w, config.delta);
  const int count = static_cast<int>(config.u_values.size());
  std::vector<PointOutput> points(count);

  run_indexed(count, config.jobs, [&](int i) {
    const double u = config.u_values[i];
    const auto t0 = std::chrono::steady_clock::now();
    EnsembleSolver solver(config.sites, u, w, config.trotter_steps);
    const std::uint64_t seed = point_seed(config, i);
    const auto opt = solver.optimize(config.optimizer, seed);

    PointOutput& point = points[i];
    point.summary["u"] = u;
    point.summary["ensemble_energy"] = opt.value;
    point.summary["converged"] = opt.converged;
    point.summary["gaps"] = ordered_json::array();

    const auto evaluate = [&](const WeightVector& wv, int sector) {
      return config.optimizer.corner_reoptimize
                 ? solver.sector_energy_reoptimized(wv, sector, config.optimizer, seed,
                                                    opt.x)
                 : solver.sector_energy_fixed(opt.x, wv, sector);
    };

    const auto make_row = [&](int sector, fock_index pattern, const char* method) {
      ResultRow row;
      row.experiment_id = config.experiment_id;
      row.sites = config.sites;
      row.sector = sector;
      row.u = u;
      row.pattern = pattern_string(pattern, config.sites);
      row.method = method;
      row.converged = opt.converged;
      row.iterations = opt.iterations;
      return row;
    };

    for (const int sector : config.sectors) {
      // Neutral gap: first excited minus ground within the sector.
      {
        ResultRow row = make_row(sector, 0, "neutral_gap");
        ordered_json gj;
        gj["sector"] = sector;
        gj["kind"] = "neutral";
        try {
          const OrderingMap order = sector_ordering(w, sector);
          if (order.by_rank.size() < 2)
            throw std::runtime_error("sector has a single state, no neutral gap");
          const fock_index p1 = order.by_rank[0];
          const fock_index p2 = order.by_rank[1];
          row.pattern = pattern_string(p2, config.sites);
          const auto sector_eval = [&](const WeightVector& wv) {
            return evaluate(wv, sector);
          };
          const double e1 = extract_eigenenergy(sector_eval, w, p1, config.delta);
          const double e2 = extract_eigenenergy(sector_eval, w, p2, config.delta);
          row.energy = e2 - e1;
          row.oracle = solver.spectra()[sector][1] - solver.spectra()[sector][0];
          row.abs_error = std::abs(row.energy - row.oracle);
          gj["ground"] = e1;
          gj["excited"] = e2;
        } catch (const std::exception& e) {
          row.energy = row.oracle = row.abs_error = kNan;
          row.converged = false;
          gj["error"] = e.what();
        }
        gj["value"] = row.energy;
        gj["oracle"] = row.oracle;
        gj["converged"] = row.converged;
        point.summary["gaps"].push_back(gj);
        point.rows.push_back(row);
      }
      // Fundamental gap around the sector.
      {
        ResultRow row = make_row(sector, 0, "fundamental_gap");
        ordered_json gj;
        gj["sector"] = sector;
        gj["kind"] = "fundamental";
        try {
          if (sector >= 1 && sector <= config.sites - 1)
            row.pattern = pattern_string(sector_ordering(w, sector).by_rank[0],
                                         config.sites);
          const GapResult g = gaps(evaluate, w, wprime, sector);
          std::vector<double> grounds(config.sites + 1);
          for (int s = 0; s <= config.sites; ++s) grounds[s] = solver.spectra()[s][0];
          const GapResult go = particle_gaps(grounds, sector);
          row.energy = g.gap;
          row.oracle = go.gap;
          row.abs_error = std::abs(g.gap - go.gap);
          gj["minus"] = g.minus;
          gj["plus"] = g.plus;
          gj["oracle_minus"] = go.minus;
          gj["oracle_plus"] = go.plus;
        } catch (const std::exception& e) {
          row.energy = row.oracle = row.abs_error = kNan;
          row.converged = false;
          gj["error"] = e.what();
        }
        gj["value"] = row.energy;
        gj["oracle"] = row.oracle;
        gj["converged"] = row.converged;
        point.summary["gaps"].push_back(gj);
        point.rows.push_back(row);
      }
    }

    const long ms = elapsed_ms(t0, config.timing);
    for (auto& row : point.rows) row.wallclock_ms = ms;
    point.summary["wallclock_ms"] = ms;
  });

  RunResult result;
  write_outputs("gaps", config, points, result);
  return result;
}

RunResult run_validate(const ExperimentConfig& config) {
  const WeightVector w = config_weights(config);
  std::mt19937_64 rng(config.seed);
  const auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };

  ordered_json checks = ordered_json::array();
  bool all_passed = true;
  const auto record = [&](const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) all_passed = false;
  };
  const auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, std::string("exception: ") + e.what());
    }
  };

  const int L = config.sites;
  char detail[160];

  guarded("unitarity", [&] {
    const AnsatzShape shape = uccsd_shape(L, config.trotter_steps);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> ws(L), theta(shape.n_params());
      for (auto& x : ws) x = uniform(0.05, 0.95);
      for (auto& t : theta) t = uniform(-0.5, 0.5);
      StateVector psi = build_free_wfield(make_weights(ws));
      apply_ansatz(shape, theta, psi);
      worst = std::max(worst, std::abs(psi.norm() - 1.0));
    }
    std::snprintf(detail, sizeof detail, "max |norm-1| = %.3e over 5 random instances",
                  worst);
    record("unitarity", worst <= 1e-12, detail);
  });

  guarded("projection_equivalence", [&] {
    const FockSpace space = doubled_space(L);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      StateVector psi(space);
      for (auto& a : psi.amp) a = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      psi.normalize();
      for (int n = 0; n <= L; ++n) {
        const StateVector direct = project_physical_number(psi, n);
        const StateVector fourier = project_number_fourier(psi, n);
        for (std::size_t b = 0; b < direct.amp.size(); ++b)
          worst = std::max(worst, std::abs(direct.amp[b] - fourier.amp[b]));
      }
    }
    std::snprintf(detail, sizeof detail,
                  "max |fourier - direct| = %.3e over 20 random states", worst);
    record("projection_equivalence", worst <= 1e-12, detail);
  });

  guarded("oracle_reconstruction", [&] {
    double worst = 0.0;
    for (const double u : config.u_values) {
      const auto spectra =
          oracle::all_sector_spectra(hubbard_bloch_terms({L, u}), L);
      for (const int sector : config.sectors) {
        if (sector < 1 || sector > L) continue;
        const OrderingMap order = sector_ordering(w, sector);
        const SectorEvaluator ideal = [&](const WeightVector& wv) {
          return oracle::sector_energy_ranked(wv, order, spectra[sector]);
        };
        for (const fock_index pattern : order.by_rank) {
          const double e = extract_eigenenergy(ideal, w, pattern, config.delta);
          worst = std::max(worst,
                           std::abs(e - spectra[sector][order.rank(pattern) - 1]));
        }
      }
    }
    std::snprintf(detail, sizeof detail,
                  "max |reconstructed - dense| = %.3e across sectors and U", worst);
    record("oracle_reconstruction", worst <= 1e-8, detail);
  });

  guarded("linearity", [&] {
    const double u = config.u_values.empty() ? 1.0 : config.u_values.front();
    EnsembleSolver solver(L, u, w, config.trotter_steps);
    OptimizerSettings quick = config.optimizer;
    quick.max_iterations = std::min<long>(quick.max_iterations, 500);
    quick.restarts = 0;
    const auto opt = solver.optimize(quick, point_seed(config, 0));
    const auto energy_at = [&](const WeightVector& wv) { return solver.energy(opt.x, wv); };
    double worst = 0.0;
    for (int mode = 0; mode < L; ++mode) {
      const double base = w.ws[mode];
      const double step = std::min(0.02, std::min(base, 1.0 - base) / 2);
      const auto report = linearity_scan(energy_at, w, mode,
                                         {base - step, base, base + step});
      worst = std::max(worst, report.max_residual);
    }
    std::snprintf(detail, sizeof detail,
                  "max affine residual = %.3e (3-point scans, fixed parameters)", worst);
    record("linearity", worst <= 1e-9, detail);
  });

  guarded("trotter_steps", [&] {
    bool ordered = true;
    double worst_ratio = 0.0;
    std::string summary;
    int index = 0;
    for (const double u : config.u_values) {
      double err[2];
      int k = 0;
      for (const int steps : {1, 4}) {
        EnsembleSolver solver(L, u, w, steps);
        const auto opt = solver.optimize(config.optimizer, point_seed(config, index));
        err[k++] = std::abs(opt.value - solver.oracle_minimum());
      }
      ++index;
      if (err[1] > err[0] + 1e-12) ordered = false;
      worst_ratio = std::max(worst_ratio, err[0] > 0 ? err[1] / err[0] : 0.0);
      char piece[64];
      std::snprintf(piece, sizeof piece, " U=%g: %.3e->%.3e", u, err[0], err[1]);
      summary += piece;
    }
    record("trotter_steps", ordered, "|E - exact| at steps 1 -> 4:" + summary);
  });

  RunResult result;
  result.ok = all_passed;

  ordered_json doc;
  doc["command"] = "validate";
  doc["config"] = config_to_json(config);
  doc["checks"] = checks;
  doc["all_passed"] = all_passed;
  result.json_path = now_path(config.out_dir, config.experiment_id, "validate", ".json");
  write_file(result.json_path, doc.dump(2) + "\n");
  return result;
}

}  // namespace wfield
