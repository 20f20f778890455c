// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Command-line driver: single points, bond-length scans, entropy
 *        reports and exact energies, with CSV and JSON outputs.
 *
 * Exit codes: 0 success, 1 unreadable or invalid input, 2 capacity exceeded,
 * 3 non-convergence.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uccvqe/entropy.hpp"
#include "uccvqe/fci.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/ml.hpp"
#include "uccvqe/refstate.hpp"
#include "uccvqe/vqe.hpp"

namespace uccvqe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kCapacityError = 2, kNonConvergence = 3 };

inline constexpr const char* kWorkersEnv = "UCCVQE_WORKERS";
inline constexpr const char* kCsvHeader =
    "label,bond_length,e_hf,e_mp2,e_vqe,e_fci,n_params_initial,n_params_final,n_iterations,wall_time_s";

struct RunConfig {
  std::vector<std::string> inputs;
  std::string manifest;
  std::vector<std::string> methods{"sa-saf"};
  VqeOptions vqe;
  MlOptions ml;
  std::optional<int> freeze_k;
  std::optional<double> freeze_eta;
  std::string out_dir = ".";
  int workers = 0;
  std::string label;
  std::optional<double> bond_length;
  std::vector<std::string> labels;
  std::string source = "both";
  std::uint64_t seed = 0;  ///< reserved; every algorithm is deterministic
};

inline const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"plain", "sa", "sa-saf", "ml"};
  return names;
}

inline VqeOptions options_for(const std::string& method, VqeOptions base) {
  base.use_spin_adaptation = method != "plain";
  base.use_saf = method == "sa-saf";
  return base;
}

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kCapacityError;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kNonConvergence;
  return kInputError;
}

inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline IntegralSet load_fcidump(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_fcidump(in);
}

/// Label and bond length from the sidecar next to @p path, if there is one.
inline std::pair<std::string, std::optional<double>> sidecar_identity(const fs::path& path) {
  fs::path meta = path;
  meta.replace_extension(".meta.json");
  std::ifstream in(meta);
  if (!in) return {path.stem().string(), std::nullopt};
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) return {path.stem().string(), std::nullopt};
  return {j.value("molecule", path.stem().string()),
          j.contains("bond_length") ? std::optional<double>(j["bond_length"].get<double>()) : std::nullopt};
}

struct ManifestRow {
  std::string label;
  double bond_length = 0.0;
  fs::path fcidump;
};

inline std::vector<ManifestRow> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest " + path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.emplace_back(detail::trim(cell));
    if (lineno == 1 && !f.empty() && f[0] == "label") continue;
    if (f.size() != 3) throw ParseError("manifest line " + std::to_string(lineno) + ": expected 3 fields");
    ManifestRow r;
    r.label = f[0];
    try {
      r.bond_length = std::stod(f[1]);
    } catch (const std::exception&) {
      throw ParseError("manifest line " + std::to_string(lineno) + ": bad bond length '" + f[1] + "'");
    }
    r.fcidump = fs::path(f[2]).is_absolute() ? fs::path(f[2]) : path.parent_path() / f[2];
    rows.push_back(std::move(r));
  }
  return rows;
}

struct PointResult {
  std::string label;
  double bond_length = 0.0;
  std::string method;
  double e_hf = 0.0;
  double e_mp2 = 0.0;
  double e_fci = 0.0;
  std::vector<int> frozen;
  VqeResult vqe;
  std::optional<RegressionModel> model;
  std::vector<std::string> notices;

  int total_iterations() const { return vqe.n_iterations + vqe.n_reduced_iterations; }
};

inline std::vector<int> frozen_for(const IntegralSet& ints, const RunConfig& cfg) {
  if (!cfg.freeze_k && !cfg.freeze_eta) return {};
  if (cfg.freeze_k && *cfg.freeze_k == 0) return {};
  const auto prof = entropy_profile(ints, EntropySource::kMp2);
  const auto policy = cfg.freeze_k ? FreezePolicy::count(*cfg.freeze_k) : FreezePolicy::threshold(*cfg.freeze_eta);
  return select_frozen(prof, ints.n_occupied(), policy);
}

inline PointResult run_point(const RunConfig& cfg, const std::string& method, const fs::path& fcidump,
                             const std::string& label, double bond_length) {
  PointResult r;
  r.label = label;
  r.bond_length = bond_length;
  r.method = method;
  const IntegralSet full = load_fcidump(fcidump);
  r.frozen = frozen_for(full, cfg);
  const IntegralSet ints = freeze_orbitals(full, {r.frozen.begin(), r.frozen.end()});
  const ReferenceState ref = mp2(ints, nullptr);
  r.e_hf = ref.e_hf;
  r.e_mp2 = ref.e_hf + ref.e_mp2;
  r.e_fci = fci_ground_state(ints).energy;
  if (method == "ml") {
    auto ml = run_ml_assisted_vqe(ints, options_for(method, cfg.vqe), cfg.ml);
    r.vqe = std::move(ml.vqe);
    if (!ml.models.empty()) r.model = ml.models.back();
    r.notices = std::move(ml.notices);
  } else {
    r.vqe = run_uccsd_vqe(ints, options_for(method, cfg.vqe));
  }
  return r;
}

inline json options_json(const RunConfig& cfg, const std::string& method) {
  json o;
  o["method"] = method;
  o["kappa"] = cfg.vqe.kappa;
  o["eps1"] = cfg.vqe.eps1;
  o["eps2"] = cfg.vqe.eps2;
  o["energy_tol"] = cfg.vqe.energy_tol;
  o["max_iterations"] = cfg.vqe.max_iterations;
  o["gradient"] = cfg.vqe.gradient == GradientMethod::kAdjoint ? "adjoint" : "central-difference";
  o["fd_step"] = cfg.vqe.fd_step;
  if (method == "ml") {
    o["ml_n"] = cfg.ml.n;
    o["ml_fraction"] = cfg.ml.split.value;
    o["kernel"] = cfg.ml.kernel.kind == Kernel::Kind::kLinear ? "linear" : "poly";
    o["gamma"] = cfg.ml.kernel.gamma;
    o["c0"] = cfg.ml.kernel.c0;
    o["degree"] = cfg.ml.kernel.degree;
    o["lambda"] = cfg.ml.lambda;
  }
  o["freeze_k"] = cfg.freeze_k ? json(*cfg.freeze_k) : json(nullptr);
  o["freeze_eta"] = cfg.freeze_eta ? json(*cfg.freeze_eta) : json(nullptr);
  o["seed"] = cfg.seed;
  return o;
}

inline json to_json(const PointResult& r, const RunConfig& cfg) {
  json j;
  j["label"] = r.label;
  j["bond_length"] = r.bond_length;
  j["method"] = r.method;
  j["options"] = options_json(cfg, r.method);
  j["e_hf"] = r.e_hf;
  j["e_mp2"] = r.e_mp2;
  j["e_fci"] = r.e_fci;
  j["e_vqe"] = r.vqe.energy;
  j["error_vs_fci"] = r.vqe.energy - r.e_fci;
  j["theta_final"] = r.vqe.theta_final;
  j["n_params_initial"] = r.vqe.n_params_initial;
  j["n_params_final"] = r.vqe.n_params_final;
  j["n_iterations"] = r.vqe.n_iterations;
  j["n_reduced_iterations"] = r.vqe.n_reduced_iterations;
  j["dropped_indices"] = r.vqe.dropped_indices;
  j["s_squared_final"] = r.vqe.s_squared_final;
  j["converged"] = r.vqe.converged;
  j["termination"] = r.vqe.trace.termination;
  j["frozen_orbitals"] = r.frozen;
  j["wall_time_s"] = r.vqe.wall_time;
  json energies = json::array();
  for (const auto& it : r.vqe.trace.iterates) energies.push_back({{"iteration", it.iteration}, {"energy", it.energy}});
  j["trace"] = energies;
  j["notices"] = r.notices;
  return j;
}

inline std::string csv_row(const PointResult& r) {
  using detail::format_double;
  std::ostringstream o;
  o << r.label << ',' << format_double(r.bond_length) << ',' << format_double(r.e_hf) << ','
    << format_double(r.e_mp2) << ',' << format_double(r.vqe.energy) << ',' << format_double(r.e_fci) << ','
    << r.vqe.n_params_initial << ',' << r.vqe.n_params_final << ',' << r.total_iterations() << ','
    << format_double(r.vqe.wall_time);
  return o.str();
}

inline void append_csv(const fs::path& path, const std::vector<std::string>& rows) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (fresh) out << kCsvHeader << '\n';
  for (const auto& r : rows) out << r << '\n';
}

inline void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

inline int cmd_vqe(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  if (cfg.inputs.size() != 1) {
    err << "vqe: expected exactly one FCIDUMP input\n";
    return kInputError;
  }
  if (cfg.methods.size() != 1) {
    err << "vqe: expected exactly one --method\n";
    return kInputError;
  }
  const fs::path input = cfg.inputs.front();
  auto [label, bond] = sidecar_identity(input);
  if (!cfg.label.empty()) label = cfg.label;
  if (cfg.bond_length) bond = cfg.bond_length;
  PointResult r;
  try {
    r = run_point(cfg, cfg.methods.front(), input, label, bond.value_or(0.0));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  fs::create_directories(cfg.out_dir);
  write_json(fs::path(cfg.out_dir) / "result.json", to_json(r, cfg));
  if (r.model) write_json(fs::path(cfg.out_dir) / "ml_model.json", to_json(*r.model));
  append_csv(fs::path(cfg.out_dir) / "results.csv", {csv_row(r)});
  out << std::setprecision(12) << r.label << " R=" << r.bond_length << " method=" << r.method
      << " E_vqe=" << r.vqe.energy << " E_fci=" << r.e_fci << " params " << r.vqe.n_params_initial << " -> "
      << r.vqe.n_params_final << " iterations " << r.total_iterations() << '\n';
  for (const auto& n : r.notices) err << "notice: " << n << '\n';
  if (!r.vqe.converged) {
    err << "error: not converged (" << r.vqe.trace.termination << ")\n";
    return kNonConvergence;
  }
  return kOk;
}

/// Runs every (row, method) pair on a pool of workers; per-row failures are recorded.
inline int cmd_scan(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<ManifestRow> rows;
  try {
    rows = read_manifest(cfg.manifest);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (!cfg.labels.empty())
    std::erase_if(rows, [&](const ManifestRow& r) {
      return std::find(cfg.labels.begin(), cfg.labels.end(), r.label) == cfg.labels.end();
    });
  struct Job {
    const ManifestRow* row;
    std::string method;
    std::optional<PointResult> result;
    std::string error;
    int code = kOk;
  };
  std::vector<Job> jobs;
  for (const auto& m : cfg.methods)
    for (const auto& r : rows) jobs.push_back({&r, m, std::nullopt, {}, kOk});

  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto work = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      Job& j = jobs[k];
      try {
        j.result = run_point(cfg, j.method, j.row->fcidump, j.row->label, j.row->bond_length);
        if (!j.result->vqe.converged) {
          j.code = kNonConvergence;
          j.error = "not converged: " + j.result->vqe.trace.termination;
        }
      } catch (const std::exception& e) {
        j.code = exit_code_for(e);
        j.error = e.what();
      }
      std::lock_guard lock(log);
      err << j.row->label << " R=" << j.row->bond_length << " " << j.method << (j.code ? " FAILED: " + j.error : " done")
          << '\n';
    }
  };
  const int n_workers = std::min<int>(worker_count(cfg.workers), std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return std::tie(a.method, a.row->label, a.row->bond_length) < std::tie(b.method, b.row->label, b.row->bond_length);
  });
  fs::create_directories(cfg.out_dir);
  std::map<std::string, std::vector<std::string>> csv;
  for (const auto& m : cfg.methods) csv[m];
  json points = json::object();
  json failures = json::array();
  int code = kOk;
  for (const auto& j : jobs) {
    const std::string key = j.row->label + '@' + detail::format_double(j.row->bond_length);
    if (j.result) {
      csv[j.method].push_back(csv_row(*j.result));
      json& p = points[key];
      p["label"] = j.row->label;
      p["bond_length"] = j.row->bond_length;
      p["e_fci"] = j.result->e_fci;
      p["e_hf"] = j.result->e_hf;
      p["energies"][j.method] = j.result->vqe.energy;
      p["n_params_final"][j.method] = j.result->vqe.n_params_final;
    }
    if (j.code != kOk) {
      failures.push_back({{"label", j.row->label}, {"bond_length", j.row->bond_length}, {"method", j.method},
                          {"error", j.error}, {"exit_code", j.code}});
      if (code == kOk) code = j.code;
    }
  }
  for (const auto& [m, lines] : csv) {
    const fs::path path = fs::path(cfg.out_dir) / ("scan_" + m + ".csv");
    std::ofstream f(path);
    f << kCsvHeader << '\n';
    for (const auto& l : lines) f << l << '\n';
  }
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"sa", "plain"}, {"sa-saf", "sa"}, {"ml", "sa-saf"}};
  json rows_out = json::array();
  for (auto& [key, p] : points.items()) {
    json diffs = json::object();
    for (const auto& [a, b] : pairs)
      if (p["energies"].contains(a) && p["energies"].contains(b))
        diffs[a + "_minus_" + b] = p["energies"][a].get<double>() - p["energies"][b].get<double>();
    for (auto& [m, e] : p["energies"].items()) diffs[m + "_minus_fci"] = e.get<double>() - p["e_fci"].get<double>();
    p["differences"] = diffs;
    rows_out.push_back(p);
  }
  std::stable_sort(rows_out.begin(), rows_out.end(), [](const json& a, const json& b) {
    return std::make_pair(a["label"].get<std::string>(), a["bond_length"].get<double>()) <
           std::make_pair(b["label"].get<std::string>(), b["bond_length"].get<double>());
  });
  write_json(fs::path(cfg.out_dir) / "scan_summary.json",
             {{"methods", cfg.methods}, {"points", rows_out}, {"failures", failures}});
  out << "scan: " << rows.size() << " geometries x " << cfg.methods.size() << " methods, " << failures.size()
      << " failed\n";
  return code;
}

inline int cmd_entropy(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<ManifestRow> rows;
  try {
    if (!cfg.manifest.empty()) rows = read_manifest(cfg.manifest);
    for (const auto& in : cfg.inputs) {
      auto [label, bond] = sidecar_identity(in);
      rows.push_back({cfg.label.empty() ? label : cfg.label, cfg.bond_length.value_or(bond.value_or(0.0)), in});
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (!cfg.labels.empty())
    std::erase_if(rows, [&](const ManifestRow& r) {
      return std::find(cfg.labels.begin(), cfg.labels.end(), r.label) == cfg.labels.end();
    });
  std::stable_sort(rows.begin(), rows.end(), [](const ManifestRow& a, const ManifestRow& b) {
    return std::tie(a.label, a.bond_length) < std::tie(b.label, b.bond_length);
  });
  std::vector<EntropySource> sources;
  if (cfg.source == "mp2" || cfg.source == "both") sources.push_back(EntropySource::kMp2);
  if (cfg.source == "fci" || cfg.source == "both") sources.push_back(EntropySource::kFci);
  if (sources.empty()) {
    err << "entropy: --source must be mp2, fci or both\n";
    return kInputError;
  }
  const FreezePolicy policy = cfg.freeze_k ? FreezePolicy::count(*cfg.freeze_k)
                                           : FreezePolicy::threshold(cfg.freeze_eta.value_or(0.01));
  std::vector<EntropyRow> csv;
  json report = json::array();
  for (const auto& row : rows) {
    try {
      const IntegralSet ints = load_fcidump(row.fcidump);
      json entry{{"label", row.label}, {"bond_length", row.bond_length}};
      for (auto src : sources) {
        const auto prof = entropy_profile(ints, src);
        for (int p = 0; p < static_cast<int>(prof.entropies.size()); ++p)
          csv.push_back({row.bond_length, p, prof.entropies[p], src});
        entry["entropies"][to_string(src)] = prof.entropies;
        std::vector<int> occ(ints.n_occupied());
        std::iota(occ.begin(), occ.end(), 0);
        std::stable_sort(occ.begin(), occ.end(), [&](int a, int b) { return prof.entropies[a] < prof.entropies[b]; });
        entry["occupied_by_entropy"][to_string(src)] = occ;
      }
      const auto mp2_prof = entropy_profile(ints, EntropySource::kMp2);
      const auto frozen = (policy.kind == FreezePolicy::Kind::kCount && policy.k == 0)
                              ? std::vector<int>{}
                              : select_frozen(mp2_prof, ints.n_occupied(), policy);
      const auto savings = freeze_savings(ints.n_spatial(), ints.n_occupied(), static_cast<int>(frozen.size()));
      entry["frozen"] = frozen;
      entry["qubits"] = {savings.qubits_before, savings.qubits_after};
      entry["parameters"] = {savings.params_before, savings.params_after};
      out << row.label << " R=" << std::setprecision(6) << row.bond_length << ": ";
      if (frozen.empty()) {
        out << "no freeze recommendation\n";
      } else {
        out << "freeze {";
        for (std::size_t k = 0; k < frozen.size(); ++k) out << (k ? ", " : "") << frozen[k];
        out << "} (" << to_string(savings) << ")\n";
      }
      report.push_back(entry);
    } catch (const std::exception& e) {
      err << "error: " << row.fcidump.string() << ": " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  fs::create_directories(cfg.out_dir);
  std::ofstream f(fs::path(cfg.out_dir) / "entropy.csv");
  write_entropy_csv(f, csv);
  write_json(fs::path(cfg.out_dir) / "entropy_report.json", report);
  return kOk;
}

inline int cmd_fci(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  json all = json::array();
  for (const auto& in : cfg.inputs) {
    try {
      const IntegralSet ints = load_fcidump(in);
      const auto res = fci_ground_state(ints);
      const double ehf = hf_energy(ints);
      out << std::setprecision(12) << in << ": E_fci=" << res.energy << " E_hf=" << ehf
          << " dimension=" << res.dimension << '\n';
      all.push_back({{"input", in}, {"e_fci", res.energy}, {"e_hf", ehf}, {"dimension", res.dimension},
                     {"iterations", res.iterations}});
    } catch (const std::exception& e) {
      err << "error: " << in << ": " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  fs::create_directories(cfg.out_dir);
  write_json(fs::path(cfg.out_dir) / "fci.json", all);
  return kOk;
}

/// Parses argv and dispatches; flags override values read from --config.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"UCCSD-VQE with parameter reduction"};
  app.set_config("--config", "", "TOML file with option values; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string kernel = "poly";
  std::string gradient = "adjoint";
  double ml_fraction = cfg.ml.split.value;
  app.add_option("--method", cfg.methods, "plain, sa, sa-saf or ml (scan accepts several)")
      ->check(CLI::IsMember(method_names()));
  app.add_option("--kappa", cfg.vqe.kappa, "filter after this many iterations")->check(CLI::PositiveNumber);
  app.add_option("--eps1", cfg.vqe.eps1, "amplitude cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--eps2", cfg.vqe.eps2, "amplitude change cutoff")->check(CLI::NonNegativeNumber);
  app.add_option("--energy-tol", cfg.vqe.energy_tol, "stop when |dE| is below this (Hartree)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", cfg.vqe.max_iterations)->check(CLI::PositiveNumber);
  app.add_option("--gradient", gradient)->check(CLI::IsMember({"adjoint", "fd"}));
  app.add_option("--fd-step", cfg.vqe.fd_step)->check(CLI::PositiveNumber);
  app.add_option("--freeze-k", cfg.freeze_k, "freeze the k lowest-entropy occupied orbitals");
  app.add_option("--freeze-eta", cfg.freeze_eta, "freeze occupied orbitals with S < eta * max S");
  app.add_option("--ml-n", cfg.ml.n, "full-space iterations per cycle")->check(CLI::PositiveNumber);
  app.add_option("--ml-fraction", ml_fraction, "principal fraction")->check(CLI::Range(0.0, 1.0));
  app.add_option("--kernel", kernel)->check(CLI::IsMember({"linear", "poly"}));
  app.add_option("--gamma", cfg.ml.kernel.gamma);
  app.add_option("--c0", cfg.ml.kernel.c0);
  app.add_option("--degree", cfg.ml.kernel.degree)->check(CLI::PositiveNumber);
  app.add_option("--lambda", cfg.ml.lambda)->check(CLI::PositiveNumber);
  app.add_option("--out-dir", cfg.out_dir);
  app.add_option("--workers", cfg.workers, "parallel rows in a scan (default from $UCCVQE_WORKERS)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--label", cfg.label);
  app.add_option("--bond-length", cfg.bond_length);
  app.add_option("--only", cfg.labels, "restrict manifest rows to these labels");
  app.add_option("--seed", cfg.seed, "reserved");

  auto* vqe = app.add_subcommand("vqe", "one geometry");
  vqe->add_option("fcidump", cfg.inputs)->required()->expected(1);
  auto* scan = app.add_subcommand("scan", "every row of a manifest");
  scan->add_option("manifest", cfg.manifest)->required();
  auto* ent = app.add_subcommand("entropy", "orbital entropies and freeze recommendation");
  ent->add_option("fcidump", cfg.inputs);
  ent->add_option("--manifest", cfg.manifest);
  ent->add_option("--source", cfg.source)->check(CLI::IsMember({"mp2", "fci", "both"}));
  auto* fci = app.add_subcommand("fci", "exact ground-state energy");
  fci->add_option("fcidump", cfg.inputs)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  if (cfg.freeze_k && cfg.freeze_eta) {
    err << "error: --freeze-k and --freeze-eta are mutually exclusive\n";
    return kInputError;
  }
  cfg.ml.split = SplitPolicy::fraction(ml_fraction);
  cfg.ml.kernel.kind = kernel == "linear" ? Kernel::Kind::kLinear : Kernel::Kind::kPolynomial;
  cfg.vqe.gradient = gradient == "fd" ? GradientMethod::kCentralDifference : GradientMethod::kAdjoint;
  try {
    cfg.vqe.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (vqe->parsed()) return cmd_vqe(cfg, out, err);
  if (scan->parsed()) return cmd_scan(cfg, out, err);
  if (ent->parsed()) return cmd_entropy(cfg, out, err);
  return cmd_fci(cfg, out, err);
}

}  // namespace uccvqe::cli
