// Copyright 2026 The paritysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "paritysim/analytics.hpp"
#include "paritysim/audit.hpp"
#include "paritysim/simulator.hpp"

namespace paritysim::cli {

namespace {

using nlohmann::json;

// Thrown for semantically invalid flags; maps to kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a command ran but its checks failed; maps to kExitValidation.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : file_(path) {
    if (!file_) throw UsageError("cannot open output file '" + path + "'");
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) file_ << ',';
      file_ << cells[i];
    }
    file_ << '\n';
  }

 private:
  std::ofstream file_;
};

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

struct RunContext {
  std::vector<std::string> args;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string out;
  Execution exec = Execution::parallel;
};

void write_manifest(const RunContext& ctx, double elapsed) {
  json manifest;
  manifest["command"] = ctx.command;
  manifest["args"] = ctx.args;
  manifest["seed"] = ctx.seed ? json(*ctx.seed) : json(nullptr);
  manifest["versions"] = {
      {"paritysim", "0.1.0"},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"compiler", __VERSION__},
  };
  manifest["outputs"] = ctx.outputs;
  manifest["elapsed_seconds"] = elapsed;
  const std::string path = manifest_path_for(ctx.out);
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write manifest '" + path + "'");
  file << manifest.dump(2) << '\n';
}

std::uint64_t require_seed(const RunContext& ctx) {
  if (!ctx.seed) throw UsageError(ctx.command + ": --seed is required");
  return *ctx.seed;
}

void require_positive(std::size_t value, const char* flag) {
  if (value < 1) throw UsageError(std::string(flag) + " must be at least 1");
}

// ---------------------------------------------------------------------------
// fidelity-sweep

struct FidelityArgs {
  std::string phi;
  std::string delta_phi;
  std::string w;
  int n_max = 6;
  std::size_t samples = 5000;
  std::size_t noise_samples = 1000;
  bool naive = false;
  bool grid = false;
  std::string phi_min = "0.7pi";
  std::string phi_max = "pi";
  int grid_steps = 11;
};

std::string fidelity_series_label(const ProtocolConfig& c) {
  return std::string(to_string(c.noise.kind));
}

void fidelity_grid(const FidelityArgs& a, RunContext& ctx, std::ostream& out) {
  const std::uint64_t seed = require_seed(ctx);
  const double lo = parse_angle(a.phi_min);
  const double hi = parse_angle(a.phi_max);
  if (a.grid_steps < 2) throw UsageError("--grid-steps must be at least 2");
  if (!(hi > lo)) throw UsageError("--phi-max must exceed --phi-min");
  CsvWriter csv(ctx.out, {"phi1", "phi2", "best_n", "best_mean_fidelity", "samples", "seed"});
  for (int i = 0; i < a.grid_steps; ++i) {
    for (int j = 0; j < a.grid_steps; ++j) {
      const double phi1 = lo + (hi - lo) * i / (a.grid_steps - 1);
      const double phi2 = lo + (hi - lo) * j / (a.grid_steps - 1);
      ProtocolConfig c;
      c.phi = 0.5 * (phi1 + phi2);
      c.noise = NoiseModel::imbalanced(phi1 - c.phi, phi2 - c.phi);
      int best_n = 1;
      double best = -1.0;
      for (int n = 1; n <= a.n_max; ++n) {
        c.n = n;
        const double f = avg_channel_fidelity(c, a.samples, seed, ctx.exec).mean;
        if (f > best) {
          best = f;
          best_n = n;
        }
      }
      csv.row({num(phi1), num(phi2), num(best_n), num(best), num(a.samples), std::to_string(seed)});
    }
  }
  out << "fidelity-sweep: wrote " << a.grid_steps * a.grid_steps << " grid cells to " << ctx.out << '\n';
}

void fidelity_sweep(const FidelityArgs& a, RunContext& ctx, std::ostream& out) {
  if (a.n_max < 1) throw UsageError("--n-max must be at least 1");
  require_positive(a.samples, "--samples");
  if (a.samples < 2) throw UsageError("--samples must be at least 2");
  ctx.outputs.push_back(ctx.out);
  if (a.grid) {
    fidelity_grid(a, ctx, out);
    return;
  }
  const std::uint64_t seed = require_seed(ctx);
  if (a.phi.empty()) throw UsageError("--phi is required");
  if (!a.delta_phi.empty() && !a.w.empty()) throw UsageError("--delta-phi and --w are exclusive");

  ProtocolConfig c;
  c.phi = parse_angle(a.phi);
  double knob = 0.0;
  if (!a.delta_phi.empty()) {
    knob = parse_angle(a.delta_phi);
    c.noise = NoiseModel::imbalanced(0.5 * knob, -0.5 * knob);
  } else if (!a.w.empty()) {
    knob = parse_angle(a.w);
    if (knob < 0.0) throw UsageError("--w must be non-negative");
    c.noise = NoiseModel::gaussian(knob);
    require_positive(a.noise_samples, "--noise-samples");
  }

  CsvWriter csv(ctx.out, {"n", "phi", "delta_phi_or_w", "mean_infidelity", "std_dev", "samples",
                          "seed", "series"});
  double best_fidelity = -1.0;
  int best_n = 1;
  for (int n = 1; n <= a.n_max; ++n) {
    c.n = n;
    const FidelityEstimate est = c.noise.is_stochastic()
                                     ? gaussian_avg_fidelity(c, a.samples, a.noise_samples, seed, ctx.exec)
                                     : avg_channel_fidelity(c, a.samples, seed, ctx.exec);
    if (est.mean > best_fidelity) {
      best_fidelity = est.mean;
      best_n = n;
    }
    csv.row({num(n), num(c.phi), num(knob), num(1.0 - est.mean), num(est.std_dev), num(a.samples),
             std::to_string(seed), fidelity_series_label(c)});
  }
  if (a.naive) {
    for (int n = 1; n <= a.n_max; ++n) {
      const FidelityEstimate est = naive_avg_fidelity(c.phi, n, a.samples, seed, ctx.exec);
      csv.row({num(n), num(c.phi), num(0.0), num(1.0 - est.mean), num(est.std_dev), num(a.samples),
               std::to_string(seed), "naive"});
    }
  }
  out << "fidelity-sweep: best mean fidelity " << format_number(best_fidelity) << " at n=" << best_n
      << '\n';
}

// ---------------------------------------------------------------------------
// errp-sweep

struct ErrpArgs {
  std::string phi;
  std::string noise = "none";
  std::string param = "0";
  int n_max = 10;
  std::size_t avg_samples = 4000;
};

NoiseModel noise_from_flags(NoiseKind kind, double param) {
  switch (kind) {
    case NoiseKind::none: return NoiseModel::noiseless();
    case NoiseKind::imbalanced: return NoiseModel::imbalanced(0.5 * param, -0.5 * param);
    case NoiseKind::gaussian: return NoiseModel::gaussian(param);
    case NoiseKind::pauli_z_before: return NoiseModel::pauli_z_before(param);
    case NoiseKind::pauli_x_between: return NoiseModel::pauli_x_between(param);
    case NoiseKind::pauli_y_between: return NoiseModel::pauli_y_between(param);
    case NoiseKind::depolarizing_before: return NoiseModel::depolarizing_before(param);
  }
  throw UsageError("unknown noise model");
}

void errp_sweep(const ErrpArgs& a, RunContext& ctx, std::ostream& out, std::ostream& err) {
  if (a.phi.empty()) throw UsageError("--phi is required");
  if (a.n_max < 1) throw UsageError("--n-max must be at least 1");
  NoiseKind kind;
  try {
    kind = parse_noise_kind(a.noise);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // Angles for the coherent models, probabilities for the Pauli ones.
  const bool angular = kind == NoiseKind::imbalanced || kind == NoiseKind::gaussian;
  const double param = parse_angle(a.param);
  if (!angular && kind != NoiseKind::none && a.param.find("pi") != std::string::npos) {
    throw UsageError("--param is a probability for model '" + a.noise + "'");
  }
  ProtocolConfig c;
  c.phi = parse_angle(a.phi);
  c.noise = noise_from_flags(kind, param);
  const bool sampled = ctx.seed.has_value() && a.avg_samples > 0;
  if (sampled && a.avg_samples < 2) throw UsageError("--avg-samples must be 0 or at least 2");

  ctx.outputs.push_back(ctx.out);
  CsvWriter csv(ctx.out,
                {"n", "model", "param", "max_errp", "avg_errp_analytic", "avg_errp_sampled"});
  for (int n = 1; n <= a.n_max; ++n) {
    c.n = n;
    const ErrorProbabilityReport r = errp_for_config(c);
    std::string sampled_cell;
    if (sampled) {
      const SampledAverage s = sampled_haar_average(r.coefficients, a.avg_samples, *ctx.seed, ctx.exec);
      sampled_cell = num(s.mean);
      if (std::abs(s.mean - r.haar_average) > 3.0 * s.std_error) {
        err << "errp-sweep: n=" << n << " sampled average is outside 3 sigma of the analytic value\n";
      }
    }
    csv.row({num(n), std::string(to_string(kind)), num(param), num(r.max_over_states),
             num(r.haar_average), sampled_cell});
  }
  out << "errp-sweep: wrote " << a.n_max << " rows to " << ctx.out << '\n';
}

// ---------------------------------------------------------------------------
// basis-sweep

struct BasisArgs {
  std::string phi_mean;
  std::string delta_phi = "0";
  std::string range = "0.1pi";
  int steps = 201;
  int n = 1;
};

void basis_sweep(const BasisArgs& a, RunContext& ctx, std::ostream& out) {
  if (a.phi_mean.empty()) throw UsageError("--phi-mean is required");
  if (a.steps < 2) throw UsageError("--steps must be at least 2");
  if (a.n < 1) throw UsageError("--n must be at least 1");
  const double range = parse_angle(a.range);
  if (!(range > 0.0)) throw UsageError("--phi-meas-range must be positive");
  const double delta = parse_angle(a.delta_phi);

  ProtocolConfig c;
  c.phi = parse_angle(a.phi_mean);
  c.n = a.n;
  c.noise = NoiseModel::imbalanced(0.5 * delta, -0.5 * delta);
  ctx.outputs.push_back(ctx.out);
  CsvWriter csv(ctx.out, {"phi_meas", "avg_errp"});
  double best = std::numeric_limits<double>::infinity();
  double best_at = c.phi;
  for (int i = 0; i < a.steps; ++i) {
    const double phi_meas = c.phi - range + 2.0 * range * i / (a.steps - 1);
    c.phi_meas = phi_meas;
    const double avg = errp_for_config(c).haar_average;
    if (avg < best) {
      best = avg;
      best_at = phi_meas;
    }
    csv.row({num(phi_meas), num(avg)});
  }
  out << "basis-sweep: minimum " << format_number(best) << " at phi_meas = " << format_number(best_at / kPi)
      << " pi\n";
}

// ---------------------------------------------------------------------------
// oracle-audit

struct AuditArgs {
  std::size_t grid_size = 500;
  bool inject_fault = false;
};

void oracle_audit(const AuditArgs& a, RunContext& ctx, std::ostream& out) {
  require_positive(a.grid_size, "--grid-size");
  AuditOptions options;
  options.grid_size = a.grid_size;
  options.seed = require_seed(ctx);
  if (a.inject_fault) {
    // Negative control: a closed form that is off by one part in a thousand.
    options.closed_form = [](const ProtocolConfig& c, const std::optional<PureState>& s) {
      ErrorProbabilityReport r = errp_for_config(c, s);
      if (r.value_for_state) *r.value_for_state *= 1.001;
      return r;
    };
  }
  const AuditReport report = run_oracle_audit(options, ctx.exec);

  ctx.outputs.push_back(ctx.out);
  CsvWriter csv(ctx.out, {"model", "tuples", "worst_deviation", "passed"});
  json detail;
  for (const ModelAudit& m : report.models) {
    csv.row({std::string(to_string(m.kind)), num(m.tuples), num(m.worst_deviation),
             m.passed ? "true" : "false"});
    out << "  " << to_string(m.kind) << ": worst deviation " << format_number(m.worst_deviation)
        << (m.passed ? "  ok\n" : "  FAIL\n");
  }
  for (const PauliXReading& r : report.pauli_x) {
    detail["pauli_x"].push_back({{"n", r.n},
                                 {"exact_average", r.exact_average},
                                 {"single_odd_formula_average", r.single_odd_average},
                                 {"both_odd_average", r.both_odd_average},
                                 {"exact_max", r.exact_max},
                                 {"single_odd_formula_max", r.single_odd_max}});
    out << "  px n=" << r.n << ": exact average " << format_number(r.exact_average)
        << ", single-odd formula " << format_number(r.single_odd_average) << ", both-odd reading "
        << format_number(r.both_odd_average) << '\n';
  }
  for (const ImbalancedReading& r : report.imbalanced) {
    detail["imbalanced"].push_back(
        {{"n", r.n}, {"closed_max", r.closed_max}, {"exact_max", r.exact_max}});
    out << "  imbalanced n=" << r.n << ": max " << format_number(r.exact_max) << '\n';
  }
  detail["worst_deviation"] = report.worst_deviation;
  detail["passed"] = report.passed;
  const std::string detail_path =
      (std::filesystem::path(ctx.out).replace_extension(".audit.json")).string();
  std::ofstream(detail_path) << detail.dump(2) << '\n';
  ctx.outputs.push_back(detail_path);

  out << "oracle-audit: worst deviation " << format_number(report.worst_deviation) << '\n';
  if (!report.passed) throw ValidationFailure("oracle audit: deviation above tolerance");
}

// ---------------------------------------------------------------------------
// replay

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool write_outputs_manifest);

int replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  std::ifstream f(manifest_path);
  if (!f) throw UsageError("cannot open manifest '" + manifest_path + "'");
  json manifest;
  try {
    f >> manifest;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed manifest: ") + e.what());
  }
  const auto args = manifest.at("args").get<std::vector<std::string>>();
  const auto outputs = manifest.at("outputs").get<std::vector<std::string>>();
  std::vector<std::string> before;
  for (const auto& path : outputs) before.push_back(slurp(path));
  const int code = dispatch(args, out, err, true);
  if (code != kExitOk) return code;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (slurp(outputs[i]) != before[i]) {
      err << "replay: " << outputs[i] << " differs from the recorded run\n";
      return kExitValidation;
    }
  }
  out << "replay: " << outputs.size() << " output(s) reproduced byte-for-byte\n";
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool write_outputs_manifest) {
  CLI::App app{"Parity projection protocol simulator", "paritysim"};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.args = args;
  std::uint64_t seed = 0;
  bool serial = false;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--seed", seed, "Master random seed");
    sub->add_flag("--serial", serial, "Run the serial reference loops");
    auto* o = sub->add_option("--out", ctx.out, "Output CSV path");
    if (needs_out) o->required();
  };

  FidelityArgs fa;
  auto* fid = app.add_subcommand("fidelity-sweep", "Average channel infidelity versus cycle count");
  fid->add_option("--phi", fa.phi, "Nominal CPhase angle");
  fid->add_option("--delta-phi", fa.delta_phi, "Gate imbalance phi1 - phi2");
  fid->add_option("--w", fa.w, "Gaussian angle width");
  fid->add_option("--n-max", fa.n_max);
  fid->add_option("--samples", fa.samples, "Haar states per estimate");
  fid->add_option("--noise-samples", fa.noise_samples, "Gaussian angle schedules per estimate");
  fid->add_flag("--naive", fa.naive, "Also emit the nested naive-circuit series");
  fid->add_flag("--grid", fa.grid, "Sweep (phi1, phi2) and report the best n");
  fid->add_option("--phi-min", fa.phi_min);
  fid->add_option("--phi-max", fa.phi_max);
  fid->add_option("--grid-steps", fa.grid_steps);
  add_common(fid, true);

  ErrpArgs ea;
  auto* errp = app.add_subcommand("errp-sweep", "Maximum and Haar-average error probability");
  errp->add_option("--phi", ea.phi, "Nominal CPhase angle");
  errp->add_option("--noise", ea.noise, "none, imbalanced, gaussian, pz, px, py or depol");
  errp->add_option("--param", ea.param, "Delta phi, w or error probability");
  errp->add_option("--n-max", ea.n_max);
  errp->add_option("--avg-samples", ea.avg_samples, "Haar states for the sampled average");
  add_common(errp, true);

  BasisArgs ba;
  auto* basis = app.add_subcommand("basis-sweep", "Average error probability versus phi_meas");
  basis->add_option("--phi-mean", ba.phi_mean);
  basis->add_option("--delta-phi", ba.delta_phi);
  basis->add_option("--phi-meas-range", ba.range, "Half-width of the sweep around phi_mean");
  basis->add_option("--steps", ba.steps);
  basis->add_option("--n", ba.n);
  add_common(basis, true);

  AuditArgs aa;
  auto* audit = app.add_subcommand("oracle-audit", "Closed forms against the exact channel");
  audit->add_option("--grid-size", aa.grid_size, "Random tuples per noise model");
  audit->add_flag("--inject-fault", aa.inject_fault, "Corrupt the closed forms (negative control)");
  add_common(audit, true);

  std::string manifest_path;
  auto* rep = app.add_subcommand("replay", "Re-run a recorded manifest and compare outputs");
  rep->add_option("manifest", manifest_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == rep) return replay(manifest_path, out, err);

  ctx.command = chosen->get_name();
  if (chosen->count("--seed") > 0) ctx.seed = seed;
  ctx.exec = serial ? Execution::serial : Execution::parallel;

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (chosen == fid) fidelity_sweep(fa, ctx, out);
    if (chosen == errp) errp_sweep(ea, ctx, out, err);
    if (chosen == basis) basis_sweep(ba, ctx, out);
    if (chosen == audit) oracle_audit(aa, ctx, out);
  } catch (const ValidationFailure& e) {
    err << e.what() << '\n';
    code = kExitValidation;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (write_outputs_manifest) write_manifest(ctx, elapsed);
  return code;
}

}  // namespace

double parse_angle(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (ch != ' ' && ch != '*') text.push_back(ch);
  }
  double scale = 1.0;
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    text.erase(text.size() - 2);
    if (text.empty() || text == "+") text = "1";
    if (text == "-") text = "-1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid angle '" + raw + "'");
  }
  if (used != text.size() || !std::isfinite(value)) throw UsageError("invalid angle '" + raw + "'");
  return value * scale;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string manifest_path_for(const std::string& csv_path) {
  return std::filesystem::path(csv_path).replace_extension(".manifest.json").string();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, true);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace paritysim::cli
