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

#include "paritysim/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "paritysim/rng.hpp"

namespace paritysim {

namespace {

using Diag = std::array<Complex, 4>;

Diag diagonal_of(const Operator& op) {
  if (op.dim() != 4) throw std::logic_error("diagonal_of: expects a two-qubit operator");
  Diag d{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != c && std::abs(op(r, c)) > kConstructionTol) {
        throw std::logic_error("diagonal_of: operator is not diagonal");
      }
    }
    d[static_cast<std::size_t>(r)] = op(r, r);
  }
  return d;
}

bool constant_schedule(std::span<const CycleAngles> schedule) {
  for (const auto& a : schedule) {
    if (a.phi1 != schedule[0].phi1 || a.phi2 != schedule[0].phi2) return false;
  }
  return true;
}

void require_schedule(const ProtocolConfig& config, std::span<const CycleAngles> schedule) {
  config.validate();
  if (schedule.size() != static_cast<std::size_t>(config.n)) {
    throw std::invalid_argument("angle schedule length must equal the cycle count");
  }
}

Matrix power(const Matrix& m, int k) {
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

struct Moments {
  double mean;
  double std_dev;
};

// Sums in index order so the result does not depend on who computed each entry.
Moments moments(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

double fidelity_of(const KrausChannel& channel, const PureState& psi) {
  Matrix rho = Matrix::Zero(4, 4);
  for (const auto& op : channel.ops) {
    const Vector v = op.matrix() * psi.amplitudes();
    rho += v * v.adjoint();
  }
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return rank2_fidelity(parity_split(psi), DensityMatrix(std::move(rho)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact channel

ExactOutput exact_output(const ProtocolConfig& config, const DensityMatrix& rho0,
                         std::span<const CycleAngles> schedule) {
  const ProtocolOutput out = compose_protocol_channel(rho0, config, schedule);
  return {out.total(), out.probabilities(), out.error_probability()};
}

ExactOutput exact_output(const ProtocolConfig& config, const DensityMatrix& rho0) {
  const ProtocolOutput out = compose_protocol_channel(rho0, config);
  return {out.total(), out.probabilities(), out.error_probability()};
}

ErrorCoefficients exact_error_coefficients(const ProtocolConfig& config) {
  ErrorCoefficients c{};
  for (int i = 0; i < 4; ++i) {
    c[static_cast<std::size_t>(i)] =
        exact_output(config, outer(PureState::basis(4, i))).error_probability;
  }
  return c;
}

double exact_error_probability(const ProtocolConfig& config, const PureState& psi) {
  return exact_output(config, outer(psi)).error_probability;
}

KrausChannel protocol_kraus(const ProtocolConfig& config, std::span<const CycleAngles> schedule) {
  require_schedule(config, schedule);
  const double phi_meas = config.measurement_angle();
  const PhaseCorrections fixes = PhaseCorrections::for_config(config);
  const int n = config.n;
  KrausChannel ch;

  if (!config.noise.is_pauli()) {
    Matrix survived = Matrix::Identity(4, 4);
    for (int k = 1; k <= n; ++k) {
      const auto branches = round_branches(config.noise, schedule[static_cast<std::size_t>(k - 1)],
                                           phi_meas);
      const RoundOperators& r = branches.at(0).ops;
      ch.add(Operator(fixes.even[static_cast<std::size_t>(k - 1)].matrix() * r.minus.matrix() *
                      survived),
             "even@" + std::to_string(k));
      survived = r.plus.matrix() * survived;
    }
    ch.add(Operator(fixes.odd.matrix() * survived), "odd@" + std::to_string(n));
    return ch;
  }

  if (!constant_schedule(schedule)) {
    throw std::invalid_argument("Pauli models require the same gate angles in every cycle");
  }
  NoiseModel effective = config.noise;
  if (effective.kind == NoiseKind::depolarizing_before) {
    effective = depolarizing_to_dephasing(effective.probability);
  }
  const auto branches = round_branches(effective, schedule[0], phi_meas);
  const double p = effective.probability;
  const Matrix& a = branches.at(0).ops.plus.matrix();
  const Matrix& b = branches.at(1).ops.plus.matrix();
  const RoundOperators& clean = branches.at(0).ops;
  const RoundOperators& faulty = branches.at(1).ops;

  // Operators of rounds 1..k with j faults, weighted by the binomial count.
  auto survivors = [&](int k, int j) {
    const double w = binomial(k, j) * std::pow(1.0 - p, k - j) * std::pow(p, j);
    return std::pair{w, Matrix(power(a, k - j) * power(b, j))};
  };
  for (int k = 1; k <= n; ++k) {
    const Matrix& fix = fixes.even[static_cast<std::size_t>(k - 1)].matrix();
    const std::string label = "even@" + std::to_string(k);
    for (int j = 0; j <= k - 1; ++j) {
      const auto [w, s] = survivors(k - 1, j);
      if (w * (1.0 - p) > 0.0) {
        ch.add(Operator(std::sqrt(w * (1.0 - p)) * (fix * clean.minus.matrix() * s)), label);
      }
      if (w * p > 0.0) {
        ch.add(Operator(std::sqrt(w * p) * (fix * faulty.minus.matrix() * s)), label);
      }
    }
  }
  for (int j = 0; j <= n; ++j) {
    const auto [w, s] = survivors(n, j);
    if (w > 0.0) ch.add(Operator(std::sqrt(w) * (fixes.odd.matrix() * s)), "odd@" + std::to_string(n));
  }
  return ch;
}

KrausChannel protocol_kraus(const ProtocolConfig& config) {
  config.validate();
  if (config.noise.is_stochastic()) {
    throw std::invalid_argument("protocol_kraus: Gaussian noise needs a sampled angle schedule");
  }
  const auto schedule = config.fixed_schedule();
  return protocol_kraus(config, schedule);
}

KrausChannel naive_nested_kraus(double phi, int nestings) {
  if (nestings < 1) throw std::invalid_argument("nesting count must be at least 1");
  const auto [pe, po] = naive_projectors(phi);
  KrausChannel ch;
  for (int j = 0; j <= nestings; ++j) {
    const Matrix op = power(pe.matrix(), nestings - j) * power(po.matrix(), j);
    ch.add(Operator(std::sqrt(binomial(nestings, j)) * op), "odd_count=" + std::to_string(j));
  }
  return ch;
}

// ---------------------------------------------------------------------------
// Fidelity estimators

FidelityEstimate channel_fidelity(const KrausChannel& channel, std::size_t n_states,
                                  std::uint64_t seed, Execution exec) {
  if (n_states < 2) throw std::invalid_argument("fidelity estimate needs at least 2 states");
  std::vector<double> f(n_states);
  for_each_index(exec, n_states,
                 [&](std::size_t i) { f[i] = fidelity_of(channel, indexed_haar_state(seed, i)); });
  const Moments m = moments(f);
  return {m.mean, m.std_dev, m.std_dev / std::sqrt(static_cast<double>(n_states)), n_states, 1, seed};
}

FidelityEstimate avg_channel_fidelity(const ProtocolConfig& config, std::size_t n_states,
                                      std::uint64_t seed, Execution exec) {
  return channel_fidelity(protocol_kraus(config), n_states, seed, exec);
}

FidelityEstimate gaussian_avg_fidelity(const ProtocolConfig& config, std::size_t n_states,
                                       std::size_t n_noise_samples, std::uint64_t seed,
                                       Execution exec) {
  config.validate();
  if (n_states < 2) throw std::invalid_argument("fidelity estimate needs at least 2 states");
  if (n_noise_samples < 1) throw std::invalid_argument("need at least one noise sample");

  const Rng noise_stream = Rng(seed).split(1);
  std::vector<KrausChannel> channels(n_noise_samples);
  for_each_index(exec, n_noise_samples, [&](std::size_t j) {
    Rng rng = noise_stream.split(j);
    channels[j] = protocol_kraus(config, config.sample_schedule(rng));
  });
  std::vector<PureState> states;
  states.reserve(n_states);
  for (std::size_t i = 0; i < n_states; ++i) states.push_back(indexed_haar_state(seed, i));

  std::vector<double> f(n_noise_samples * n_states);
  for_each_index(exec, n_noise_samples, [&](std::size_t j) {
    for (std::size_t i = 0; i < n_states; ++i) f[j * n_states + i] = fidelity_of(channels[j], states[i]);
  });

  std::vector<double> per_state(n_states, 0.0);
  std::vector<double> per_sample(n_noise_samples, 0.0);
  for (std::size_t j = 0; j < n_noise_samples; ++j) {
    for (std::size_t i = 0; i < n_states; ++i) {
      per_state[i] += f[j * n_states + i];
      per_sample[j] += f[j * n_states + i];
    }
  }
  for (double& x : per_state) x /= static_cast<double>(n_noise_samples);
  for (double& x : per_sample) x /= static_cast<double>(n_states);

  const Moments over_states = moments(per_state);
  const Moments over_samples = moments(per_sample);
  FidelityEstimate est;
  est.mean = over_states.mean;
  est.std_dev = over_states.std_dev;
  est.std_error = n_noise_samples > 1
                      ? over_samples.std_dev / std::sqrt(static_cast<double>(n_noise_samples))
                      : over_states.std_dev / std::sqrt(static_cast<double>(n_states));
  est.n_states = n_states;
  est.n_noise_samples = n_noise_samples;
  est.seed = seed;
  return est;
}

FidelityEstimate naive_avg_fidelity(double phi, int nestings, std::size_t n_states,
                                    std::uint64_t seed, Execution exec) {
  return channel_fidelity(naive_nested_kraus(phi, nestings), n_states, seed, exec);
}

// ---------------------------------------------------------------------------
// Trajectories

std::array<std::array<Complex, 4>, 2> clean_round_diagonals(double phi1, double phi2,
                                                            double phi_meas) {
  std::array<std::array<Complex, 4>, 2> d{};
  const Complex front = std::polar(1.0, phi_meas / 2);
  for (int k = 0; k < 4; ++k) {
    const double theta = (k >> 1) * phi1 + (k & 1) * phi2;
    const Complex back = std::polar(1.0, theta - phi_meas / 2);
    d[0][static_cast<std::size_t>(k)] = 0.5 * (front + back);
    d[1][static_cast<std::size_t>(k)] = 0.5 * (front - back);
  }
  return d;
}

std::vector<double> TrajectoryResult::frequencies() const {
  std::vector<double> f;
  f.reserve(class_counts.size());
  for (auto c : class_counts) f.push_back(static_cast<double>(c) / static_cast<double>(shots));
  return f;
}

double TrajectoryResult::error_rate() const {
  return static_cast<double>(parity_errors) / static_cast<double>(shots);
}

double TrajectoryResult::error_sigma() const {
  const double p = error_rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

namespace {

struct WeightedDiag {
  double weight;
  Diag plus;
  Diag minus;
};

struct BlockTally {
  std::vector<std::size_t> counts;
  std::size_t errors = 0;
  std::vector<Matrix> sums;
};

class ShotRunner {
 public:
  explicit ShotRunner(const ProtocolConfig& config)
      : config_(config), phi_meas_(config.measurement_angle()) {
    config.validate();
    const PhaseCorrections fixes = PhaseCorrections::for_config(config);
    for (const auto& op : fixes.even) even_fix_.push_back(diagonal_of(op));
    odd_fix_ = diagonal_of(fixes.odd);
    if (!config.noise.is_stochastic()) {
      const CycleAngles angles{config.gate_angle1(), config.gate_angle2()};
      for (const auto& b : round_branches(config.noise, angles, phi_meas_)) {
        branches_.push_back({b.weight, diagonal_of(b.ops.plus), diagonal_of(b.ops.minus)});
      }
    }
  }

  // Runs one shot from `psi` and records it in `tally`.
  void run(Diag psi, Rng& rng, BlockTally& tally) const {
    const int n = config_.n;
    std::size_t cls = static_cast<std::size_t>(n);
    for (int k = 0; k < n; ++k) {
      Diag plus{};
      Diag minus{};
      if (config_.noise.is_stochastic()) {
        const double w = config_.noise.width;
        const double phi1 = config_.gate_angle1() + w * rng.normal();
        const double phi2 = config_.gate_angle2() + w * rng.normal();
        const auto d = clean_round_diagonals(phi1, phi2, phi_meas_);
        plus = d[0];
        minus = d[1];
      } else {
        const WeightedDiag& b = pick_branch(rng.uniform());
        plus = b.plus;
        minus = b.minus;
      }
      Diag next{};
      double p_plus = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        next[i] = plus[i] * psi[i];
        p_plus += std::norm(next[i]);
      }
      if (rng.uniform() >= p_plus) {
        for (std::size_t i = 0; i < 4; ++i) next[i] = minus[i] * psi[i];
        psi = normalize(next);
        cls = static_cast<std::size_t>(k);
        break;
      }
      psi = normalize(next);
    }
    const Diag& fix = cls < static_cast<std::size_t>(n) ? even_fix_[cls] : odd_fix_;
    for (std::size_t i = 0; i < 4; ++i) psi[i] *= fix[i];

    const double odd_weight = std::norm(psi[1]) + std::norm(psi[2]);
    const double wrong = cls < static_cast<std::size_t>(n) ? odd_weight : 1.0 - odd_weight;
    if (rng.uniform() < wrong) ++tally.errors;
    ++tally.counts[cls];
    Matrix& sum = tally.sums[cls];
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        sum(r, c) += psi[static_cast<std::size_t>(r)] * std::conj(psi[static_cast<std::size_t>(c)]);
      }
    }
  }

  BlockTally empty_tally() const {
    const std::size_t classes = static_cast<std::size_t>(config_.n) + 1;
    return {std::vector<std::size_t>(classes, 0), 0, std::vector<Matrix>(classes, Matrix::Zero(4, 4))};
  }

 private:
  const WeightedDiag& pick_branch(double u) const {
    double acc = 0.0;
    for (const auto& b : branches_) {
      acc += b.weight;
      if (u < acc) return b;
    }
    return branches_.back();
  }

  static Diag normalize(Diag v) {
    double norm2 = 0.0;
    for (const auto& x : v) norm2 += std::norm(x);
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= s;
    return v;
  }

  const ProtocolConfig& config_;
  double phi_meas_;
  std::vector<Diag> even_fix_;
  Diag odd_fix_{};
  std::vector<WeightedDiag> branches_;
};

template <typename InitialState>
TrajectoryResult sample_shots(const ProtocolConfig& config, std::size_t shots, std::uint64_t seed,
                              Execution exec, InitialState initial) {
  if (shots < 1) throw std::invalid_argument("trajectory sampling needs at least one shot");
  const ShotRunner runner(config);
  const std::size_t blocks = (shots + kShotBlock - 1) / kShotBlock;
  std::vector<BlockTally> tallies(blocks);
  for_each_index(exec, blocks, [&](std::size_t b) {
    BlockTally tally = runner.empty_tally();
    Rng rng = Rng(seed).split(b);
    const std::size_t end = std::min(shots, (b + 1) * kShotBlock);
    for (std::size_t s = b * kShotBlock; s < end; ++s) runner.run(initial(rng), rng, tally);
    tallies[b] = std::move(tally);
  });

  BlockTally total = runner.empty_tally();
  for (const auto& t : tallies) {
    for (std::size_t c = 0; c < total.counts.size(); ++c) {
      total.counts[c] += t.counts[c];
      total.sums[c] += t.sums[c];
    }
    total.errors += t.errors;
  }
  TrajectoryResult result;
  result.shots = shots;
  result.class_counts = std::move(total.counts);
  result.parity_errors = total.errors;
  for (const auto& m : total.sums) {
    Matrix avg = m / static_cast<double>(shots);
    avg = (0.5 * (avg + avg.adjoint())).eval();
    result.conditional.emplace_back(std::move(avg));
  }
  return result;
}

}  // namespace

TrajectoryResult trajectory_sample(const ProtocolConfig& config, const PureState& psi0,
                                   std::size_t shots, std::uint64_t seed, Execution exec) {
  if (psi0.dim() != 4) throw std::invalid_argument("trajectory_sample: expects a two-qubit state");
  Diag start{};
  for (int i = 0; i < 4; ++i) start[static_cast<std::size_t>(i)] = psi0[i];
  return sample_shots(config, shots, seed, exec, [&](Rng&) { return start; });
}

TrajectoryResult trajectory_sample_haar(const ProtocolConfig& config, std::size_t shots,
                                        std::uint64_t seed, Execution exec) {
  return sample_shots(config, shots, seed, exec, [](Rng& rng) {
    const PureState psi = haar_random_state(4, rng);
    Diag start{};
    for (int i = 0; i < 4; ++i) start[static_cast<std::size_t>(i)] = psi[i];
    return start;
  });
}

}  // namespace paritysim
