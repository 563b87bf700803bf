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

#pragma once

#include <cstdint>
#include <random>

namespace paritysim {

std::uint64_t splitmix64(std::uint64_t x);

/// Seedable, splittable random stream.
///
/// A stream is identified by a 64-bit key. `split(i)` derives the key of an
/// independent child stream from (key, i) alone, so Monte Carlo work units
/// indexed by i draw the same numbers regardless of which worker runs them.
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  std::uint64_t key() const { return key_; }
  Rng split(std::uint64_t index) const { return Rng(child_key(key_, index)); }
  /// Key of split(index) without seeding an engine for the intermediate stream.
  static std::uint64_t child_key(std::uint64_t key, std::uint64_t index);

  double uniform();  // [0, 1)
  double normal();   // standard normal
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace paritysim
