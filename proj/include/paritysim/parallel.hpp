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

#include <cstddef>
#include <functional>
#include <string_view>

namespace paritysim {

/// Loop driver for Monte Carlo kernels. The serial driver is the reference
/// the OpenMP driver is tested against; kernels write per-index results and
/// reduce them in index order, so both produce bit-identical output.
enum class Execution { serial, parallel };

std::string_view to_string(Execution exec);

/// Calls body(i) for every i in [0, count). Exceptions thrown by body are
/// rethrown on the calling thread (the first one wins).
void for_each_index(Execution exec, std::size_t count, const std::function<void(std::size_t)>& body);

/// Number of OpenMP workers the parallel driver will use.
int worker_count();

}  // namespace paritysim
