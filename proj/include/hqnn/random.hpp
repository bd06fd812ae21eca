// Copyright 2026 The hqnn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <numbers>
#include <random>

namespace hqnn {

using Rng = std::mt19937_64;

/**
 * @brief Independent generator for draw `stream` of a run seeded with `seed`.
 *
 * Sampling loops derive one generator per draw index so results do not
 * depend on evaluation order.
 */
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32U)};
    return Rng(seq);
}

/// Uniform angle on [0, 2pi).
inline double uniform_angle(Rng &rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    return dist(rng);
}

} // namespace hqnn
