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
/**
 * @file
 * Strongly-entangling layered ansatz: per-wire Rot(a, b, c) followed by a
 * ring of two-qubit entanglers whose range cycles with the layer index.
 */
#pragma once

#include "hqnn/circuit.hpp"

#include <cstddef>

namespace hqnn {

enum class Entangler { CNOT, CZ, None };

struct AnsatzSpec {
    std::size_t n_wires = 1;
    std::size_t n_layers = 1;
    Entangler entangler = Entangler::CNOT;
};

/// 3 * n_layers * n_wires.
[[nodiscard]] std::size_t param_count(const AnsatzSpec &spec);

/// Ring offset used by 0-based `layer`: (layer mod (n - 1)) + 1.
[[nodiscard]] std::size_t entangler_range(std::size_t layer,
                                          std::size_t n_wires);

/// Slot of angle `k` (0..2) of the Rot on `wire` in `layer`.
[[nodiscard]] constexpr std::size_t rot_slot(const AnsatzSpec &spec,
                                             std::size_t layer,
                                             std::size_t wire, std::size_t k) {
    return (layer * spec.n_wires + wire) * 3 + k;
}

[[nodiscard]] CircuitProgram strongly_entangling_layers(const AnsatzSpec &spec);

} // namespace hqnn
