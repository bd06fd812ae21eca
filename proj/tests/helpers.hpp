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

#include "hqnn/circuit.hpp"
#include "hqnn/random.hpp"

#include <random>
#include <vector>

namespace testing {

/// Random gate sequence on `n` wires. Rotation angles are fixed values
/// unless `symbolic`, in which case each angle gets its own new slot.
inline hqnn::CircuitProgram random_circuit(hqnn::Rng &rng, std::size_t n, std::size_t n_gates,
                                           bool symbolic = false) {
    using hqnn::GateKind;
    std::vector<GateKind> kinds{GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::Rot,
                                GateKind::H};
    if (n >= 2) {
        kinds.push_back(GateKind::CNOT);
        kinds.push_back(GateKind::CZ);
    }
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_wire(0, n - 1);
    hqnn::CircuitProgram program(n);
    std::size_t slot = 0;
    for (std::size_t g = 0; g < n_gates; ++g) {
        const GateKind kind = kinds[pick_kind(rng)];
        std::vector<std::size_t> wires{pick_wire(rng)};
        if (hqnn::wire_arity(kind) == 2) {
            std::size_t other = pick_wire(rng);
            while (other == wires[0]) {
                other = pick_wire(rng);
            }
            wires.push_back(other);
        }
        std::vector<hqnn::Param> params;
        for (std::size_t k = 0; k < hqnn::param_arity(kind); ++k) {
            if (symbolic) {
                params.emplace_back(hqnn::Slot{slot++});
            } else {
                params.emplace_back(hqnn::uniform_angle(rng));
            }
        }
        program.add(kind, wires, params);
    }
    return program;
}

inline std::vector<double> random_angles(hqnn::Rng &rng, std::size_t count) {
    std::vector<double> out(count);
    for (auto &v : out) {
        v = hqnn::uniform_angle(rng);
    }
    return out;
}

} // namespace testing
