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

#include "hqnn/ansatz.hpp"

#include "hqnn/error.hpp"

namespace hqnn {

std::size_t param_count(const AnsatzSpec &spec) {
    return 3 * spec.n_layers * spec.n_wires;
}

std::size_t entangler_range(std::size_t layer, std::size_t n_wires) {
    require(n_wires >= 2, "entangler range needs at least two wires");
    return (layer % (n_wires - 1)) + 1;
}

CircuitProgram strongly_entangling_layers(const AnsatzSpec &spec) {
    require(spec.n_wires >= 1, "ansatz needs at least one wire");
    require(spec.n_layers >= 1, "ansatz needs at least one layer");
    CircuitProgram program(spec.n_wires);
    const std::size_t n = spec.n_wires;
    for (std::size_t l = 0; l < spec.n_layers; ++l) {
        for (std::size_t w = 0; w < n; ++w) {
            program.add(GateKind::Rot, {w},
                        {Slot{rot_slot(spec, l, w, 0)},
                         Slot{rot_slot(spec, l, w, 1)},
                         Slot{rot_slot(spec, l, w, 2)}});
        }
        if (n < 2 || spec.entangler == Entangler::None) {
            continue;
        }
        const std::size_t r = entangler_range(l, n);
        const GateKind kind =
            spec.entangler == Entangler::CZ ? GateKind::CZ : GateKind::CNOT;
        for (std::size_t w = 0; w < n; ++w) {
            program.add(kind, {w, (w + r) % n});
        }
    }
    program.reserve_params(param_count(spec));
    return program;
}

} // namespace hqnn
