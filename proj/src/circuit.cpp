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

#include "hqnn/circuit.hpp"

#include "hqnn/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hqnn {

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::Rot:
        return "Rot";
    case GateKind::H:
        return "H";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    }
    return "?";
}

std::size_t param_arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    case GateKind::Rot:
        return 3;
    default:
        return 0;
    }
}

std::size_t wire_arity(GateKind kind) noexcept {
    return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

bool is_rotation(GateKind kind) noexcept { return param_arity(kind) > 0; }

namespace {

Matrix2 multiply(const Matrix2 &a, const Matrix2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Matrix2 rz(double t) {
    const complex_t m = std::polar(1.0, -t / 2);
    return {m, 0.0, 0.0, std::conj(m)};
}

Matrix2 ry(double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return {c, -s, s, c};
}

Matrix2 rx(double t) {
    const double c = std::cos(t / 2);
    const complex_t mis{0.0, -std::sin(t / 2)};
    return {c, mis, mis, c};
}

} // namespace

Matrix2 gate_matrix(GateKind kind, std::span<const double> angles) {
    if (angles.size() != param_arity(kind)) {
        throw ContractError(std::string(gate_name(kind)) + " expects " +
                            std::to_string(param_arity(kind)) + " angle(s)");
    }
    switch (kind) {
    case GateKind::RX:
        return rx(angles[0]);
    case GateKind::RY:
        return ry(angles[0]);
    case GateKind::RZ:
        return rz(angles[0]);
    case GateKind::Rot:
        return multiply(rz(angles[2]), multiply(ry(angles[1]), rz(angles[0])));
    case GateKind::H: {
        const double h = 1.0 / std::sqrt(2.0);
        return {h, h, h, -h};
    }
    default:
        throw ContractError(std::string(gate_name(kind)) +
                            " is not a single-qubit gate");
    }
}

void validate_gate(const GateInstruction &gate, std::size_t n_qubits) {
    const auto fail = [&gate](const std::string &what) {
        throw ContractError(std::string(gate_name(gate.kind)) + ": " + what);
    };
    if (gate.wires.size() != wire_arity(gate.kind)) {
        fail("expects " + std::to_string(wire_arity(gate.kind)) + " wire(s)");
    }
    if (gate.params.size() != param_arity(gate.kind)) {
        fail("expects " + std::to_string(param_arity(gate.kind)) +
             " parameter(s)");
    }
    for (std::size_t i = 0; i < gate.wires.size(); ++i) {
        if (gate.wires[i] >= n_qubits) {
            fail("wire " + std::to_string(gate.wires[i]) +
                 " out of range for " + std::to_string(n_qubits) + " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.wires[i] == gate.wires[j]) {
                fail("wires must be distinct");
            }
        }
    }
}

namespace {

void apply_validated(StateVector &state, const GateInstruction &gate,
                     std::span<const double> bound) {
    std::array<double, 3> angles{};
    for (std::size_t k = 0; k < gate.params.size(); ++k) {
        if (const auto *slot = std::get_if<Slot>(&gate.params[k])) {
            if (slot->index >= bound.size()) {
                throw ContractError("unbound parameter slot " +
                                    std::to_string(slot->index));
            }
            angles[k] = bound[slot->index];
        } else {
            angles[k] = std::get<double>(gate.params[k]);
        }
    }
    switch (gate.kind) {
    case GateKind::CNOT:
        state.apply_cnot(gate.wires[0], gate.wires[1]);
        break;
    case GateKind::CZ:
        state.apply_cz(gate.wires[0], gate.wires[1]);
        break;
    default:
        state.apply_matrix(
            gate.wires[0],
            gate_matrix(gate.kind, std::span<const double>(
                                       angles.data(), gate.params.size())));
    }
}

} // namespace

void apply_gate(StateVector &state, const GateInstruction &gate,
                std::span<const double> bound) {
    validate_gate(gate, state.num_qubits());
    apply_validated(state, gate, bound);
}

CircuitProgram::CircuitProgram(std::size_t n_qubits) : n_qubits_(n_qubits) {
    require(n_qubits >= 1, "a circuit needs at least one qubit");
}

CircuitProgram &CircuitProgram::add(GateKind kind,
                                    std::vector<std::size_t> wires,
                                    std::vector<Param> params) {
    GateInstruction gate{kind, std::move(wires), std::move(params)};
    validate_gate(gate, n_qubits_);
    for (const auto &p : gate.params) {
        if (const auto *slot = std::get_if<Slot>(&p)) {
            n_params_ = std::max(n_params_, slot->index + 1);
        }
    }
    instructions_.push_back(std::move(gate));
    return *this;
}

CircuitProgram &CircuitProgram::append(const CircuitProgram &fragment,
                                       std::size_t slot_offset) {
    require(fragment.num_qubits() <= n_qubits_,
            "fragment is wider than the target circuit");
    for (auto gate : fragment.instructions()) {
        for (auto &p : gate.params) {
            if (auto *slot = std::get_if<Slot>(&p)) {
                slot->index += slot_offset;
            }
        }
        add(gate.kind, std::move(gate.wires), std::move(gate.params));
    }
    if (fragment.num_params() > 0) {
        reserve_params(fragment.num_params() + slot_offset);
    }
    return *this;
}

void CircuitProgram::reserve_params(std::size_t count) {
    n_params_ = std::max(n_params_, count);
}

void CircuitProgram::apply(StateVector &state,
                           std::span<const double> params) const {
    if (state.num_qubits() != n_qubits_) {
        throw ContractError("state has " + std::to_string(state.num_qubits()) +
                            " qubits, circuit expects " +
                            std::to_string(n_qubits_));
    }
    if (params.size() != n_params_) {
        throw ContractError("circuit expects " + std::to_string(n_params_) +
                            " parameters, got " +
                            std::to_string(params.size()));
    }
    for (const auto &gate : instructions_) {
        apply_validated(state, gate, params);
    }
}

StateVector CircuitProgram::run(std::span<const double> params) const {
    auto state = StateVector::zero(n_qubits_);
    apply(state, params);
    return state;
}

ObservableSpec ObservableSpec::all_wires(std::size_t n_qubits) {
    ObservableSpec obs;
    for (std::size_t w = 0; w < n_qubits; ++w) {
        obs.wires.push_back(w);
    }
    return obs;
}

void validate_observables(const ObservableSpec &obs, std::size_t n_qubits) {
    for (std::size_t i = 0; i < obs.wires.size(); ++i) {
        require(obs.wires[i] < n_qubits,
                "measured wire " + std::to_string(obs.wires[i]) +
                    " out of range");
        for (std::size_t j = 0; j < i; ++j) {
            require(obs.wires[i] != obs.wires[j],
                    "measured wires must be distinct");
        }
    }
}

std::vector<double> expectations(const StateVector &state,
                                 const ObservableSpec &obs) {
    std::vector<double> out;
    out.reserve(obs.wires.size());
    for (const auto w : obs.wires) {
        out.push_back(expectation_z(state, w));
    }
    return out;
}

} // namespace hqnn
