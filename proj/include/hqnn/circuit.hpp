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
 * Gate instructions and parameterized circuit programs.
 */
#pragma once

#include "hqnn/statevector.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace hqnn {

enum class GateKind { RX, RY, RZ, Rot, H, CNOT, CZ };

[[nodiscard]] std::string_view gate_name(GateKind kind) noexcept;
[[nodiscard]] std::size_t param_arity(GateKind kind) noexcept;
[[nodiscard]] std::size_t wire_arity(GateKind kind) noexcept;
[[nodiscard]] bool is_rotation(GateKind kind) noexcept;

/// Reference to entry `index` of the parameter vector bound at run time.
struct Slot {
    std::size_t index;
    bool operator==(const Slot &) const = default;
};

/// A gate angle: either a fixed value in radians or a symbolic slot.
using Param = std::variant<double, Slot>;

struct GateInstruction {
    GateKind kind;
    std::vector<std::size_t> wires;
    std::vector<Param> params;
};

/**
 * @brief Matrix of a single-qubit gate for concrete angles.
 *
 * RX/RY/RZ(t) = exp(-i t P / 2); Rot(a, b, c) = RZ(c) RY(b) RZ(a).
 */
[[nodiscard]] Matrix2 gate_matrix(GateKind kind, std::span<const double> angles);

/// Throws ContractError if `gate` is malformed for an `n_qubits` register.
void validate_gate(const GateInstruction &gate, std::size_t n_qubits);

/**
 * @brief Applies `gate` to `state`, resolving symbolic slots from `bound`.
 *
 * Throws ContractError for invalid wires or a slot outside `bound`.
 */
void apply_gate(StateVector &state, const GateInstruction &gate,
                std::span<const double> bound = {});

/**
 * @brief Ordered gate list over a fixed register with symbolic parameter slots.
 *
 * `num_params()` is one past the highest slot referenced (or a larger
 * reserved count). Running the program requires a parameter vector of
 * exactly that length.
 */
class CircuitProgram {
  public:
    explicit CircuitProgram(std::size_t n_qubits);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<GateInstruction> &instructions() const noexcept {
        return instructions_;
    }

    CircuitProgram &add(GateKind kind, std::vector<std::size_t> wires,
                        std::vector<Param> params = {});

    /// Appends `fragment` with every slot index shifted by `slot_offset`.
    CircuitProgram &append(const CircuitProgram &fragment,
                           std::size_t slot_offset = 0);

    /// Ensures at least `count` slots are reported, used or not.
    void reserve_params(std::size_t count);

    /// Evolves `state` in place. Requires params.size() == num_params().
    void apply(StateVector &state, std::span<const double> params) const;

    /// Runs the program on |0...0>.
    [[nodiscard]] StateVector run(std::span<const double> params = {}) const;

  private:
    std::size_t n_qubits_;
    std::size_t n_params_ = 0;
    std::vector<GateInstruction> instructions_;
};

/// Wires whose Pauli-Z expectation forms the circuit output.
struct ObservableSpec {
    std::vector<std::size_t> wires;

    static ObservableSpec all_wires(std::size_t n_qubits);
};

void validate_observables(const ObservableSpec &obs, std::size_t n_qubits);

/// One <Z_w> per measured wire, in `obs.wires` order.
[[nodiscard]] std::vector<double> expectations(const StateVector &state,
                                               const ObservableSpec &obs);

} // namespace hqnn
