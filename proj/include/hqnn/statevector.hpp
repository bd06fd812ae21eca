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
 * Dense statevector over n qubits and the measurement primitives built on it.
 *
 * Wire 0 is the most significant bit of the basis-state index, so the ket
 * |q0 q1 ... q(n-1)> lives at index sum_k q_k 2^(n-1-k).
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hqnn {

using complex_t = std::complex<double>;

/// Row-major 2x2 unitary {m00, m01, m10, m11}.
using Matrix2 = std::array<complex_t, 4>;

inline constexpr std::size_t kDefaultMaxQubits = 14;

class StateVector {
  public:
    /// |0...0> on `n_qubits` wires. Throws ResourceError above `max_qubits`.
    static StateVector zero(std::size_t n_qubits,
                            std::size_t max_qubits = kDefaultMaxQubits);

    /// Takes ownership of `amps`; length must be 2^n and the norm 1 (1e-10).
    static StateVector from_amplitudes(std::size_t n_qubits,
                                       std::vector<complex_t> amps);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] complex_t operator[](std::size_t index) const {
        return amps_[index];
    }
    [[nodiscard]] double norm_squared() const noexcept;

    /// Applies a single-qubit unitary in place.
    void apply_matrix(std::size_t wire, const Matrix2 &m);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_cz(std::size_t a, std::size_t b);

    /// Bit mask selecting `wire` within a basis index.
    [[nodiscard]] std::size_t wire_mask(std::size_t wire) const;

  private:
    StateVector(std::size_t n_qubits, std::vector<complex_t> amps)
        : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    std::size_t n_qubits_;
    std::vector<complex_t> amps_;
};

/// <psi|Z_wire|psi>.
[[nodiscard]] double expectation_z(const StateVector &state, std::size_t wire);

/**
 * @brief Shot-sampled estimate of <Z_wire>.
 *
 * Mean of `shots` independent +/-1 outcomes with P(+1) equal to the
 * probability of reading 0 on `wire`. Deterministic for a given seed.
 */
[[nodiscard]] double sample_expectation_z(const StateVector &state,
                                          std::size_t wire, std::size_t shots,
                                          std::uint64_t seed);

/// |<a|b>|^2.
[[nodiscard]] double fidelity(const StateVector &a, const StateVector &b);

/// Tr(rho^2) of the single-qubit reduced density matrix on `wire`.
[[nodiscard]] double single_qubit_purity(const StateVector &state,
                                         std::size_t wire);

} // namespace hqnn
