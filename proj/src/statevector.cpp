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

#include "hqnn/statevector.hpp"

#include "hqnn/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace hqnn {

StateVector StateVector::zero(std::size_t n_qubits, std::size_t max_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits) {
        throw ResourceError("qubit count " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(max_qubits) +
                            "] (qubit ceiling " + std::to_string(max_qubits) +
                            ")");
    }
    std::vector<complex_t> amps(std::size_t{1} << n_qubits);
    amps[0] = 1.0;
    return {n_qubits, std::move(amps)};
}

StateVector StateVector::from_amplitudes(std::size_t n_qubits,
                                         std::vector<complex_t> amps) {
    if (n_qubits < 1 || n_qubits > kDefaultMaxQubits) {
        throw ResourceError("qubit count " + std::to_string(n_qubits) +
                            " outside [1, " +
                            std::to_string(kDefaultMaxQubits) + "]");
    }
    require(amps.size() == (std::size_t{1} << n_qubits),
            "amplitude count " + std::to_string(amps.size()) +
                " does not equal 2^" + std::to_string(n_qubits));
    StateVector sv(n_qubits, std::move(amps));
    require(std::abs(sv.norm_squared() - 1.0) < 1e-10,
            "amplitudes are not normalized");
    return sv;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

std::size_t StateVector::wire_mask(std::size_t wire) const {
    if (wire >= n_qubits_) {
        throw ContractError("wire " + std::to_string(wire) +
                            " out of range for " + std::to_string(n_qubits_) +
                            " qubits");
    }
    return std::size_t{1} << (n_qubits_ - 1 - wire);
}

void StateVector::apply_matrix(std::size_t wire, const Matrix2 &m) {
    const std::size_t stride = wire_mask(wire);
    const std::size_t len = amps_.size();
    for (std::size_t base = 0; base < len; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const complex_t v0 = amps_[j];
            const complex_t v1 = amps_[j + stride];
            amps_[j] = m[0] * v0 + m[1] * v1;
            amps_[j + stride] = m[2] * v0 + m[3] * v1;
        }
    }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
    if (control == target) {
        throw ContractError("CNOT wires must be distinct");
    }
    const std::size_t cmask = wire_mask(control);
    const std::size_t tmask = wire_mask(target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    if (a == b) {
        throw ContractError("CZ wires must be distinct");
    }
    const std::size_t mask = wire_mask(a) | wire_mask(b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

namespace {

/// Probability of reading 0 on `wire`.
double prob_zero(const StateVector &state, std::size_t wire) {
    const std::size_t mask = state.wire_mask(wire);
    double p0 = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == 0) {
            p0 += std::norm(amps[i]);
        }
    }
    return p0;
}

} // namespace

double expectation_z(const StateVector &state, std::size_t wire) {
    const std::size_t mask = state.wire_mask(wire);
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += (i & mask) ? -std::norm(amps[i]) : std::norm(amps[i]);
    }
    return std::clamp(acc, -1.0, 1.0);
}

double sample_expectation_z(const StateVector &state, std::size_t wire,
                            std::size_t shots, std::uint64_t seed) {
    require(shots >= 1, "shots must be at least 1");
    const double p_plus = std::clamp(prob_zero(state, wire), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution outcome(p_plus);
    std::int64_t total = 0;
    for (std::size_t s = 0; s < shots; ++s) {
        total += outcome(rng) ? 1 : -1;
    }
    return static_cast<double>(total) / static_cast<double>(shots);
}

double fidelity(const StateVector &a, const StateVector &b) {
    require(a.num_qubits() == b.num_qubits(),
            "fidelity of states with different qubit counts");
    complex_t overlap = 0.0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        overlap += std::conj(x[i]) * y[i];
    }
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double single_qubit_purity(const StateVector &state, std::size_t wire) {
    const std::size_t mask = state.wire_mask(wire);
    double rho00 = 0.0;
    double rho11 = 0.0;
    complex_t rho01 = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == 0) {
            const complex_t a0 = amps[i];
            const complex_t a1 = amps[i | mask];
            rho00 += std::norm(a0);
            rho11 += std::norm(a1);
            rho01 += a0 * std::conj(a1);
        }
    }
    return rho00 * rho00 + rho11 * rho11 + 2.0 * std::norm(rho01);
}

} // namespace hqnn
