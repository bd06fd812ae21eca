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
 * Circuit descriptors: expressibility, entangling capability and
 * gradient-variance scans.
 */
#pragma once

#include "hqnn/ansatz.hpp"
#include "hqnn/circuit.hpp"
#include "hqnn/statevector.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace hqnn {

struct ExpressibilityConfig {
    std::size_t n_samples = 5000; ///< parameter-pair draws
    std::size_t n_bins = 75;      ///< uniform bins over [0, 1]
    std::uint64_t seed = 0;

    void validate() const;
};

struct DescriptorReport {
    double expressibility_kl = 0.0; ///< nats
    double entangling_capability = 0.0;
    std::map<std::size_t, double> gradient_variance_by_qubits;
};

/// (N - 1)(1 - F)^(N - 2), the fidelity density of Haar-random pure states.
[[nodiscard]] double haar_fidelity_pdf(double fidelity, std::size_t hilbert_dim);

/// Haar probability mass of each of `n_bins` uniform bins on [0, 1].
[[nodiscard]] std::vector<double> haar_bin_masses(std::size_t hilbert_dim, std::size_t n_bins);

/**
 * |<psi(theta)|psi(phi)>|^2 for S independent pairs drawn uniform on
 * [0, 2pi). Pair i uses its own stream derived from (seed, i).
 */
[[nodiscard]] std::vector<double> sample_fidelities(const CircuitProgram &circuit,
                                                    const ExpressibilityConfig &cfg);

/// KL(P_hat || P_Haar) over uniform bins for given fidelity samples.
[[nodiscard]] double expressibility_from_fidelities(std::span<const double> fidelities,
                                                    std::size_t hilbert_dim,
                                                    std::size_t n_bins);

[[nodiscard]] double expressibility(const CircuitProgram &circuit,
                                    const ExpressibilityConfig &cfg);

/// Q = 2 (1 - mean single-qubit purity).
[[nodiscard]] double meyer_wallach_q(const StateVector &state);

/// Mean Meyer-Wallach Q over uniformly drawn parameters.
[[nodiscard]] double entangling_capability(const CircuitProgram &circuit,
                                           std::size_t n_samples, std::uint64_t seed);

/// Variance over uniform parameters of d<Z_wire>/d theta_slot (parameter shift).
[[nodiscard]] double gradient_variance(const CircuitProgram &circuit, std::size_t slot,
                                       std::size_t wire, std::size_t n_samples,
                                       std::uint64_t seed);

/**
 * For each n in `qubit_range`, the gradient variance of <Z_0> with respect
 * to the RY angle of wire 0 in the first layer, on `family` resized to n
 * wires and n layers.
 */
[[nodiscard]] std::map<std::size_t, double>
gradient_variance_scan(const AnsatzSpec &family, std::span<const std::size_t> qubit_range,
                       std::size_t n_samples, std::uint64_t seed);

} // namespace hqnn
