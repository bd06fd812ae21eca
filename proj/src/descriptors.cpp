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

#include "hqnn/descriptors.hpp"

#include "hqnn/error.hpp"
#include "hqnn/random.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace hqnn {

void ExpressibilityConfig::validate() const {
    require(n_samples >= 100, "expressibility needs at least 100 samples");
    require(n_bins >= 2, "expressibility needs at least 2 bins");
}

double haar_fidelity_pdf(double fidelity, std::size_t hilbert_dim) {
    require(fidelity >= 0.0 && fidelity <= 1.0, "fidelity must lie in [0, 1]");
    require(hilbert_dim >= 2, "Hilbert-space dimension must be at least 2");
    const auto n = static_cast<double>(hilbert_dim);
    return (n - 1.0) * std::pow(1.0 - fidelity, n - 2.0);
}

std::vector<double> haar_bin_masses(std::size_t hilbert_dim, std::size_t n_bins) {
    require(hilbert_dim >= 2, "Hilbert-space dimension must be at least 2");
    require(n_bins >= 2, "need at least 2 bins");
    const auto exponent = static_cast<double>(hilbert_dim - 1);
    // Survival function (1 - F)^(N - 1); bin mass is its drop across the bin.
    std::vector<double> masses(n_bins);
    double upper = 1.0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        const double right = static_cast<double>(b + 1) / static_cast<double>(n_bins);
        const double lower = b + 1 == n_bins ? 0.0 : std::pow(1.0 - right, exponent);
        masses[b] = upper - lower;
        upper = lower;
    }
    return masses;
}

namespace {

std::vector<double> draw_angles(Rng &rng, std::size_t count) {
    std::vector<double> out(count);
    for (auto &v : out) {
        v = uniform_angle(rng);
    }
    return out;
}

void require_parameters(const CircuitProgram &circuit) {
    require(circuit.num_params() >= 1,
            "circuit has no parameters, its fidelity distribution is degenerate");
}

} // namespace

std::vector<double> sample_fidelities(const CircuitProgram &circuit,
                                      const ExpressibilityConfig &cfg) {
    cfg.validate();
    require_parameters(circuit);
    std::vector<double> out(cfg.n_samples);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        auto rng = make_stream(cfg.seed, i);
        const auto theta = draw_angles(rng, circuit.num_params());
        const auto phi = draw_angles(rng, circuit.num_params());
        out[i] = std::clamp(fidelity(circuit.run(theta), circuit.run(phi)), 0.0, 1.0);
    }
    return out;
}

double expressibility_from_fidelities(std::span<const double> fidelities,
                                      std::size_t hilbert_dim, std::size_t n_bins) {
    require(!fidelities.empty(), "no fidelity samples");
    const auto q = haar_bin_masses(hilbert_dim, n_bins);
    std::vector<double> counts(n_bins, 0.0);
    for (const double f : fidelities) {
        require(f >= 0.0 && f <= 1.0, "fidelity sample outside [0, 1]");
        const auto b = std::min(n_bins - 1, static_cast<std::size_t>(f * static_cast<double>(n_bins)));
        counts[b] += 1.0;
    }
    constexpr double kSmoothing = 1e-9;
    const double total = static_cast<double>(fidelities.size()) + kSmoothing * static_cast<double>(n_bins);
    double kl = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        const double p = (counts[b] + kSmoothing) / total;
        kl += p * std::log(p / std::max(q[b], DBL_MIN));
    }
    return std::max(kl, 0.0);
}

double expressibility(const CircuitProgram &circuit, const ExpressibilityConfig &cfg) {
    const auto fidelities = sample_fidelities(circuit, cfg);
    return expressibility_from_fidelities(fidelities, std::size_t{1} << circuit.num_qubits(),
                                          cfg.n_bins);
}

double meyer_wallach_q(const StateVector &state) {
    const std::size_t n = state.num_qubits();
    double purity = 0.0;
    for (std::size_t w = 0; w < n; ++w) {
        purity += single_qubit_purity(state, w);
    }
    return std::clamp(2.0 * (1.0 - purity / static_cast<double>(n)), 0.0, 1.0);
}

double entangling_capability(const CircuitProgram &circuit, std::size_t n_samples,
                             std::uint64_t seed) {
    require(n_samples >= 1, "entangling capability needs at least one sample");
    require_parameters(circuit);
    double total = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        auto rng = make_stream(seed, i);
        total += meyer_wallach_q(circuit.run(draw_angles(rng, circuit.num_params())));
    }
    return total / static_cast<double>(n_samples);
}

double gradient_variance(const CircuitProgram &circuit, std::size_t slot, std::size_t wire,
                         std::size_t n_samples, std::uint64_t seed) {
    require(n_samples >= 2, "gradient variance needs at least two samples");
    require_parameters(circuit);
    require(slot < circuit.num_params(), "slot " + std::to_string(slot) + " out of range");
    require(wire < circuit.num_qubits(), "wire " + std::to_string(wire) + " out of range");
    constexpr double kShift = std::numbers::pi / 2.0;
    std::vector<double> grads(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        auto rng = make_stream(seed, i);
        auto theta = draw_angles(rng, circuit.num_params());
        const double base = theta[slot];
        theta[slot] = base + kShift;
        const double plus = expectation_z(circuit.run(theta), wire);
        theta[slot] = base - kShift;
        const double minus = expectation_z(circuit.run(theta), wire);
        grads[i] = 0.5 * (plus - minus);
    }
    double mean = 0.0;
    for (const double g : grads) {
        mean += g;
    }
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (const double g : grads) {
        var += (g - mean) * (g - mean);
    }
    return var / static_cast<double>(n_samples);
}

std::map<std::size_t, double> gradient_variance_scan(const AnsatzSpec &family,
                                                     std::span<const std::size_t> qubit_range,
                                                     std::size_t n_samples, std::uint64_t seed) {
    require(n_samples >= 100, "gradient-variance scan needs at least 100 samples");
    std::map<std::size_t, double> out;
    std::size_t previous = 0;
    for (const std::size_t n : qubit_range) {
        require(n > previous, "qubit range must be strictly ascending and positive");
        previous = n;
        if (n > kDefaultMaxQubits) {
            throw ResourceError("gradient-variance scan at " + std::to_string(n) +
                                " qubits exceeds the " + std::to_string(kDefaultMaxQubits) +
                                "-qubit ceiling");
        }
        AnsatzSpec spec = family;
        spec.n_wires = n;
        spec.n_layers = n;
        const auto circuit = strongly_entangling_layers(spec);
        out[n] = gradient_variance(circuit, rot_slot(spec, 0, 0, 1), 0, n_samples, seed);
    }
    return out;
}

} // namespace hqnn
