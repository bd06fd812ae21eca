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

#include "catch_amalgamated.hpp"

#include "helpers.hpp"
#include "oracle.hpp"

#include "hqnn/ansatz.hpp"
#include "hqnn/descriptors.hpp"
#include "hqnn/error.hpp"

#include <cmath>
#include <numeric>

using namespace hqnn;
using Catch::Matchers::WithinAbs;

namespace {

StateVector from_vec(const oracle::Vec &psi, std::size_t n) {
    return StateVector::from_amplitudes(n, std::vector<complex_t>(psi.begin(), psi.end()));
}

CircuitProgram rotations_only(std::size_t n) {
    return strongly_entangling_layers({n, 1, Entangler::None});
}

} // namespace

TEST_CASE("Haar fidelity density") {
    for (const std::size_t dim : {2U, 4U, 16U}) {
        const std::size_t steps = 200000;
        double integral = 0.0;
        for (std::size_t i = 0; i < steps; ++i) {
            const double f = (static_cast<double>(i) + 0.5) / static_cast<double>(steps);
            integral += haar_fidelity_pdf(f, dim) / static_cast<double>(steps);
        }
        CHECK_THAT(integral, WithinAbs(1.0, 1e-6));
    }
    CHECK_THAT(haar_fidelity_pdf(0.25, 4), WithinAbs(3.0 * 0.75 * 0.75, 1e-15));
    CHECK_THAT(haar_fidelity_pdf(0.7, 2), WithinAbs(1.0, 1e-15));
}

TEST_CASE("Haar bin masses follow the survival function") {
    const auto masses = haar_bin_masses(8, 75);
    REQUIRE(masses.size() == 75);
    CHECK_THAT(std::accumulate(masses.begin(), masses.end(), 0.0), WithinAbs(1.0, 1e-12));
    for (std::size_t j = 0; j < 75; ++j) {
        const double a = static_cast<double>(j) / 75.0;
        const double b = static_cast<double>(j + 1) / 75.0;
        CHECK_THAT(masses[j], WithinAbs(std::pow(1 - a, 7) - std::pow(1 - b, 7), 1e-14));
    }
    const auto flat = haar_bin_masses(2, 10);
    for (const double m : flat) {
        CHECK_THAT(m, WithinAbs(0.1, 1e-14));
    }
}

TEST_CASE("expressibility limits") {
    // Fidelities pinned at 1 put all empirical mass in the last bin.
    const std::vector<double> ones(1000, 1.0);
    CHECK_THAT(expressibility_from_fidelities(ones, 2, 75), WithinAbs(std::log(75.0), 1e-3));

    std::vector<double> spread(7500);
    for (std::size_t i = 0; i < spread.size(); ++i) {
        spread[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(spread.size());
    }
    CHECK(expressibility_from_fidelities(spread, 2, 75) < 1e-9);

    CircuitProgram fixed(2);
    fixed.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1});
    CHECK_THROWS_AS(expressibility(fixed, {500, 75, 1}), ContractError);
    CHECK_THROWS_AS(entangling_capability(fixed, 10, 1), ContractError);
    fixed.reserve_params(1);
    const double kl = expressibility(fixed, {500, 75, 1});
    CHECK_THAT(kl, WithinAbs(std::log(1.0 / haar_bin_masses(4, 75).back()), 1e-3));
}

TEST_CASE("expressibility is reproducible and ranks circuits") {
    const auto sel = strongly_entangling_layers({2, 2, Entangler::CNOT});
    const ExpressibilityConfig cfg{2000, 75, 9};
    CHECK(expressibility(sel, cfg) == expressibility(sel, cfg));
    const auto a = sample_fidelities(sel, cfg);
    const auto b = sample_fidelities(sel, cfg);
    CHECK(a == b);
    for (const double f : a) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }

    CircuitProgram ry_only(2);
    ry_only.add(GateKind::RY, {0}, {Slot{0}}).add(GateKind::RY, {1}, {Slot{1}});
    CHECK(expressibility(sel, cfg) < expressibility(ry_only, cfg));
}

TEST_CASE("expressibility configuration") {
    CHECK_THROWS_AS((ExpressibilityConfig{50, 75, 0}.validate()), ContractError);
    CHECK_THROWS_AS((ExpressibilityConfig{500, 1, 0}.validate()), ContractError);
    CHECK(ExpressibilityConfig{}.n_samples == 5000);
    CHECK(ExpressibilityConfig{}.n_bins == 75);
}

TEST_CASE("Meyer-Wallach on named states") {
    CHECK_THAT(meyer_wallach_q(StateVector::zero(3)), WithinAbs(0.0, 1e-15));

    CircuitProgram bell(2);
    bell.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1});
    CHECK_THAT(meyer_wallach_q(bell.run()), WithinAbs(1.0, 1e-12));

    CircuitProgram ghz(4);
    ghz.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1}).add(GateKind::CNOT, {1, 2}).add(
        GateKind::CNOT, {2, 3});
    CHECK_THAT(meyer_wallach_q(ghz.run()), WithinAbs(1.0, 1e-12));

    const double s = 1.0 / std::sqrt(3.0);
    std::vector<complex_t> w(8, 0.0);
    w[1] = w[2] = w[4] = s;
    CHECK_THAT(meyer_wallach_q(StateVector::from_amplitudes(3, w)), WithinAbs(8.0 / 9.0, 1e-12));
}

TEST_CASE("Meyer-Wallach agrees with partial traces") {
    auto rng = make_stream(51, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        const auto program = testing::random_circuit(rng, n, 20);
        const auto psi = oracle::run(program, {});
        CHECK_THAT(meyer_wallach_q(from_vec(psi, n)), WithinAbs(oracle::meyer_wallach(psi, n), 1e-12));
    }
}

TEST_CASE("entangling capability") {
    CHECK_THAT(entangling_capability(rotations_only(3), 200, 1), WithinAbs(0.0, 1e-12));
    const auto sel = strongly_entangling_layers({3, 2, Entangler::CNOT});
    const double q = entangling_capability(sel, 300, 2);
    CHECK(q > 0.2);
    CHECK(q <= 1.0);
    CHECK(q == entangling_capability(sel, 300, 2));
}

TEST_CASE("single-qubit gradient variance is one half") {
    // <Z> after Rot(a, b, c) on |0> is cos b, so the derivative is -sin b.
    const auto one = strongly_entangling_layers({1, 1, Entangler::CNOT});
    const double var = gradient_variance(one, 1, 0, 4000, 3);
    CHECK_THAT(var, WithinAbs(0.5, 0.03));
}

TEST_CASE("gradient variance decays with width") {
    const std::vector<std::size_t> range{1, 2, 3, 4, 5};
    const auto scan = gradient_variance_scan({1, 1, Entangler::CNOT}, range, 400, 4);
    REQUIRE(scan.size() == range.size());
    double previous = 1.0;
    for (const auto &[n, var] : scan) {
        CHECK(var < previous);
        previous = var;
    }
    CHECK(scan == gradient_variance_scan({1, 1, Entangler::CNOT}, range, 400, 4));
}

TEST_CASE("gradient variance scan validation") {
    const std::vector<std::size_t> unsorted{3, 2};
    CHECK_THROWS_AS(gradient_variance_scan({1, 1, Entangler::CNOT}, unsorted, 200, 0), ContractError);
    const std::vector<std::size_t> too_wide{15};
    CHECK_THROWS_AS(gradient_variance_scan({1, 1, Entangler::CNOT}, too_wide, 200, 0), ResourceError);
    const std::vector<std::size_t> ok{2};
    CHECK_THROWS_AS(gradient_variance_scan({1, 1, Entangler::CNOT}, ok, 10, 0), ContractError);
}

TEST_CASE("a trailing fixed entangler does not change fidelities") {
    // With one layer the entangler ring follows every rotation, so it cancels
    // in |<psi(theta)|psi(phi)>|^2.
    const ExpressibilityConfig cfg{1000, 75, 12};
    const auto rot = sample_fidelities(rotations_only(4), cfg);
    const auto one = sample_fidelities(strongly_entangling_layers({4, 1, Entangler::CNOT}), cfg);
    REQUIRE(rot.size() == one.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < rot.size(); ++i) {
        worst = std::max(worst, std::abs(rot[i] - one[i]));
    }
    CHECK(worst < 1e-12);
    const double three = expressibility(strongly_entangling_layers({4, 3, Entangler::CNOT}), cfg);
    CHECK(three < expressibility(rotations_only(4), cfg));
}
