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

#include "hqnn/error.hpp"
#include "hqnn/fock.hpp"
#include "hqnn/random.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace hqnn;
using Catch::Matchers::WithinAbs;

namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd lowering(std::size_t d) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

/// Top-left d x d block of exp(G) computed on a much larger truncation.
Eigen::MatrixXcd expm_block(const Eigen::MatrixXcd &generator, std::size_t d) {
    return generator.exp().topLeftCorner(d, d);
}

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

/// Heisenberg-picture tracker of <a_m> under Gaussian gates.
struct MeanTracker {
    std::vector<cd> mean;

    void displace(std::size_t m, double r, double phi) { mean[m] += std::polar(r, phi); }
    void squeeze(std::size_t m, double r) {
        mean[m] = std::cosh(r) * mean[m] - std::sinh(r) * std::conj(mean[m]);
    }
    void rotate(std::size_t m, double phi) { mean[m] *= std::polar(1.0, phi); }
    void split(std::size_t a, std::size_t b, double theta, double phi) {
        const cd ma = mean[a];
        const cd mb = mean[b];
        mean[a] = std::cos(theta) * ma + std::polar(1.0, phi) * std::sin(theta) * mb;
        mean[b] = std::cos(theta) * mb - std::polar(1.0, -phi) * std::sin(theta) * ma;
    }
};

} // namespace

TEST_CASE("element budget") {
    CHECK(fock_elements(3, 8) == 512);
    CHECK(fock_elements(5, 8) == 32768);
    CHECK(fock_elements(6, 8) == 262144);
    CHECK(FockOptions{}.max_elements == 100000);
    CHECK_NOTHROW(FockState::vacuum(5));
    CHECK_THROWS_AS(FockState::vacuum(6), ResourceError);
    CHECK_THROWS_AS(FockState::vacuum(3, {10, 999, 1e-4}), ResourceError);
    CHECK_THROWS_AS(FockState::vacuum(0), ContractError);
    CHECK_THROWS_AS(FockState::vacuum(2, {1, 100, 1e-4}), ContractError);
}

TEST_CASE("number states and indexing") {
    const std::vector<std::size_t> occ{2, 0, 1};
    const auto s = FockState::number_state(occ, {4, 1000, 1e-4});
    CHECK(s.amplitude(occ) == cd(1.0));
    CHECK(s.amplitudes()[2 * 16 + 1] == cd(1.0));
    CHECK_THAT(mean_photon_number(s, 0), WithinAbs(2.0, 1e-15));
    CHECK_THAT(mean_photon_number(s, 2), WithinAbs(1.0, 1e-15));
    const std::vector<std::size_t> too_high{4, 0, 0};
    CHECK_THROWS_AS(FockState::number_state(too_high, {4, 1000, 1e-4}), ContractError);
}

TEST_CASE("displacement of vacuum is a coherent state") {
    const double r = 0.7;
    const double phi = 0.4;
    const std::size_t d = 20;
    auto s = FockState::vacuum(1, {d, 1000, 1e-6});
    displacement(s, 0, r, phi);
    const cd alpha = std::polar(r, phi);
    for (std::size_t n = 0; n < d; ++n) {
        const cd expected = std::exp(-r * r / 2) * std::pow(alpha, static_cast<double>(n)) /
                            std::sqrt(factorial(n));
        CHECK(std::abs(s.amplitudes()[n] - expected) < 1e-13);
    }
    CHECK_THAT(quadrature_x(s, 0), WithinAbs(std::sqrt(2.0) * r * std::cos(phi), 1e-10));
    CHECK_THAT(mean_photon_number(s, 0), WithinAbs(r * r, 1e-10));
}

TEST_CASE("displacement matrix matches the exponentiated generator") {
    const std::size_t d = 10;
    const std::size_t big = 80;
    const cd alpha = std::polar(0.9, -1.1);
    const auto a = lowering(big);
    const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    const auto ref = expm_block(gen, d);
    CHECK((displacement_matrix(d, 0.9, -1.1) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("squeeze matrix matches the exponentiated generator") {
    const std::size_t d = 10;
    const std::size_t big = 120;
    const double r = 0.45;
    const auto a = lowering(big);
    const Eigen::MatrixXcd gen = 0.5 * r * (a * a - a.adjoint() * a.adjoint());
    const auto ref = expm_block(gen, d);
    CHECK((squeeze_matrix(d, r) - ref).cwiseAbs().maxCoeff() < 1e-12);

    auto s = FockState::vacuum(1, {d, 100, 1.0});
    squeeze(s, 0, r);
    for (std::size_t n = 0; n < d; n += 2) {
        const std::size_t m = n / 2;
        const double expected = std::pow(-std::tanh(r), static_cast<double>(m)) *
                                std::sqrt(factorial(n)) /
                                (std::pow(2.0, static_cast<double>(m)) * factorial(m) *
                                 std::sqrt(std::cosh(r)));
        CHECK_THAT(s.amplitudes()[n].real(), WithinAbs(expected, 1e-14));
        CHECK(s.amplitudes()[n + 1] == cd(0.0));
    }
}

TEST_CASE("beamsplitter matches the exponentiated generator below the cutoff") {
    const std::size_t d = 6;
    const std::size_t big = 14;
    const double theta = 0.8;
    const double phi = 0.3;
    const auto a1 = lowering(big);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(big, big);
    const Eigen::MatrixXcd a = Eigen::kroneckerProduct(a1, id);
    const Eigen::MatrixXcd b = Eigen::kroneckerProduct(id, a1);
    const Eigen::MatrixXcd gen =
        theta * (std::polar(1.0, phi) * a.adjoint() * b - std::polar(1.0, -phi) * a * b.adjoint());
    const Eigen::MatrixXcd ref = gen.exp();
    const auto u = beamsplitter_matrix(d, theta, phi);
    for (std::size_t na = 0; na < d; ++na) {
        for (std::size_t nb = 0; nb < d; ++nb) {
            for (std::size_t ma = 0; ma < d; ++ma) {
                for (std::size_t mb = 0; mb < d; ++mb) {
                    if (na + nb >= d || ma + mb >= d) {
                        continue;
                    }
                    const cd got = u(ma * d + mb, na * d + nb);
                    const cd want = ref(ma * big + mb, na * big + nb);
                    CHECK(std::abs(got - want) < 1e-12);
                }
            }
        }
    }
    // Blocks that fit entirely below the cutoff are unitary.
    auto s = FockState::number_state(std::vector<std::size_t>{2, 1}, {d, 100, 1e-12});
    beamsplitter(s, 0, 1, theta, phi);
    CHECK_THAT(s.norm_squared(), WithinAbs(1.0, 1e-13));
    CHECK_THAT(mean_photon_number(s, 0) + mean_photon_number(s, 1), WithinAbs(3.0, 1e-12));
}

TEST_CASE("Gaussian first moments follow the symplectic map") {
    auto rng = make_stream(61, 0);
    std::uniform_real_distribution<double> small(-0.3, 0.3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t modes = 2 + static_cast<std::size_t>(trial % 2);
        std::uniform_int_distribution<std::size_t> pick_mode(0, modes - 1);
        auto state = FockState::vacuum(modes, {18, 10000, 1e-6});
        MeanTracker tracker{std::vector<cd>(modes, 0.0)};
        for (int g = 0; g < 8; ++g) {
            const std::size_t m = pick_mode(rng);
            switch (pick(rng)) {
            case 0: {
                const double r = small(rng);
                const double phi = angle(rng);
                displacement(state, m, r, phi);
                tracker.displace(m, r, phi);
                break;
            }
            case 1: {
                const double r = small(rng);
                squeeze(state, m, r);
                tracker.squeeze(m, r);
                break;
            }
            case 2: {
                const double phi = angle(rng);
                rotation(state, m, phi);
                tracker.rotate(m, phi);
                break;
            }
            default: {
                const std::size_t other = (m + 1) % modes;
                const double theta = angle(rng);
                const double phi = angle(rng);
                beamsplitter(state, m, other, theta, phi);
                tracker.split(m, other, theta, phi);
                break;
            }
            }
        }
        for (std::size_t m = 0; m < modes; ++m) {
            CHECK_THAT(quadrature_x(state, m),
                       WithinAbs(std::sqrt(2.0) * tracker.mean[m].real(), 1e-8));
        }
    }
}

TEST_CASE("Kerr and rotation leave photon statistics alone") {
    auto s = FockState::vacuum(1, {12, 100, 1e-6});
    displacement(s, 0, 0.8, 0.0);
    const auto before = photon_distribution(s, 0);
    const auto amps = std::vector<cd>(s.amplitudes().begin(), s.amplitudes().end());
    kerr(s, 0, 0.37);
    rotation(s, 0, 1.2);
    const auto after = photon_distribution(s, 0);
    for (std::size_t n = 0; n < before.size(); ++n) {
        CHECK_THAT(after[n], WithinAbs(before[n], 1e-15));
        const double nd = static_cast<double>(n);
        const cd expected = amps[n] * std::polar(1.0, 0.37 * nd * nd + 1.2 * nd);
        CHECK(std::abs(s.amplitudes()[n] - expected) < 1e-14);
    }
}

TEST_CASE("leakage above tolerance is reported") {
    auto s = FockState::vacuum(1, {5, 100, 1e-4});
    CHECK_THROWS_AS(displacement(s, 0, 2.0, 0.0), TruncationError);

    auto lenient = FockState::vacuum(1, {5, 100, 1.0});
    displacement(lenient, 0, 2.0, 0.0);
    double tail = 0.0;
    for (std::size_t n = 5; n < 60; ++n) {
        tail += std::exp(-4.0) * std::pow(4.0, static_cast<double>(n)) / factorial(n);
    }
    CHECK_THAT(lenient.norm_deficit(), WithinAbs(tail, 1e-12));
}

TEST_CASE("CV layer parameter layout") {
    CHECK(CVLayerParams::count(1) == 6);
    CHECK(CVLayerParams::count(3) == 30);
    const auto mesh = interferometer_mesh(3);
    REQUIRE(mesh.size() == 3);
    CHECK(mesh[0] == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(mesh[1] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(mesh[2] == std::pair<std::size_t, std::size_t>{1, 2});

    std::vector<double> values(30);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = 0.01 * static_cast<double>(i);
    }
    const auto p = CVLayerParams::from_vector(values, 3);
    CHECK(p.to_vector() == values);
    CHECK(p.squeeze_r[0] == values[9]);
    CHECK(p.kerr_kappa[2] == values[29]);
    CHECK_THROWS_AS(CVLayerParams::from_vector(std::vector<double>(29), 3), ContractError);
}

TEST_CASE("CV layer with zero parameters is the identity") {
    const std::vector<double> x{0.3, -0.2, 0.1};
    auto s = displacement_embedding(x, 3);
    const auto before = std::vector<cd>(s.amplitudes().begin(), s.amplitudes().end());
    cv_layer(s, CVLayerParams::zeros(3));
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(s.amplitudes()[i] == before[i]);
    }
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK_THAT(quadrature_x(s, m), WithinAbs(std::sqrt(2.0) * x[m], 1e-9));
    }
    CHECK_THROWS_AS(displacement_embedding(std::vector<double>(4, 0.1), 3), ContractError);
}

TEST_CASE("CV layer first moments without Kerr") {
    auto rng = make_stream(62, 0);
    std::normal_distribution<double> normal(0.0, 0.1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    auto p = CVLayerParams::zeros(3);
    for (auto *group : {&p.int1_theta, &p.int1_phi, &p.int1_rotation, &p.int2_theta, &p.int2_phi,
                        &p.int2_rotation, &p.displacement_phi}) {
        for (auto &v : *group) {
            v = angle(rng);
        }
    }
    for (auto *group : {&p.squeeze_r, &p.displacement_r}) {
        for (auto &v : *group) {
            v = normal(rng);
        }
    }
    const std::vector<double> x{0.2, -0.1, 0.15};
    auto state = displacement_embedding(x, 3, {14, 10000, 1e-6});
    cv_layer(state, p);

    MeanTracker t{{x[0], x[1], x[2]}};
    const auto mesh = interferometer_mesh(3);
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        t.split(mesh[k].first, mesh[k].second, p.int1_theta[k], p.int1_phi[k]);
    }
    for (std::size_t m = 0; m < 3; ++m) {
        t.rotate(m, p.int1_rotation[m]);
    }
    for (std::size_t m = 0; m < 3; ++m) {
        t.squeeze(m, p.squeeze_r[m]);
    }
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        t.split(mesh[k].first, mesh[k].second, p.int2_theta[k], p.int2_phi[k]);
    }
    for (std::size_t m = 0; m < 3; ++m) {
        t.rotate(m, p.int2_rotation[m]);
        t.displace(m, p.displacement_r[m], p.displacement_phi[m]);
    }
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK_THAT(quadrature_x(state, m), WithinAbs(std::sqrt(2.0) * t.mean[m].real(), 1e-8));
    }
}

TEST_CASE("leakage shrinks as the cutoff grows") {
    double previous = 1.0;
    for (const std::size_t d : {8U, 12U, 16U, 20U}) {
        auto s = FockState::vacuum(2, {d, 1000, 1.0});
        displacement(s, 0, 1.3, 0.2);
        squeeze(s, 1, 0.7);
        beamsplitter(s, 0, 1, 0.6, 0.1);
        const double deficit = s.norm_deficit();
        CHECK(deficit <= previous);
        CHECK(deficit >= -1e-12);
        previous = deficit;
    }
    CHECK_THROWS_AS(FockState::vacuum(6, {10, 100000, 1e-4}), ResourceError);
}
