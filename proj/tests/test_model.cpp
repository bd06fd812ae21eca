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

#include "oracle.hpp"

#include "hqnn/error.hpp"
#include "hqnn/model.hpp"

#include <cmath>
#include <limits>

using namespace hqnn;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd linear_inputs(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    auto rng = make_stream(seed, 0);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x.data()[i] = normal(rng);
    }
    return x;
}

} // namespace

TEST_CASE("dense layer") {
    auto layer = DenseLayer::zeros(2, 3);
    layer.weights << 1, -2, 0, 1, 3, 3;
    layer.bias << 0.5, 0, -10;
    Eigen::VectorXd x(2);
    x << 1, 1;
    const auto y = layer.forward(x);
    CHECK(y[0] == -0.5);
    CHECK(y[1] == 1.0);
    CHECK(y[2] == -4.0);
    layer.activation = Activation::ReLU;
    CHECK(layer.forward(x)[0] == 0.0);
    CHECK_THROWS_AS(layer.forward(Eigen::VectorXd::Zero(3)), ContractError);

    auto rng = make_stream(1, 0);
    const auto u = DenseLayer::glorot(4, 5, rng);
    CHECK(u.weights.cwiseAbs().maxCoeff() <= std::sqrt(6.0 / 9.0));
    CHECK(u.weights.cwiseAbs().minCoeff() > 0.0);
    CHECK(u.bias.isZero());
}

TEST_CASE("quantum layer output matches a dense-matrix simulation") {
    const auto cfg = QuantumLayerConfig::for_wires(3, 2);
    auto rng = make_stream(2, 0);
    Eigen::VectorXd w(param_count(cfg.ansatz));
    for (auto &v : w) {
        v = uniform_angle(rng);
    }
    const QuantumLayer layer(cfg, w);
    Eigen::VectorXd h(3);
    h << 0.3, -1.2, 2.0;

    CircuitProgram reference(3);
    reference.append(angle_encode(std::vector<double>(h.data(), h.data() + 3), cfg.encoding));
    reference.append(strongly_entangling_layers(cfg.ansatz));
    const auto psi = oracle::run(reference, std::vector<double>(w.data(), w.data() + w.size()));
    const auto out = layer.forward(h);
    REQUIRE(out.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK_THAT(out[static_cast<Eigen::Index>(k)], WithinAbs(oracle::expectation_z(psi, k, 3), 1e-12));
    }
}

TEST_CASE("quantum layer configuration") {
    CHECK_THROWS_AS(QuantumLayer(QuantumLayerConfig::for_wires(3), Eigen::VectorXd::Zero(8)),
                    ContractError);
    auto cfg = QuantumLayerConfig::for_wires(3);
    cfg.ansatz.n_wires = 4;
    CHECK_THROWS_AS(cfg.validate(), ContractError);
    CHECK_THROWS_AS(QuantumLayerConfig::for_wires(15).validate(), ContractError);
    const auto nine = QuantumLayerConfig{};
    CHECK_NOTHROW(nine.validate());
    CHECK(param_count(nine.ansatz) == 27);
}

TEST_CASE("shot sampling converges and is seeded") {
    const auto cfg = QuantumLayerConfig::for_wires(2);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(6, 0.4);
    const QuantumLayer layer(cfg, w);
    Eigen::VectorXd h(2);
    h << 0.7, -0.3;
    const auto exact = layer.forward(h);
    const auto a = layer.forward_sampled(h, 20000, 5);
    const auto b = layer.forward_sampled(h, 20000, 5);
    CHECK(a == b);
    CHECK((a - exact).cwiseAbs().maxCoeff() < 0.03);
    CHECK(layer.forward_sampled(h, 20000, 6) != a);
    for (Eigen::Index k = 0; k < 2; ++k) {
        const double scaled = (layer.forward_sampled(h, 10, 7)[k] + 1.0) * 5.0;
        CHECK_THAT(scaled, WithinAbs(std::round(scaled), 1e-12));
    }
}

TEST_CASE("model construction and parameter round trip") {
    auto model = make_hybrid_regressor(9, QuantumLayerConfig{}, 3);
    CHECK(model.variant() == ModelVariant::Hybrid);
    CHECK(model.num_parameters() == 90 + 27 + 10);
    const auto p = model.parameters();
    CHECK(static_cast<std::size_t>(p.size()) == model.num_parameters());
    for (Eigen::Index i = 90; i < 117; ++i) {
        CHECK(p[i] >= 0.0);
        CHECK(p[i] < 2.0 * std::numbers::pi);
    }
    Eigen::VectorXd changed = p;
    changed[0] += 1.0;
    changed[100] -= 0.5;
    model.set_parameters(changed);
    CHECK(model.parameters() == changed);
    CHECK_THROWS_AS(model.set_parameters(Eigen::VectorXd::Zero(5)), ContractError);

    const auto again = make_hybrid_regressor(9, QuantumLayerConfig{}, 3);
    CHECK(again.parameters() == p);
    CHECK(make_hybrid_regressor(9, QuantumLayerConfig{}, 4).parameters() != p);

    const auto classical = make_classical_regressor(9, 9, 3);
    CHECK(classical.variant() == ModelVariant::ClassicalOnly);
    CHECK(classical.num_parameters() == 90 + 90 + 10);

    const auto photonic = make_photonic_regressor(3, PhotonicLayerConfig{}, 3);
    CHECK(photonic.variant() == ModelVariant::Photonic);
    CHECK(photonic.num_parameters() == 12 + 30 + 4);
}

TEST_CASE("forward pass composes the three layers") {
    const auto model = make_hybrid_regressor(3, QuantumLayerConfig::for_wires(3), 9);
    Eigen::VectorXd x(3);
    x << 0.1, 0.2, -0.4;
    const auto h = model.clayer_in.forward(x);
    const auto q = std::get<QuantumLayer>(model.qlayer).forward(h);
    const double expected = model.clayer_out.forward(q)[0];
    CHECK(forward(model, x) == expected);
    const Eigen::MatrixXd batch = x.transpose();
    CHECK(predict(model, batch)[0] == expected);
    CHECK_THROWS_AS(forward(model, Eigen::VectorXd::Zero(4)), ContractError);
}

TEST_CASE("photonic layer") {
    const auto model = make_photonic_regressor(3, PhotonicLayerConfig{}, 11);
    const auto &layer = std::get<PhotonicLayer>(model.qlayer);
    Eigen::VectorXd h(3);
    h << 0.2, -0.1, 0.3;

    auto state = displacement_embedding(std::vector<double>(h.data(), h.data() + 3), 3,
                                        layer.config().fock);
    cv_layer(state, CVLayerParams::from_vector(
                        std::vector<double>(layer.params().data(),
                                            layer.params().data() + layer.params().size()),
                        3));
    const auto out = layer.forward(h);
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK(out[static_cast<Eigen::Index>(m)] == quadrature_x(state, m));
    }
    CHECK(layer.leakage(h) >= 0.0);
    CHECK(layer.leakage(h) < 1e-3);

    const auto jac = layer.jacobian(h);
    CHECK(jac.d_inputs.rows() == 3);
    CHECK(jac.d_inputs.cols() == 3);
    CHECK(jac.d_params.cols() == 30);
    const double eps = 1e-4;
    for (Eigen::Index i = 0; i < 3; ++i) {
        Eigen::VectorXd up = h;
        Eigen::VectorXd down = h;
        up[i] += eps;
        down[i] -= eps;
        const Eigen::VectorXd fd = (layer.forward(up) - layer.forward(down)) / (2 * eps);
        CHECK((fd - jac.d_inputs.col(i)).cwiseAbs().maxCoeff() < 1e-6);
    }

    PhotonicLayerConfig six;
    six.n_modes = 6;
    CHECK_THROWS_AS(PhotonicLayer(six, Eigen::VectorXd::Zero(CVLayerParams::count(6))), ResourceError);
}

TEST_CASE("loss and optimizer primitives") {
    Eigen::VectorXd p(3);
    Eigen::VectorXd t(3);
    p << 1, 2, 3;
    t << 1, 0, 0;
    CHECK_THAT(mse_loss(p, t), WithinAbs(13.0 / 3.0, 1e-15));
    CHECK_THROWS_AS(mse_loss(p, Eigen::VectorXd::Zero(2)), ContractError);
    const auto next = sgd_step(p, t, 0.5);
    CHECK(next[0] == 0.5);
    CHECK(next[2] == 3.0);
    CHECK_THAT(pearson(p, 2.0 * p), WithinAbs(1.0, 1e-15));
    CHECK_THAT(pearson(p, -p), WithinAbs(-1.0, 1e-15));
    CHECK_THROWS_AS(pearson(p, Eigen::VectorXd::Ones(3)), ContractError);
}

TEST_CASE("train configuration") {
    CHECK_NOTHROW(TrainConfig{}.validate());
    CHECK(TrainConfig{}.epochs == 25);
    CHECK(TrainConfig{}.learning_rate == 0.08);
    CHECK(TrainConfig{}.batch_size == 5);
    CHECK_THROWS_AS((TrainConfig{0, 0.1, 5}.validate()), ContractError);
    CHECK_THROWS_AS((TrainConfig{1, 0.1, 0}.validate()), ContractError);
    CHECK_THROWS_AS((TrainConfig{1, std::numeric_limits<double>::quiet_NaN(), 5}.validate()),
                    ContractError);
}

TEST_CASE("SGD fits a linear target") {
    const auto x = linear_inputs(80, 3, 12);
    Eigen::Vector3d beta(0.5, -1.0, 0.25);
    const Eigen::VectorXd y = x * beta;
    auto model = make_classical_regressor(3, 3, 12);
    const auto report = fit(model, x.topRows(60), y.head(60), x.bottomRows(20), y.tail(20),
                            {30, 0.02, 5, 12, std::nullopt});
    REQUIRE(report.train_loss.size() == 30);
    REQUIRE(report.val_loss.size() == 30);
    CHECK(report.train_loss.back() < 0.01 * report.initial_train_loss);
    CHECK(report.val_loss.back() < 1e-3);
    CHECK(report.final_parameters == model.parameters());
}

TEST_CASE("training is deterministic") {
    const auto x = linear_inputs(30, 2, 13);
    const Eigen::VectorXd y = x.col(0) - x.col(1);
    const auto run = [&] {
        auto model = make_hybrid_regressor(2, QuantumLayerConfig::for_wires(2), 13);
        return fit(model, x.topRows(20), y.head(20), x.bottomRows(10), y.tail(10),
                   {3, 0.1, 4, 13, std::nullopt});
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.train_loss == b.train_loss);
    CHECK(a.final_parameters == b.final_parameters);
}

TEST_CASE("hybrid training lowers the loss on a learnable target") {
    const auto x = linear_inputs(60, 2, 14);
    const Eigen::VectorXd y = 0.5 * x.col(0).array().tanh();
    auto model = make_hybrid_regressor(2, QuantumLayerConfig::for_wires(2), 14);
    const auto report = fit(model, x.topRows(45), y.head(45), x.bottomRows(15), y.tail(15),
                            {15, 0.05, 5, 14, std::nullopt});
    CHECK(report.train_loss.back() < 0.5 * report.initial_train_loss);
}

TEST_CASE("divergence is reported with its location") {
    const auto x = linear_inputs(20, 3, 15);
    const Eigen::VectorXd y = 1e3 * x.col(0);
    auto model = make_classical_regressor(3, 3, 15);
    CHECK_THROWS_AS(fit(model, x, y, x, y, {5, 10.0, 5, 0, std::nullopt}), NumericError);
    auto again = make_classical_regressor(3, 3, 15);
    CHECK_THROWS_WITH(fit(again, x, y, x, y, {5, 10.0, 5, 0, std::nullopt}),
                      ContainsSubstring("epoch"));
}

TEST_CASE("predict with shots only touches the quantum layer") {
    const auto model = make_hybrid_regressor(2, QuantumLayerConfig::for_wires(2), 16);
    const auto x = linear_inputs(4, 2, 16);
    const auto exact = predict(model, x);
    const auto a = predict(model, x, {100000, 3});
    const auto b = predict(model, x, {100000, 3});
    CHECK(a == b);
    CHECK((a - exact).cwiseAbs().maxCoeff() < 0.05);
    const auto classical = make_classical_regressor(2, 2, 16);
    CHECK(predict(classical, x, {10, 3}) == predict(classical, x));
}
