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

#include "hqnn/model.hpp"

#include "hqnn/error.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

namespace hqnn {

DenseLayer DenseLayer::zeros(std::size_t in, std::size_t out) {
    return {Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)),
            Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out)), Activation::Linear};
}

DenseLayer DenseLayer::glorot(std::size_t in, std::size_t out, Rng &rng) {
    auto layer = zeros(in, out);
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
            layer.weights(r, c) = dist(rng);
        }
    }
    return layer;
}

Eigen::VectorXd DenseLayer::forward(const Eigen::VectorXd &x) const {
    if (static_cast<std::size_t>(x.size()) != in_width()) {
        throw ContractError("dense layer expects " + std::to_string(in_width()) +
                            " inputs, got " + std::to_string(x.size()));
    }
    Eigen::VectorXd y = weights * x + bias;
    if (activation == Activation::ReLU) {
        y = y.cwiseMax(0.0);
    }
    return y;
}

QuantumLayerConfig QuantumLayerConfig::for_wires(std::size_t n_wires, std::size_t n_layers) {
    QuantumLayerConfig cfg;
    cfg.n_wires = n_wires;
    cfg.encoding = {EncodingScheme::Angle, RotationAxis::Y, n_wires};
    cfg.ansatz = {n_wires, n_layers, Entangler::CNOT};
    cfg.measured_wires = ObservableSpec::all_wires(n_wires);
    return cfg;
}

void QuantumLayerConfig::validate() const {
    require(n_wires >= 1 && n_wires <= kDefaultMaxQubits,
            "quantum layer wire count must lie in [1, " + std::to_string(kDefaultMaxQubits) + "]");
    require(encoding.scheme == EncodingScheme::Angle, "quantum layer uses angle encoding");
    require(encoding.n_wires == n_wires, "encoding wire count differs from the layer's");
    require(ansatz.n_wires == n_wires, "ansatz wire count differs from the layer's");
    require(ansatz.n_layers >= 1, "ansatz needs at least one layer");
    require(!measured_wires.wires.empty(), "quantum layer measures no wires");
    validate_observables(measured_wires, n_wires);
    if (gradient == GradientMethod::FiniteDifference) {
        finite_diff.validate();
    }
}

QuantumLayer::QuantumLayer(QuantumLayerConfig config, Eigen::VectorXd weights)
    : config_(std::move(config)), weights_(std::move(weights)),
      ansatz_(strongly_entangling_layers(config_.ansatz)),
      program_(encoded_circuit(ansatz_, config_.n_wires, config_.encoding)) {
    config_.validate();
    require(static_cast<std::size_t>(weights_.size()) == param_count(config_.ansatz),
            "quantum layer expects " + std::to_string(param_count(config_.ansatz)) +
                " weights, got " + std::to_string(weights_.size()));
}

namespace {

std::vector<double> to_std(const Eigen::VectorXd &v) { return {v.data(), v.data() + v.size()}; }

void check_width(const Eigen::VectorXd &h, std::size_t expected, const char *what) {
    if (static_cast<std::size_t>(h.size()) != expected) {
        throw ContractError(std::string(what) + " expects " + std::to_string(expected) +
                            " inputs, got " + std::to_string(h.size()));
    }
}

} // namespace

Eigen::VectorXd QuantumLayer::forward(const Eigen::VectorXd &h) const {
    check_width(h, in_width(), "quantum layer");
    std::vector<double> all = to_std(h);
    all.insert(all.end(), weights_.data(), weights_.data() + weights_.size());
    const auto state = program_.run(all);
    const auto values = expectations(state, config_.measured_wires);
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd QuantumLayer::forward_sampled(const Eigen::VectorXd &h, std::size_t shots,
                                              std::uint64_t seed) const {
    check_width(h, in_width(), "quantum layer");
    std::vector<double> all = to_std(h);
    all.insert(all.end(), weights_.data(), weights_.data() + weights_.size());
    const auto state = program_.run(all);
    Eigen::VectorXd out(static_cast<Eigen::Index>(out_width()));
    for (std::size_t k = 0; k < out_width(); ++k) {
        auto stream = make_stream(seed, k);
        out[static_cast<Eigen::Index>(k)] =
            sample_expectation_z(state, config_.measured_wires.wires[k], shots, stream());
    }
    return out;
}

QuantumJacobian QuantumLayer::jacobian(const Eigen::VectorXd &h) const {
    check_width(h, in_width(), "quantum layer");
    const auto x = to_std(h);
    const auto theta = to_std(weights_);
    if (config_.gradient == GradientMethod::FiniteDifference) {
        return finite_diff_quantum_jacobian(ansatz_, theta, x, config_.encoding,
                                            config_.measured_wires, config_.finite_diff);
    }
    return param_shift_jacobian(ansatz_, theta, x, config_.encoding, config_.measured_wires);
}

PhotonicLayer::PhotonicLayer(PhotonicLayerConfig config, Eigen::VectorXd params)
    : config_(std::move(config)), params_(std::move(params)) {
    require(config_.n_modes >= 1, "photonic layer needs at least one mode");
    config_.finite_diff.validate();
    require(static_cast<std::size_t>(params_.size()) == CVLayerParams::count(config_.n_modes),
            "photonic layer expects " + std::to_string(CVLayerParams::count(config_.n_modes)) +
                " parameters, got " + std::to_string(params_.size()));
    // Fail on the element budget before any training work starts.
    (void)FockState::vacuum(config_.n_modes, config_.fock);
}

Eigen::VectorXd PhotonicLayer::evaluate(std::span<const double> inputs,
                                        std::span<const double> params) const {
    auto state = displacement_embedding(inputs, config_.n_modes, config_.fock);
    cv_layer(state, CVLayerParams::from_vector(params, config_.n_modes));
    Eigen::VectorXd out(static_cast<Eigen::Index>(config_.n_modes));
    for (std::size_t m = 0; m < config_.n_modes; ++m) {
        out[static_cast<Eigen::Index>(m)] = quadrature_x(state, m);
    }
    return out;
}

Eigen::VectorXd PhotonicLayer::forward(const Eigen::VectorXd &h) const {
    check_width(h, in_width(), "photonic layer");
    return evaluate(to_std(h), to_std(params_));
}

double PhotonicLayer::leakage(const Eigen::VectorXd &h) const {
    check_width(h, in_width(), "photonic layer");
    auto state = displacement_embedding(to_std(h), config_.n_modes, config_.fock);
    cv_layer(state, CVLayerParams::from_vector(to_std(params_), config_.n_modes));
    return state.norm_deficit();
}

QuantumJacobian PhotonicLayer::jacobian(const Eigen::VectorXd &h) const {
    check_width(h, in_width(), "photonic layer");
    const auto x = to_std(h);
    const auto p = to_std(params_);
    const auto n_in = x.size();
    std::vector<double> all = x;
    all.insert(all.end(), p.begin(), p.end());
    const auto f = [&](std::span<const double> v) {
        return evaluate(v.first(n_in), v.subspan(n_in));
    };
    const Eigen::MatrixXd full = finite_diff_jacobian(f, all, config_.finite_diff);
    const auto ni = static_cast<Eigen::Index>(n_in);
    return {evaluate(x, p), full.rightCols(full.cols() - ni), full.leftCols(ni)};
}

std::size_t middle_param_count(const MiddleLayer &layer) {
    return std::visit(
        [](const auto &l) -> std::size_t {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, QuantumLayer>) {
                return static_cast<std::size_t>(l.weights().size());
            } else if constexpr (std::is_same_v<T, PhotonicLayer>) {
                return static_cast<std::size_t>(l.params().size());
            } else if constexpr (std::is_same_v<T, DenseLayer>) {
                return static_cast<std::size_t>(l.weights.size() + l.bias.size());
            } else {
                return 0;
            }
        },
        layer);
}

std::size_t middle_in_width(const MiddleLayer &layer) {
    return std::visit(
        [](const auto &l) -> std::size_t {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IdentityLayer>) {
                return l.width;
            } else {
                return l.in_width();
            }
        },
        layer);
}

std::size_t middle_out_width(const MiddleLayer &layer) {
    return std::visit(
        [](const auto &l) -> std::size_t {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IdentityLayer>) {
                return l.width;
            } else {
                return l.out_width();
            }
        },
        layer);
}

Eigen::VectorXd middle_forward(const MiddleLayer &layer, const Eigen::VectorXd &h) {
    return std::visit(
        [&h](const auto &l) -> Eigen::VectorXd {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IdentityLayer>) {
                check_width(h, l.width, "identity layer");
                return h;
            } else {
                return l.forward(h);
            }
        },
        layer);
}

MiddleVjp middle_vjp(const MiddleLayer &layer, const Eigen::VectorXd &h,
                     const Eigen::VectorXd &upstream) {
    return std::visit(
        [&](const auto &l) -> MiddleVjp {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IdentityLayer>) {
                check_width(h, l.width, "identity layer");
                return {upstream, Eigen::VectorXd(0)};
            } else if constexpr (std::is_same_v<T, DenseLayer>) {
                const Eigen::VectorXd pre = l.weights * h + l.bias;
                Eigen::VectorXd u = upstream;
                if (l.activation == Activation::ReLU) {
                    u = u.cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
                }
                Eigen::VectorXd dp(l.weights.size() + l.bias.size());
                Eigen::Index pos = 0;
                for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
                    for (Eigen::Index c = 0; c < l.weights.cols(); ++c) {
                        dp[pos++] = u[r] * h[c];
                    }
                }
                dp.tail(l.bias.size()) = u;
                return {l.weights.transpose() * u, dp};
            } else {
                const QuantumJacobian jac = l.jacobian(h);
                return {jac.d_inputs.transpose() * upstream, jac.d_params.transpose() * upstream};
            }
        },
        layer);
}

ModelVariant HybridRegressor::variant() const {
    switch (qlayer.index()) {
    case 0:
        return ModelVariant::Hybrid;
    case 1:
        return ModelVariant::ClassicalOnly;
    case 2:
        return ModelVariant::Photonic;
    default:
        return ModelVariant::Identity;
    }
}

std::size_t HybridRegressor::num_parameters() const {
    return static_cast<std::size_t>(clayer_in.weights.size() + clayer_in.bias.size() +
                                    clayer_out.weights.size() + clayer_out.bias.size()) +
           middle_param_count(qlayer);
}

void HybridRegressor::validate() const {
    require(clayer_in.bias.size() == clayer_in.weights.rows() &&
                clayer_out.bias.size() == clayer_out.weights.rows(),
            "dense layer bias length differs from its output width");
    require(clayer_in.out_width() == middle_in_width(qlayer),
            "input layer width " + std::to_string(clayer_in.out_width()) +
                " does not match middle layer input " + std::to_string(middle_in_width(qlayer)));
    require(middle_out_width(qlayer) == clayer_out.in_width(),
            "middle layer width " + std::to_string(middle_out_width(qlayer)) +
                " does not match output layer input " + std::to_string(clayer_out.in_width()));
    require(clayer_out.out_width() == 1, "output layer must produce a single value");
}

namespace {

void write_dense(Eigen::VectorXd &out, Eigen::Index &pos, const DenseLayer &layer) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
            out[pos++] = layer.weights(r, c);
        }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
        out[pos++] = layer.bias[r];
    }
}

void read_dense(const Eigen::VectorXd &in, Eigen::Index &pos, DenseLayer &layer) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
            layer.weights(r, c) = in[pos++];
        }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
        layer.bias[r] = in[pos++];
    }
}

} // namespace

Eigen::VectorXd HybridRegressor::parameters() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(num_parameters()));
    Eigen::Index pos = 0;
    write_dense(out, pos, clayer_in);
    std::visit(
        [&](const auto &l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, QuantumLayer>) {
                out.segment(pos, l.weights().size()) = l.weights();
                pos += l.weights().size();
            } else if constexpr (std::is_same_v<T, PhotonicLayer>) {
                out.segment(pos, l.params().size()) = l.params();
                pos += l.params().size();
            } else if constexpr (std::is_same_v<T, DenseLayer>) {
                write_dense(out, pos, l);
            }
        },
        qlayer);
    write_dense(out, pos, clayer_out);
    return out;
}

void HybridRegressor::set_parameters(const Eigen::VectorXd &values) {
    require(static_cast<std::size_t>(values.size()) == num_parameters(),
            "model has " + std::to_string(num_parameters()) + " parameters, got " +
                std::to_string(values.size()));
    Eigen::Index pos = 0;
    read_dense(values, pos, clayer_in);
    std::visit(
        [&](auto &l) {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, QuantumLayer>) {
                l.weights() = values.segment(pos, l.weights().size());
                pos += l.weights().size();
            } else if constexpr (std::is_same_v<T, PhotonicLayer>) {
                l.params() = values.segment(pos, l.params().size());
                pos += l.params().size();
            } else if constexpr (std::is_same_v<T, DenseLayer>) {
                read_dense(values, pos, l);
            }
        },
        qlayer);
    read_dense(values, pos, clayer_out);
}

HybridRegressor make_hybrid_regressor(std::size_t n_features, const QuantumLayerConfig &config,
                                      std::uint64_t seed) {
    config.validate();
    auto rng_in = make_stream(seed, 0);
    auto rng_mid = make_stream(seed, 1);
    auto rng_out = make_stream(seed, 2);
    Eigen::VectorXd weights(static_cast<Eigen::Index>(param_count(config.ansatz)));
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        weights[i] = uniform_angle(rng_mid);
    }
    HybridRegressor model{DenseLayer::glorot(n_features, config.n_wires, rng_in),
                          QuantumLayer(config, std::move(weights)),
                          DenseLayer::glorot(config.measured_wires.wires.size(), 1, rng_out)};
    model.validate();
    return model;
}

HybridRegressor make_classical_regressor(std::size_t n_features, std::size_t hidden,
                                         std::uint64_t seed) {
    auto rng_in = make_stream(seed, 0);
    auto rng_mid = make_stream(seed, 1);
    auto rng_out = make_stream(seed, 2);
    HybridRegressor model{DenseLayer::glorot(n_features, hidden, rng_in),
                          DenseLayer::glorot(hidden, hidden, rng_mid),
                          DenseLayer::glorot(hidden, 1, rng_out)};
    model.validate();
    return model;
}

HybridRegressor make_photonic_regressor(std::size_t n_features, const PhotonicLayerConfig &config,
                                        std::uint64_t seed) {
    auto rng_in = make_stream(seed, 0);
    auto rng_mid = make_stream(seed, 1);
    auto rng_out = make_stream(seed, 2);
    const std::size_t m = config.n_modes;
    auto p = CVLayerParams::zeros(m);
    std::normal_distribution<double> small(0.0, 0.1);
    const auto angles = [&rng_mid](std::vector<double> &group) {
        for (auto &v : group) {
            v = uniform_angle(rng_mid);
        }
    };
    const auto normals = [&](std::vector<double> &group) {
        for (auto &v : group) {
            v = small(rng_mid);
        }
    };
    angles(p.int1_theta);
    angles(p.int1_phi);
    angles(p.int1_rotation);
    normals(p.squeeze_r);
    angles(p.int2_theta);
    angles(p.int2_phi);
    angles(p.int2_rotation);
    normals(p.displacement_r);
    angles(p.displacement_phi);
    normals(p.kerr_kappa);
    const auto flat = p.to_vector();
    HybridRegressor model{
        DenseLayer::glorot(n_features, m, rng_in),
        PhotonicLayer(config, Eigen::Map<const Eigen::VectorXd>(
                                  flat.data(), static_cast<Eigen::Index>(flat.size()))),
        DenseLayer::glorot(m, 1, rng_out)};
    model.validate();
    return model;
}

double forward(const HybridRegressor &model, const Eigen::VectorXd &x) {
    if (static_cast<std::size_t>(x.size()) != model.input_width()) {
        throw ContractError("model expects " + std::to_string(model.input_width()) +
                            " features, got " + std::to_string(x.size()));
    }
    const Eigen::VectorXd h = model.clayer_in.forward(x);
    const Eigen::VectorXd z = middle_forward(model.qlayer, h);
    return model.clayer_out.forward(z)[0];
}

double mse_loss(const Eigen::VectorXd &predictions, const Eigen::VectorXd &targets) {
    require(predictions.size() >= 1, "MSE of an empty set");
    require(predictions.size() == targets.size(), "MSE of vectors with different lengths");
    return (predictions - targets).squaredNorm() / static_cast<double>(predictions.size());
}

Eigen::VectorXd sgd_step(const Eigen::VectorXd &params, const Eigen::VectorXd &grads,
                         double learning_rate) {
    require(params.size() == grads.size(), "SGD step: " + std::to_string(params.size()) +
                                               " parameters but " +
                                               std::to_string(grads.size()) + " gradients");
    return params - learning_rate * grads;
}

void TrainConfig::validate() const {
    require(epochs >= 1, "epochs must be positive");
    require(batch_size >= 1, "batch size must be positive");
    require(std::isfinite(learning_rate) && learning_rate >= 0.0,
            "learning rate must be finite and non-negative");
    require(!shots || *shots >= 1, "shots must be positive");
}

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd &m, std::span<const std::size_t> rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd &v, std::span<const std::size_t> rows) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = v[static_cast<Eigen::Index>(rows[i])];
    }
    return out;
}

} // namespace

TrainReport fit(HybridRegressor &model, const Eigen::MatrixXd &train_x,
                const Eigen::VectorXd &train_y, const Eigen::MatrixXd &val_x,
                const Eigen::VectorXd &val_y, const TrainConfig &config) {
    config.validate();
    model.validate();
    require(train_x.rows() >= 1 && val_x.rows() >= 1, "training and validation sets must be non-empty");
    require(train_x.rows() == train_y.size() && val_x.rows() == val_y.size(),
            "feature and target row counts differ");
    require(static_cast<std::size_t>(train_x.cols()) == model.input_width() &&
                static_cast<std::size_t>(val_x.cols()) == model.input_width(),
            "data width does not match the model input width");

    const auto start = std::chrono::steady_clock::now();
    TrainReport report;
    report.initial_train_loss = mse_loss(predict(model, train_x), train_y);

    const auto n = static_cast<std::size_t>(train_x.rows());
    std::vector<std::size_t> order(n);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto rng = make_stream(config.seed, 1000 + epoch);
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t batch_index = 0;
        for (std::size_t first = 0; first < n; first += config.batch_size, ++batch_index) {
            const std::size_t last = std::min(n, first + config.batch_size);
            const std::span<const std::size_t> rows(order.data() + first, last - first);
            const Eigen::MatrixXd bx = gather_rows(train_x, rows);
            const Eigen::VectorXd by = gather(train_y, rows);
            const Eigen::VectorXd grad = hybrid_loss_gradient(model, bx, by);
            if (!grad.allFinite()) {
                throw NumericError("non-finite gradient at epoch " + std::to_string(epoch + 1) +
                                   ", batch " + std::to_string(batch_index + 1));
            }
            model.set_parameters(sgd_step(model.parameters(), grad, config.learning_rate));
        }
        const double train_loss = mse_loss(predict(model, train_x), train_y);
        const double val_loss = mse_loss(predict(model, val_x), val_y);
        if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
            throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1) +
                               ", batch " + std::to_string(batch_index));
        }
        report.train_loss.push_back(train_loss);
        report.val_loss.push_back(val_loss);
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.final_parameters = model.parameters();
    return report;
}

Eigen::VectorXd predict(const HybridRegressor &model, const Eigen::MatrixXd &inputs,
                        const PredictOptions &options) {
    model.validate();
    require(static_cast<std::size_t>(inputs.cols()) == model.input_width(),
            "data has " + std::to_string(inputs.cols()) + " features, model expects " +
                std::to_string(model.input_width()));
    Eigen::VectorXd out(inputs.rows());
    const auto *quantum = std::get_if<QuantumLayer>(&model.qlayer);
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
        const Eigen::VectorXd x = inputs.row(i).transpose();
        if (options.shots && quantum != nullptr) {
            const Eigen::VectorXd h = model.clayer_in.forward(x);
            const Eigen::VectorXd z = quantum->forward_sampled(
                h, *options.shots, make_stream(options.seed, static_cast<std::uint64_t>(i))());
            out[i] = model.clayer_out.forward(z)[0];
        } else {
            out[i] = forward(model, x);
        }
    }
    return out;
}

double pearson(const Eigen::VectorXd &a, const Eigen::VectorXd &b) {
    require(a.size() == b.size() && a.size() >= 2, "Pearson correlation needs two equal-length vectors");
    const Eigen::ArrayXd da = a.array() - a.mean();
    const Eigen::ArrayXd db = b.array() - b.mean();
    const double denom = std::sqrt((da * da).sum() * (db * db).sum());
    require(denom > 0.0, "Pearson correlation of a constant vector");
    return (da * db).sum() / denom;
}

} // namespace hqnn
