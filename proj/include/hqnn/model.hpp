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
 * Classical-in / middle / classical-out regression model and its SGD loop.
 */
#pragma once

#include "hqnn/ansatz.hpp"
#include "hqnn/encodings.hpp"
#include "hqnn/fock.hpp"
#include "hqnn/gradients.hpp"
#include "hqnn/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace hqnn {

enum class Activation { Linear, ReLU };

struct DenseLayer {
    Eigen::MatrixXd weights; ///< out x in
    Eigen::VectorXd bias;
    Activation activation = Activation::Linear;

    static DenseLayer zeros(std::size_t in, std::size_t out);
    /// Weights uniform on +-sqrt(6 / (in + out)), zero bias.
    static DenseLayer glorot(std::size_t in, std::size_t out, Rng &rng);

    [[nodiscard]] std::size_t in_width() const { return weights.cols(); }
    [[nodiscard]] std::size_t out_width() const { return weights.rows(); }
    [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd &x) const;
};

enum class GradientMethod { ParameterShift, FiniteDifference };

struct QuantumLayerConfig {
    std::size_t n_wires = 9;
    EncodingSpec encoding{EncodingScheme::Angle, RotationAxis::Y, 9};
    AnsatzSpec ansatz{9, 1, Entangler::CNOT};
    ObservableSpec measured_wires = ObservableSpec::all_wires(9);
    GradientMethod gradient = GradientMethod::ParameterShift;
    FiniteDiffConfig finite_diff{};

    /// Consistent config on `n_wires` wires measuring all of them.
    static QuantumLayerConfig for_wires(std::size_t n_wires, std::size_t n_layers = 1);
    void validate() const;
};

/// Angle encoding + ansatz + per-wire <Z> on the statevector simulator.
class QuantumLayer {
  public:
    QuantumLayer(QuantumLayerConfig config, Eigen::VectorXd weights);

    [[nodiscard]] const QuantumLayerConfig &config() const { return config_; }
    [[nodiscard]] const Eigen::VectorXd &weights() const { return weights_; }
    Eigen::VectorXd &weights() { return weights_; }
    [[nodiscard]] std::size_t in_width() const { return config_.n_wires; }
    [[nodiscard]] std::size_t out_width() const {
        return config_.measured_wires.wires.size();
    }

    [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd &h) const;
    /// Shot-sampled outputs; the stream for wire k is derived from (seed, k).
    [[nodiscard]] Eigen::VectorXd forward_sampled(const Eigen::VectorXd &h,
                                                  std::size_t shots,
                                                  std::uint64_t seed) const;
    [[nodiscard]] QuantumJacobian jacobian(const Eigen::VectorXd &h) const;

  private:
    QuantumLayerConfig config_;
    Eigen::VectorXd weights_;
    CircuitProgram ansatz_;
    CircuitProgram program_;
};

struct PhotonicLayerConfig {
    std::size_t n_modes = 3;
    /// The model records leakage instead of aborting on it (tolerance 1).
    FockOptions fock{8, 100000, 1.0};
    FiniteDiffConfig finite_diff{1e-6, DiffScheme::Central};
};

/// Displacement embedding + one CV layer + per-mode <x> on the Fock backend.
class PhotonicLayer {
  public:
    PhotonicLayer(PhotonicLayerConfig config, Eigen::VectorXd params);

    [[nodiscard]] const PhotonicLayerConfig &config() const { return config_; }
    [[nodiscard]] const Eigen::VectorXd &params() const { return params_; }
    Eigen::VectorXd &params() { return params_; }
    [[nodiscard]] std::size_t in_width() const { return config_.n_modes; }
    [[nodiscard]] std::size_t out_width() const { return config_.n_modes; }

    [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd &h) const;
    /// Central finite differences over inputs and layer parameters.
    [[nodiscard]] QuantumJacobian jacobian(const Eigen::VectorXd &h) const;
    /// Norm deficit of the output state for input `h`.
    [[nodiscard]] double leakage(const Eigen::VectorXd &h) const;

  private:
    [[nodiscard]] Eigen::VectorXd evaluate(std::span<const double> inputs,
                                           std::span<const double> params) const;

    PhotonicLayerConfig config_;
    Eigen::VectorXd params_;
};

/// Pass-through middle layer used as a test rig.
struct IdentityLayer {
    std::size_t width = 1;
};

using MiddleLayer = std::variant<QuantumLayer, DenseLayer, PhotonicLayer, IdentityLayer>;

enum class ModelVariant { Hybrid, ClassicalOnly, Photonic, Identity };

/// [clayer_in, qlayer, clayer_out]; the middle layer decides the variant.
struct HybridRegressor {
    DenseLayer clayer_in;
    MiddleLayer qlayer;
    DenseLayer clayer_out;

    [[nodiscard]] ModelVariant variant() const;
    [[nodiscard]] std::size_t input_width() const { return clayer_in.in_width(); }
    [[nodiscard]] std::size_t num_parameters() const;
    /// Input layer (W row-major, b), middle layer, output layer (W, b).
    [[nodiscard]] Eigen::VectorXd parameters() const;
    void set_parameters(const Eigen::VectorXd &values);
    void validate() const;
};

/// Vector-Jacobian product of a middle layer at input `h`.
struct MiddleVjp {
    Eigen::VectorXd d_input;
    Eigen::VectorXd d_params;
};

[[nodiscard]] std::size_t middle_param_count(const MiddleLayer &layer);
[[nodiscard]] std::size_t middle_in_width(const MiddleLayer &layer);
[[nodiscard]] std::size_t middle_out_width(const MiddleLayer &layer);
[[nodiscard]] Eigen::VectorXd middle_forward(const MiddleLayer &layer,
                                             const Eigen::VectorXd &h);
[[nodiscard]] MiddleVjp middle_vjp(const MiddleLayer &layer, const Eigen::VectorXd &h,
                                   const Eigen::VectorXd &upstream);

[[nodiscard]] HybridRegressor make_hybrid_regressor(std::size_t n_features,
                                                    const QuantumLayerConfig &config,
                                                    std::uint64_t seed);
/// Middle layer is Dense(hidden -> hidden), linear.
[[nodiscard]] HybridRegressor make_classical_regressor(std::size_t n_features,
                                                       std::size_t hidden,
                                                       std::uint64_t seed);
[[nodiscard]] HybridRegressor make_photonic_regressor(std::size_t n_features,
                                                      const PhotonicLayerConfig &config,
                                                      std::uint64_t seed);

/// Scalar prediction for one sample.
[[nodiscard]] double forward(const HybridRegressor &model, const Eigen::VectorXd &x);

/// (1/N) sum (p_i - t_i)^2.
[[nodiscard]] double mse_loss(const Eigen::VectorXd &predictions,
                              const Eigen::VectorXd &targets);

/// params - learning_rate * grads.
[[nodiscard]] Eigen::VectorXd sgd_step(const Eigen::VectorXd &params,
                                       const Eigen::VectorXd &grads,
                                       double learning_rate);

struct TrainConfig {
    std::size_t epochs = 25;
    double learning_rate = 0.08;
    std::size_t batch_size = 5;
    std::uint64_t seed = 0;
    std::optional<std::size_t> shots; ///< evaluation only

    void validate() const;
};

struct TrainReport {
    double initial_train_loss = 0.0;
    std::vector<double> train_loss; ///< full-pass MSE after each epoch
    std::vector<double> val_loss;
    double wall_seconds = 0.0;
    Eigen::VectorXd final_parameters;
};

/**
 * @brief Mini-batch SGD on the batch-mean squared error.
 *
 * Every epoch visits the training rows in a fresh permutation drawn from
 * stream (seed, 1000 + epoch). Throws NumericError naming epoch and batch when a
 * loss or gradient turns non-finite.
 */
TrainReport fit(HybridRegressor &model, const Eigen::MatrixXd &train_x,
                const Eigen::VectorXd &train_y, const Eigen::MatrixXd &val_x,
                const Eigen::VectorXd &val_y, const TrainConfig &config);

struct PredictOptions {
    std::optional<std::size_t> shots;
    std::uint64_t seed = 0;
};

/// One prediction per row of `inputs`.
[[nodiscard]] Eigen::VectorXd predict(const HybridRegressor &model,
                                      const Eigen::MatrixXd &inputs,
                                      const PredictOptions &options = {});

/// Pearson correlation of two equal-length vectors.
[[nodiscard]] double pearson(const Eigen::VectorXd &a, const Eigen::VectorXd &b);

} // namespace hqnn
