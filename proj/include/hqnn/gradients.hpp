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
 * Derivatives of circuit outputs and of the hybrid regression loss.
 */
#pragma once

#include "hqnn/circuit.hpp"
#include "hqnn/encodings.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace hqnn {

struct HybridRegressor;

enum class DiffScheme { Forward, Central };

struct FiniteDiffConfig {
    double epsilon = 1e-6;
    DiffScheme scheme = DiffScheme::Forward;

    void validate() const;
};

using ScalarFunction = std::function<double(std::span<const double>)>;
using VectorFunction = std::function<Eigen::VectorXd(std::span<const double>)>;

/**
 * @brief Coordinate-wise finite-difference gradient of a scalar function.
 *
 * Forward: (f(t + e_i eps) - f(t)) / eps. Central: (f(t + e_i eps) -
 * f(t - e_i eps)) / (2 eps). Throws NumericError naming the coordinate if
 * any evaluation is non-finite.
 */
[[nodiscard]] std::vector<double> finite_diff_gradient(const ScalarFunction &f,
                                                       std::span<const double> theta,
                                                       const FiniteDiffConfig &cfg);

/// Jacobian (outputs x coordinates) of a vector function, same rules.
[[nodiscard]] Eigen::MatrixXd finite_diff_jacobian(const VectorFunction &f,
                                                   std::span<const double> theta,
                                                   const FiniteDiffConfig &cfg);

/**
 * @brief Output expectations and their derivatives for an encoded circuit.
 *
 * d_params is (n_outputs x n_params), d_inputs is (n_outputs x n_inputs).
 */
struct QuantumJacobian {
    Eigen::VectorXd values;
    Eigen::MatrixXd d_params;
    Eigen::MatrixXd d_inputs;
};

/**
 * @brief Parameter-shift Jacobian of per-wire <Z> over every slot of `program`.
 *
 * Each slot must feed exactly one rotation angle. `values`, when given,
 * receives the unshifted expectations.
 */
[[nodiscard]] Eigen::MatrixXd param_shift(const CircuitProgram &program,
                                          std::span<const double> params,
                                          const ObservableSpec &observables,
                                          Eigen::VectorXd *values = nullptr);

/// Angle-encodes `x`, runs `ansatz` with `theta` and differentiates both.
[[nodiscard]] QuantumJacobian param_shift_jacobian(const CircuitProgram &ansatz,
                                                   std::span<const double> theta,
                                                   std::span<const double> x,
                                                   const EncodingSpec &encoding,
                                                   const ObservableSpec &observables);

/// Finite-difference counterpart of param_shift_jacobian.
[[nodiscard]] QuantumJacobian finite_diff_quantum_jacobian(
    const CircuitProgram &ansatz, std::span<const double> theta,
    std::span<const double> x, const EncodingSpec &encoding,
    const ObservableSpec &observables, const FiniteDiffConfig &cfg);

/// Encoding layer (slots 0..n_inputs-1) followed by the shifted ansatz.
[[nodiscard]] CircuitProgram encoded_circuit(const CircuitProgram &ansatz,
                                             std::size_t n_inputs,
                                             const EncodingSpec &encoding);

/**
 * @brief Gradient of the batch-mean squared error of `model`.
 *
 * Rows of `inputs` are samples. The result follows the layout of
 * `model.parameters()`: input layer, middle layer, output layer.
 */
[[nodiscard]] Eigen::VectorXd hybrid_loss_gradient(const HybridRegressor &model,
                                                   const Eigen::MatrixXd &inputs,
                                                   const Eigen::VectorXd &targets);

} // namespace hqnn
