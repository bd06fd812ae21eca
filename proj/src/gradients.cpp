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

#include "hqnn/gradients.hpp"

#include "hqnn/error.hpp"
#include "hqnn/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hqnn {

void FiniteDiffConfig::validate() const {
    require(epsilon > 0.0 && epsilon < 1.0, "finite-difference epsilon must lie in (0, 1)");
}

namespace {

void check_finite(double value, std::size_t coordinate) {
    if (!std::isfinite(value)) {
        throw NumericError("non-finite function value while differentiating coordinate " +
                           std::to_string(coordinate));
    }
}

void check_finite(const Eigen::VectorXd &value, std::size_t coordinate) {
    if (!value.allFinite()) {
        throw NumericError("non-finite function value while differentiating coordinate " +
                           std::to_string(coordinate));
    }
}

} // namespace

std::vector<double> finite_diff_gradient(const ScalarFunction &f,
                                         std::span<const double> theta,
                                         const FiniteDiffConfig &cfg) {
    cfg.validate();
    std::vector<double> point(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    double base = 0.0;
    if (cfg.scheme == DiffScheme::Forward) {
        base = f(point);
        if (!std::isfinite(base)) {
            throw NumericError("non-finite function value at the base point");
        }
    }
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double original = point[i];
        point[i] = original + cfg.epsilon;
        const double plus = f(point);
        check_finite(plus, i);
        if (cfg.scheme == DiffScheme::Forward) {
            grad[i] = (plus - base) / cfg.epsilon;
        } else {
            point[i] = original - cfg.epsilon;
            const double minus = f(point);
            check_finite(minus, i);
            grad[i] = (plus - minus) / (2.0 * cfg.epsilon);
        }
        point[i] = original;
    }
    return grad;
}

Eigen::MatrixXd finite_diff_jacobian(const VectorFunction &f,
                                     std::span<const double> theta,
                                     const FiniteDiffConfig &cfg) {
    cfg.validate();
    std::vector<double> point(theta.begin(), theta.end());
    Eigen::VectorXd base;
    if (cfg.scheme == DiffScheme::Forward || point.empty()) {
        base = f(point);
        if (!base.allFinite()) {
            throw NumericError("non-finite function value at the base point");
        }
    }
    Eigen::MatrixXd jac;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double original = point[i];
        point[i] = original + cfg.epsilon;
        const Eigen::VectorXd plus = f(point);
        check_finite(plus, i);
        Eigen::VectorXd column;
        if (cfg.scheme == DiffScheme::Forward) {
            column = (plus - base) / cfg.epsilon;
        } else {
            point[i] = original - cfg.epsilon;
            const Eigen::VectorXd minus = f(point);
            check_finite(minus, i);
            column = (plus - minus) / (2.0 * cfg.epsilon);
        }
        point[i] = original;
        if (jac.size() == 0) {
            jac.setZero(column.size(), static_cast<Eigen::Index>(point.size()));
        }
        jac.col(static_cast<Eigen::Index>(i)) = column;
    }
    if (jac.size() == 0) {
        jac.setZero(base.size(), 0);
    }
    return jac;
}

namespace {

Eigen::VectorXd evaluate(const CircuitProgram &program, std::span<const double> params,
                         const ObservableSpec &observables) {
    const auto state = program.run(params);
    const auto values = expectations(state, observables);
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

void check_shift_rule_applies(const CircuitProgram &program) {
    std::vector<int> uses(program.num_params(), 0);
    for (const auto &gate : program.instructions()) {
        for (const auto &p : gate.params) {
            if (const auto *slot = std::get_if<Slot>(&p)) {
                if (!is_rotation(gate.kind)) {
                    throw ContractError("parameter-shift rule does not apply to " +
                                        std::string(gate_name(gate.kind)));
                }
                if (++uses[slot->index] > 1) {
                    throw ContractError("slot " + std::to_string(slot->index) +
                                        " feeds more than one angle; the shift rule "
                                        "needs one angle per slot");
                }
            }
        }
    }
}

} // namespace

Eigen::MatrixXd param_shift(const CircuitProgram &program, std::span<const double> params,
                            const ObservableSpec &observables, Eigen::VectorXd *values) {
    validate_observables(observables, program.num_qubits());
    check_shift_rule_applies(program);
    const auto n_out = static_cast<Eigen::Index>(observables.wires.size());
    const auto n_params = static_cast<Eigen::Index>(program.num_params());
    Eigen::MatrixXd jac(n_out, n_params);
    std::vector<double> shifted(params.begin(), params.end());
    constexpr double shift = std::numbers::pi / 2;
    for (Eigen::Index i = 0; i < n_params; ++i) {
        const double original = shifted[i];
        shifted[i] = original + shift;
        const Eigen::VectorXd plus = evaluate(program, shifted, observables);
        shifted[i] = original - shift;
        const Eigen::VectorXd minus = evaluate(program, shifted, observables);
        shifted[i] = original;
        jac.col(i) = 0.5 * (plus - minus);
    }
    if (values != nullptr) {
        *values = evaluate(program, params, observables);
    }
    return jac;
}

CircuitProgram encoded_circuit(const CircuitProgram &ansatz, std::size_t n_inputs,
                               const EncodingSpec &encoding) {
    require(encoding.n_wires == ansatz.num_qubits(),
            "encoding and ansatz act on different wire counts");
    auto program = angle_encoding_layer(encoding, n_inputs);
    program.append(ansatz, n_inputs);
    return program;
}

namespace {

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

QuantumJacobian split(const Eigen::VectorXd &values, const Eigen::MatrixXd &full,
                      std::size_t n_inputs) {
    const auto ni = static_cast<Eigen::Index>(n_inputs);
    return {values, full.rightCols(full.cols() - ni), full.leftCols(ni)};
}

} // namespace

QuantumJacobian param_shift_jacobian(const CircuitProgram &ansatz,
                                     std::span<const double> theta,
                                     std::span<const double> x,
                                     const EncodingSpec &encoding,
                                     const ObservableSpec &observables) {
    require(theta.size() == ansatz.num_params(), "ansatz expects " +
                                                     std::to_string(ansatz.num_params()) +
                                                     " parameters, got " +
                                                     std::to_string(theta.size()));
    const auto program = encoded_circuit(ansatz, x.size(), encoding);
    const auto all = concat(x, theta);
    Eigen::VectorXd values;
    const Eigen::MatrixXd full = param_shift(program, all, observables, &values);
    return split(values, full, x.size());
}

QuantumJacobian finite_diff_quantum_jacobian(const CircuitProgram &ansatz,
                                             std::span<const double> theta,
                                             std::span<const double> x,
                                             const EncodingSpec &encoding,
                                             const ObservableSpec &observables,
                                             const FiniteDiffConfig &cfg) {
    require(theta.size() == ansatz.num_params(), "ansatz parameter count mismatch");
    validate_observables(observables, ansatz.num_qubits());
    const auto program = encoded_circuit(ansatz, x.size(), encoding);
    const auto all = concat(x, theta);
    const auto f = [&](std::span<const double> p) { return evaluate(program, p, observables); };
    const Eigen::MatrixXd full = finite_diff_jacobian(f, all, cfg);
    return split(evaluate(program, all, observables), full, x.size());
}

namespace {

Eigen::VectorXd activation_derivative(const DenseLayer &layer, const Eigen::VectorXd &pre) {
    if (layer.activation == Activation::Linear) {
        return Eigen::VectorXd::Ones(pre.size());
    }
    return (pre.array() > 0.0).cast<double>().matrix();
}

void append_dense(Eigen::VectorXd &out, Eigen::Index &pos, const Eigen::MatrixXd &dw,
                  const Eigen::VectorXd &db) {
    for (Eigen::Index r = 0; r < dw.rows(); ++r) {
        for (Eigen::Index c = 0; c < dw.cols(); ++c) {
            out[pos++] = dw(r, c);
        }
    }
    for (Eigen::Index r = 0; r < db.size(); ++r) {
        out[pos++] = db[r];
    }
}

} // namespace

Eigen::VectorXd hybrid_loss_gradient(const HybridRegressor &model,
                                     const Eigen::MatrixXd &inputs,
                                     const Eigen::VectorXd &targets) {
    model.validate();
    require(inputs.rows() >= 1, "gradient of an empty batch");
    require(inputs.rows() == targets.size(), "batch inputs and targets differ in length");
    require(static_cast<std::size_t>(inputs.cols()) == model.input_width(),
            "batch has " + std::to_string(inputs.cols()) + " features, model expects " +
                std::to_string(model.input_width()));

    const auto &in = model.clayer_in;
    const auto &out = model.clayer_out;
    Eigen::MatrixXd d_in_w = Eigen::MatrixXd::Zero(in.weights.rows(), in.weights.cols());
    Eigen::VectorXd d_in_b = Eigen::VectorXd::Zero(in.bias.size());
    Eigen::VectorXd d_mid = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(middle_param_count(model.qlayer)));
    Eigen::MatrixXd d_out_w = Eigen::MatrixXd::Zero(out.weights.rows(), out.weights.cols());
    Eigen::VectorXd d_out_b = Eigen::VectorXd::Zero(out.bias.size());

    const double scale = 2.0 / static_cast<double>(inputs.rows());
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
        const Eigen::VectorXd x = inputs.row(i).transpose();
        const Eigen::VectorXd a = in.weights * x + in.bias;
        const Eigen::VectorXd h = in.activation == Activation::ReLU
                                      ? Eigen::VectorXd(a.cwiseMax(0.0))
                                      : a;
        const Eigen::VectorXd z = middle_forward(model.qlayer, h);
        const Eigen::VectorXd o = out.weights * z + out.bias;
        const Eigen::VectorXd y_hat =
            out.activation == Activation::ReLU ? Eigen::VectorXd(o.cwiseMax(0.0)) : o;

        const Eigen::VectorXd g =
            (scale * (y_hat.array() - targets[i])).matrix().cwiseProduct(
                activation_derivative(out, o));
        d_out_w += g * z.transpose();
        d_out_b += g;
        const Eigen::VectorXd dz = out.weights.transpose() * g;
        const MiddleVjp vjp = middle_vjp(model.qlayer, h, dz);
        d_mid += vjp.d_params;
        const Eigen::VectorXd da = vjp.d_input.cwiseProduct(activation_derivative(in, a));
        d_in_w += da * x.transpose();
        d_in_b += da;
    }

    Eigen::VectorXd grad(static_cast<Eigen::Index>(model.num_parameters()));
    Eigen::Index pos = 0;
    append_dense(grad, pos, d_in_w, d_in_b);
    grad.segment(pos, d_mid.size()) = d_mid;
    pos += d_mid.size();
    append_dense(grad, pos, d_out_w, d_out_b);
    return grad;
}

} // namespace hqnn
