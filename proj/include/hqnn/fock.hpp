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
 * Truncated Fock-space simulator for continuous-variable circuits.
 *
 * The tensor has shape D^M (cutoff D, M modes), mode 0 most significant.
 * Non-diagonal gates act through the D x D (or D^2 x D^2) block of the exact
 * infinite-dimensional operator, so probability that would land above the
 * cutoff is lost rather than renormalized. The lost mass is the state's
 * norm deficit and is checked against `FockOptions::leakage_tolerance`
 * after every non-diagonal gate.
 */
#pragma once

#include "hqnn/statevector.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hqnn {

struct FockOptions {
    std::size_t cutoff = 8;
    std::size_t max_elements = 100000;
    double leakage_tolerance = 1e-4;
};

/// D^M, saturating at SIZE_MAX.
[[nodiscard]] std::size_t fock_elements(std::size_t n_modes, std::size_t cutoff);

class FockState {
  public:
    /// |0...0>. Throws ResourceError when cutoff^n_modes exceeds the budget.
    static FockState vacuum(std::size_t n_modes, const FockOptions &options = {});

    /// Number state |n_0, ..., n_{M-1}>.
    static FockState number_state(std::span<const std::size_t> occupations,
                                  const FockOptions &options = {});

    [[nodiscard]] std::size_t num_modes() const noexcept { return n_modes_; }
    [[nodiscard]] std::size_t cutoff() const noexcept { return options_.cutoff; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] const FockOptions &options() const noexcept { return options_; }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] complex_t amplitude(std::span<const std::size_t> occupations) const;

    [[nodiscard]] double norm_squared() const noexcept;
    /// 1 - <psi|psi>: probability lost above the cutoff so far.
    [[nodiscard]] double norm_deficit() const noexcept { return 1.0 - norm_squared(); }

    /// u is D x D, acting on the photon number of `mode`.
    void apply_single_mode(std::size_t mode, const Eigen::MatrixXcd &u,
                           std::string_view gate);
    /// u is D^2 x D^2 over the joint index n_a * D + n_b.
    void apply_two_mode(std::size_t mode_a, std::size_t mode_b,
                        const Eigen::MatrixXcd &u, std::string_view gate);
    void apply_two_mode(std::size_t mode_a, std::size_t mode_b,
                        const Eigen::SparseMatrix<complex_t, Eigen::RowMajor> &u,
                        std::string_view gate);
    /// Multiplies amplitude components with n photons in `mode` by phases[n].
    void apply_diagonal(std::size_t mode, std::span<const complex_t> phases);

    [[nodiscard]] std::size_t mode_stride(std::size_t mode) const;

  private:
    FockState(std::size_t n_modes, FockOptions options, std::vector<complex_t> amps)
        : n_modes_(n_modes), options_(options), amps_(std::move(amps)) {}

    void check_leakage(std::string_view gate, std::size_t mode) const;

    std::size_t n_modes_;
    FockOptions options_;
    std::vector<complex_t> amps_;
};

/// <m|D(alpha)|n> for m, n < cutoff, alpha = r e^{i phi}.
[[nodiscard]] Eigen::MatrixXcd displacement_matrix(std::size_t cutoff, double r,
                                                   double phi);
/// <m|S(r)|n> for m, n < cutoff, S(r) = exp(r (a^2 - a^dag^2) / 2).
[[nodiscard]] Eigen::MatrixXcd squeeze_matrix(std::size_t cutoff, double r);
/// Two-mode block of exp(theta (e^{i phi} a^dag b - e^{-i phi} a b^dag)).
[[nodiscard]] Eigen::MatrixXcd beamsplitter_matrix(std::size_t cutoff,
                                                   double theta, double phi);

void displacement(FockState &state, std::size_t mode, double r, double phi);
void squeeze(FockState &state, std::size_t mode, double r);
void beamsplitter(FockState &state, std::size_t mode_a, std::size_t mode_b,
                  double theta, double phi);
/// e^{i phi n}.
void rotation(FockState &state, std::size_t mode, double phi);
/// e^{i kappa n^2}.
void kerr(FockState &state, std::size_t mode, double kappa);

/// Vacuum followed by displacement(r = x_i, phi = 0) on mode i.
[[nodiscard]] FockState displacement_embedding(std::span<const double> x,
                                               std::size_t n_modes,
                                               const FockOptions &options = {});

/**
 * @brief Parameters of one CV neural-network layer on M modes.
 *
 * Each interferometer is a triangular mesh of M(M-1)/2 beamsplitters
 * followed by one rotation per mode.
 */
struct CVLayerParams {
    std::vector<double> int1_theta, int1_phi, int1_rotation;
    std::vector<double> squeeze_r;
    std::vector<double> int2_theta, int2_phi, int2_rotation;
    std::vector<double> displacement_r, displacement_phi;
    std::vector<double> kerr_kappa;

    static CVLayerParams zeros(std::size_t n_modes);
    static std::size_t count(std::size_t n_modes);
    static CVLayerParams from_vector(std::span<const double> values,
                                     std::size_t n_modes);
    [[nodiscard]] std::vector<double> to_vector() const;
    [[nodiscard]] std::size_t num_modes() const { return squeeze_r.size(); }
};

/// Mode pairs of the triangular beamsplitter mesh, in application order.
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>>
interferometer_mesh(std::size_t n_modes);

/// Interferometer 1, squeezing, interferometer 2, displacement, Kerr.
void cv_layer(FockState &state, const CVLayerParams &params);

/// <(a + a^dag) / sqrt 2> on `mode`.
[[nodiscard]] double quadrature_x(const FockState &state, std::size_t mode);
[[nodiscard]] double mean_photon_number(const FockState &state, std::size_t mode);
/// Marginal P(n) on `mode` for n < cutoff.
[[nodiscard]] std::vector<double> photon_distribution(const FockState &state,
                                                      std::size_t mode);

} // namespace hqnn
