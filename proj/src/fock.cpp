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

#include "hqnn/fock.hpp"

#include "hqnn/error.hpp"


#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace hqnn {

std::size_t fock_elements(std::size_t n_modes, std::size_t cutoff) {
    std::size_t total = 1;
    for (std::size_t m = 0; m < n_modes; ++m) {
        if (total > std::numeric_limits<std::size_t>::max() / cutoff) {
            return std::numeric_limits<std::size_t>::max();
        }
        total *= cutoff;
    }
    return total;
}

FockState FockState::vacuum(std::size_t n_modes, const FockOptions &options) {
    require(n_modes >= 1, "a Fock state needs at least one mode");
    require(options.cutoff >= 2, "Fock cutoff must be at least 2");
    const std::size_t elements = fock_elements(n_modes, options.cutoff);
    if (elements > options.max_elements) {
        std::ostringstream msg;
        msg << "Fock tensor needs D^M = " << options.cutoff << "^" << n_modes
            << " = " << elements << " elements, budget is "
            << options.max_elements;
        throw ResourceError(msg.str());
    }
    std::vector<complex_t> amps(elements);
    amps[0] = 1.0;
    return {n_modes, options, std::move(amps)};
}

FockState FockState::number_state(std::span<const std::size_t> occupations,
                                  const FockOptions &options) {
    auto state = vacuum(occupations.size(), options);
    state.amps_[0] = 0.0;
    std::size_t index = 0;
    for (const auto n : occupations) {
        require(n < options.cutoff, "occupation above the cutoff");
        index = index * options.cutoff + n;
    }
    state.amps_[index] = 1.0;
    return state;
}

complex_t FockState::amplitude(std::span<const std::size_t> occupations) const {
    require(occupations.size() == n_modes_, "occupation list has wrong length");
    std::size_t index = 0;
    for (const auto n : occupations) {
        require(n < cutoff(), "occupation above the cutoff");
        index = index * cutoff() + n;
    }
    return amps_[index];
}

double FockState::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

std::size_t FockState::mode_stride(std::size_t mode) const {
    if (mode >= n_modes_) {
        throw ContractError("mode " + std::to_string(mode) +
                            " out of range for " + std::to_string(n_modes_) +
                            " modes");
    }
    std::size_t stride = 1;
    for (std::size_t m = mode + 1; m < n_modes_; ++m) {
        stride *= cutoff();
    }
    return stride;
}

void FockState::check_leakage(std::string_view gate, std::size_t mode) const {
    const double deficit = norm_deficit();
    if (deficit > options_.leakage_tolerance) {
        std::ostringstream msg;
        msg << gate << " on mode " << mode << " pushed the norm deficit to "
            << deficit << " (tolerance " << options_.leakage_tolerance
            << "); increase the cutoff above " << cutoff();
        throw TruncationError(msg.str());
    }
}

void FockState::apply_single_mode(std::size_t mode, const Eigen::MatrixXcd &u,
                                  std::string_view gate) {
    const std::size_t d = cutoff();
    require(static_cast<std::size_t>(u.rows()) == d &&
                static_cast<std::size_t>(u.cols()) == d,
            "single-mode operator has wrong shape");
    const std::size_t stride = mode_stride(mode);
    const std::size_t block = stride * d;
    Eigen::VectorXcd in(d);
    Eigen::VectorXcd out(d);
    for (std::size_t base = 0; base < amps_.size(); base += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t first = base + inner;
            for (std::size_t n = 0; n < d; ++n) {
                in[n] = amps_[first + n * stride];
            }
            out.noalias() = u * in;
            for (std::size_t n = 0; n < d; ++n) {
                amps_[first + n * stride] = out[n];
            }
        }
    }
    check_leakage(gate, mode);
}

void FockState::apply_two_mode(std::size_t mode_a, std::size_t mode_b,
                               const Eigen::MatrixXcd &u, std::string_view gate) {
    const Eigen::SparseMatrix<complex_t, Eigen::RowMajor> sparse = u.sparseView();
    apply_two_mode(mode_a, mode_b, sparse, gate);
}

void FockState::apply_two_mode(std::size_t mode_a, std::size_t mode_b,
                               const Eigen::SparseMatrix<complex_t, Eigen::RowMajor> &u,
                               std::string_view gate) {
    require(mode_a != mode_b, "two-mode gate needs distinct modes");
    const std::size_t d = cutoff();
    require(static_cast<std::size_t>(u.rows()) == d * d &&
                static_cast<std::size_t>(u.cols()) == d * d,
            "two-mode operator has wrong shape");
    const std::size_t sa = mode_stride(mode_a);
    const std::size_t sb = mode_stride(mode_b);
    Eigen::VectorXcd in(d * d);
    Eigen::VectorXcd out(d * d);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i / sa) % d != 0 || (i / sb) % d != 0) {
            continue;
        }
        for (std::size_t na = 0; na < d; ++na) {
            for (std::size_t nb = 0; nb < d; ++nb) {
                in[na * d + nb] = amps_[i + na * sa + nb * sb];
            }
        }
        out.noalias() = u * in;
        for (std::size_t na = 0; na < d; ++na) {
            for (std::size_t nb = 0; nb < d; ++nb) {
                amps_[i + na * sa + nb * sb] = out[na * d + nb];
            }
        }
    }
    check_leakage(gate, mode_a);
}

void FockState::apply_diagonal(std::size_t mode, std::span<const complex_t> phases) {
    const std::size_t d = cutoff();
    require(phases.size() == d, "diagonal operator has wrong length");
    const std::size_t stride = mode_stride(mode);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= phases[(i / stride) % d];
    }
}

Eigen::MatrixXcd displacement_matrix(std::size_t cutoff, double r, double phi) {
    const std::size_t d = cutoff;
    const complex_t alpha = std::polar(r, phi);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(0, 0) = std::exp(-0.5 * r * r);
    for (std::size_t row = 1; row < d; ++row) {
        m(row, 0) = alpha / std::sqrt(static_cast<double>(row)) * m(row - 1, 0);
    }
    // D a^dag = (a^dag - conj(alpha)) D
    for (std::size_t col = 1; col < d; ++col) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(col));
        for (std::size_t row = 0; row < d; ++row) {
            complex_t v = -std::conj(alpha) * m(row, col - 1);
            if (row > 0) {
                v += std::sqrt(static_cast<double>(row)) * m(row - 1, col - 1);
            }
            m(row, col) = v * inv;
        }
    }
    return m;
}

Eigen::MatrixXcd squeeze_matrix(std::size_t cutoff, double r) {
    const std::size_t d = cutoff;
    const std::size_t rows = 2 * d;
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    const double th = std::tanh(r);
    Eigen::MatrixXd work = Eigen::MatrixXd::Zero(rows, d);
    work(0, 0) = 1.0 / std::sqrt(ch);
    for (std::size_t m = 2; m < rows; m += 2) {
        work(m, 0) = -th * std::sqrt(static_cast<double>(m - 1) / static_cast<double>(m)) *
                     work(m - 2, 0);
    }
    // S a^dag = (cosh r a^dag + sinh r a) S
    for (std::size_t col = 1; col < d; ++col) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(col));
        const std::size_t limit = rows - col;
        for (std::size_t m = 0; m < limit; ++m) {
            double v = sh * std::sqrt(static_cast<double>(m + 1)) * work(m + 1, col - 1);
            if (m > 0) {
                v += ch * std::sqrt(static_cast<double>(m)) * work(m - 1, col - 1);
            }
            work(m, col) = v * inv;
        }
    }
    return work.topRows(d).cast<complex_t>();
}

Eigen::MatrixXcd beamsplitter_matrix(std::size_t cutoff, double theta, double phi) {
    const std::size_t d = cutoff;
    // Column (n_a, n_b) is (A^dag)^n_a (B^dag)^n_b |0,0> / sqrt(n_a! n_b!) with
    // A^dag = cos(t) a^dag - e^{-i phi} sin(t) b^dag and
    // B^dag = cos(t) b^dag + e^{i phi} sin(t) a^dag. Photon number is conserved,
    // so a (2d)^2 work space holds every column exactly.
    const std::size_t w = 2 * d;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const complex_t a_from_b = -std::polar(s, -phi);
    const complex_t b_from_a = std::polar(s, phi);
    const auto raise = [&](const Eigen::VectorXcd &in, complex_t ca, complex_t cb, double norm) {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(w * w));
        for (std::size_t na = 0; na + 1 < w; ++na) {
            for (std::size_t nb = 0; nb + 1 < w; ++nb) {
                const complex_t v = in[static_cast<Eigen::Index>(na * w + nb)];
                if (v == 0.0) {
                    continue;
                }
                out[static_cast<Eigen::Index>((na + 1) * w + nb)] +=
                    ca * std::sqrt(static_cast<double>(na + 1)) * v * norm;
                out[static_cast<Eigen::Index>(na * w + nb + 1)] +=
                    cb * std::sqrt(static_cast<double>(nb + 1)) * v * norm;
            }
        }
        return out;
    };
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d * d, d * d);
    Eigen::VectorXcd row_start = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(w * w));
    row_start[0] = 1.0;
    for (std::size_t na = 0; na < d; ++na) {
        if (na > 0) {
            row_start = raise(row_start, c, a_from_b, 1.0 / std::sqrt(static_cast<double>(na)));
        }
        Eigen::VectorXcd col = row_start;
        for (std::size_t nb = 0; nb < d; ++nb) {
            if (nb > 0) {
                col = raise(col, b_from_a, c, 1.0 / std::sqrt(static_cast<double>(nb)));
            }
            for (std::size_t ma = 0; ma < d; ++ma) {
                for (std::size_t mb = 0; mb < d; ++mb) {
                    u(static_cast<Eigen::Index>(ma * d + mb), static_cast<Eigen::Index>(na * d + nb)) =
                        col[static_cast<Eigen::Index>(ma * w + mb)];
                }
            }
        }
    }
    return u;
}

namespace {

/// Recently built gate matrices. Finite-difference sweeps rebuild the same
/// handful of gates many times over.
template <class Matrix> class MatrixCache {
  public:
    template <class Build>
    const Matrix &get(int kind, std::size_t cutoff, double p0, double p1, Build &&build) {
        for (const auto &e : entries_) {
            if (e.valid && e.kind == kind && e.cutoff == cutoff && e.p0 == p0 && e.p1 == p1) {
                return e.matrix;
            }
        }
        auto &slot = entries_[next_];
        next_ = (next_ + 1) % entries_.size();
        slot = {true, kind, cutoff, p0, p1, build()};
        return slot.matrix;
    }

  private:
    struct Entry {
        bool valid = false;
        int kind = 0;
        std::size_t cutoff = 0;
        double p0 = 0.0;
        double p1 = 0.0;
        Matrix matrix;
    };
    std::array<Entry, 48> entries_{};
    std::size_t next_ = 0;
};

using SparseGate = Eigen::SparseMatrix<complex_t, Eigen::RowMajor>;

MatrixCache<Eigen::MatrixXcd> &dense_cache() {
    thread_local MatrixCache<Eigen::MatrixXcd> cache;
    return cache;
}

MatrixCache<SparseGate> &sparse_cache() {
    thread_local MatrixCache<SparseGate> cache;
    return cache;
}

} // namespace

void displacement(FockState &state, std::size_t mode, double r, double phi) {
    require(std::isfinite(r) && std::isfinite(phi), "displacement parameters must be finite");
    if (r == 0.0) {
        return;
    }
    state.apply_single_mode(mode, displacement_matrix(state.cutoff(), r, phi),
                            "displacement");
}

void squeeze(FockState &state, std::size_t mode, double r) {
    require(std::isfinite(r), "squeezing parameter must be finite");
    if (r == 0.0) {
        return;
    }
    const std::size_t d = state.cutoff();
    state.apply_single_mode(
        mode, dense_cache().get(1, d, r, 0.0, [&] { return squeeze_matrix(d, r); }), "squeeze");
}

void beamsplitter(FockState &state, std::size_t mode_a, std::size_t mode_b,
                  double theta, double phi) {
    require(std::isfinite(theta) && std::isfinite(phi),
            "beamsplitter parameters must be finite");
    if (theta == 0.0) {
        return;
    }
    const std::size_t d = state.cutoff();
    state.apply_two_mode(
        mode_a, mode_b,
        sparse_cache().get(2, d, theta, phi,
                          [&] { return SparseGate(beamsplitter_matrix(d, theta, phi).sparseView()); }),
        "beamsplitter");
}

void rotation(FockState &state, std::size_t mode, double phi) {
    std::vector<complex_t> phases(state.cutoff());
    for (std::size_t n = 0; n < phases.size(); ++n) {
        phases[n] = std::polar(1.0, phi * static_cast<double>(n));
    }
    state.apply_diagonal(mode, phases);
}

void kerr(FockState &state, std::size_t mode, double kappa) {
    std::vector<complex_t> phases(state.cutoff());
    for (std::size_t n = 0; n < phases.size(); ++n) {
        const double nd = static_cast<double>(n);
        phases[n] = std::polar(1.0, kappa * nd * nd);
    }
    state.apply_diagonal(mode, phases);
}

FockState displacement_embedding(std::span<const double> x, std::size_t n_modes,
                                 const FockOptions &options) {
    require(x.size() <= n_modes, "displacement embedding of " +
                                     std::to_string(x.size()) +
                                     " features needs at least as many modes, got " +
                                     std::to_string(n_modes));
    auto state = FockState::vacuum(n_modes, options);
    for (std::size_t i = 0; i < x.size(); ++i) {
        displacement(state, i, x[i], 0.0);
    }
    return state;
}

std::size_t CVLayerParams::count(std::size_t n_modes) {
    const std::size_t pairs = n_modes * (n_modes - 1) / 2;
    return 2 * (2 * pairs + n_modes) + 4 * n_modes;
}

CVLayerParams CVLayerParams::zeros(std::size_t n_modes) {
    require(n_modes >= 1, "a CV layer needs at least one mode");
    const std::size_t pairs = n_modes * (n_modes - 1) / 2;
    CVLayerParams p;
    p.int1_theta.assign(pairs, 0.0);
    p.int1_phi.assign(pairs, 0.0);
    p.int1_rotation.assign(n_modes, 0.0);
    p.squeeze_r.assign(n_modes, 0.0);
    p.int2_theta.assign(pairs, 0.0);
    p.int2_phi.assign(pairs, 0.0);
    p.int2_rotation.assign(n_modes, 0.0);
    p.displacement_r.assign(n_modes, 0.0);
    p.displacement_phi.assign(n_modes, 0.0);
    p.kerr_kappa.assign(n_modes, 0.0);
    return p;
}

namespace {

template <typename Fn> void for_each_group(CVLayerParams &p, Fn &&fn) {
    fn(p.int1_theta);
    fn(p.int1_phi);
    fn(p.int1_rotation);
    fn(p.squeeze_r);
    fn(p.int2_theta);
    fn(p.int2_phi);
    fn(p.int2_rotation);
    fn(p.displacement_r);
    fn(p.displacement_phi);
    fn(p.kerr_kappa);
}

} // namespace

CVLayerParams CVLayerParams::from_vector(std::span<const double> values,
                                         std::size_t n_modes) {
    require(values.size() == count(n_modes),
            "CV layer expects " + std::to_string(count(n_modes)) +
                " parameters, got " + std::to_string(values.size()));
    auto p = zeros(n_modes);
    std::size_t pos = 0;
    for_each_group(p, [&](std::vector<double> &group) {
        for (auto &v : group) {
            v = values[pos++];
        }
    });
    return p;
}

std::vector<double> CVLayerParams::to_vector() const {
    std::vector<double> out;
    auto copy = *this;
    for_each_group(copy, [&](std::vector<double> &group) {
        out.insert(out.end(), group.begin(), group.end());
    });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>>
interferometer_mesh(std::size_t n_modes) {
    std::vector<std::pair<std::size_t, std::size_t>> mesh;
    for (std::size_t k = 0; k + 1 < n_modes; ++k) {
        for (std::size_t j = n_modes - 1; j-- > k;) {
            mesh.emplace_back(j, j + 1);
        }
    }
    return mesh;
}

namespace {

void interferometer(FockState &state, std::span<const double> theta,
                    std::span<const double> phi, std::span<const double> rot) {
    const auto mesh = interferometer_mesh(state.num_modes());
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        beamsplitter(state, mesh[k].first, mesh[k].second, theta[k], phi[k]);
    }
    for (std::size_t m = 0; m < state.num_modes(); ++m) {
        rotation(state, m, rot[m]);
    }
}

} // namespace

void cv_layer(FockState &state, const CVLayerParams &params) {
    const std::size_t n = state.num_modes();
    require(params.num_modes() == n, "CV layer parameters are for " +
                                          std::to_string(params.num_modes()) +
                                          " modes, state has " + std::to_string(n));
    for (const double v : params.to_vector()) {
        require(std::isfinite(v), "CV layer parameters must be finite");
    }
    interferometer(state, params.int1_theta, params.int1_phi, params.int1_rotation);
    for (std::size_t m = 0; m < n; ++m) {
        squeeze(state, m, params.squeeze_r[m]);
    }
    interferometer(state, params.int2_theta, params.int2_phi, params.int2_rotation);
    for (std::size_t m = 0; m < n; ++m) {
        displacement(state, m, params.displacement_r[m], params.displacement_phi[m]);
    }
    for (std::size_t m = 0; m < n; ++m) {
        kerr(state, m, params.kerr_kappa[m]);
    }
}

namespace {

/// Sum over other modes of conj(psi[.., n-1, ..]) psi[.., n, ..] sqrt(n).
complex_t lowering_expectation(const FockState &state, std::size_t mode) {
    const std::size_t d = state.cutoff();
    const std::size_t stride = state.mode_stride(mode);
    const auto amps = state.amplitudes();
    complex_t acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::size_t n = (i / stride) % d;
        if (n > 0) {
            acc += std::conj(amps[i - stride]) * amps[i] *
                   std::sqrt(static_cast<double>(n));
        }
    }
    return acc;
}

} // namespace

double quadrature_x(const FockState &state, std::size_t mode) {
    return std::sqrt(2.0) * lowering_expectation(state, mode).real();
}

double mean_photon_number(const FockState &state, std::size_t mode) {
    const auto dist = photon_distribution(state, mode);
    double acc = 0.0;
    for (std::size_t n = 0; n < dist.size(); ++n) {
        acc += static_cast<double>(n) * dist[n];
    }
    return acc;
}

std::vector<double> photon_distribution(const FockState &state, std::size_t mode) {
    const std::size_t d = state.cutoff();
    const std::size_t stride = state.mode_stride(mode);
    std::vector<double> dist(d, 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        dist[(i / stride) % d] += std::norm(amps[i]);
    }
    return dist;
}

} // namespace hqnn
