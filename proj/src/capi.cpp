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

#include "hqnn/hqnn.h"

#include "hqnn/ansatz.hpp"
#include "hqnn/circuit.hpp"
#include "hqnn/descriptors.hpp"
#include "hqnn/error.hpp"
#include "hqnn/experiment.hpp"
#include "hqnn/gradients.hpp"
#include "hqnn/statevector.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct hqnn_state {
    hqnn::StateVector sv;
};

struct hqnn_circuit {
    hqnn::CircuitProgram program;
};

namespace {

thread_local std::string g_last_error;

hqnn_status fail(hqnn_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

hqnn_status status_of(hqnn::ErrorCode code) {
    switch (code) {
    case hqnn::ErrorCode::Contract:
        return HQNN_ERR_CONTRACT;
    case hqnn::ErrorCode::Input:
        return HQNN_ERR_INPUT;
    case hqnn::ErrorCode::Numeric:
        return HQNN_ERR_NUMERIC;
    case hqnn::ErrorCode::Resource:
        return HQNN_ERR_RESOURCE;
    case hqnn::ErrorCode::Truncation:
        return HQNN_ERR_TRUNCATION;
    }
    return HQNN_ERR_INTERNAL;
}

template <class F> hqnn_status guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return HQNN_OK;
    } catch (const hqnn::Error &e) {
        return fail(status_of(e.code()), e.what());
    } catch (const nlohmann::json::exception &e) {
        return fail(HQNN_ERR_INPUT, std::string("invalid JSON: ") + e.what());
    } catch (const std::bad_alloc &) {
        return fail(HQNN_ERR_RESOURCE, "out of memory");
    } catch (const std::exception &e) {
        return fail(HQNN_ERR_INTERNAL, e.what());
    }
}

void need(const void *ptr, const char *what) {
    if (ptr == nullptr) {
        throw hqnn::ContractError(std::string(what) + " is null");
    }
}

hqnn::GateKind parse_gate(const char *name) {
    need(name, "gate name");
    using hqnn::GateKind;
    for (const auto kind : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::Rot, GateKind::H,
                            GateKind::CNOT, GateKind::CZ}) {
        if (hqnn::gate_name(kind) == name) {
            return kind;
        }
    }
    throw hqnn::ContractError(std::string("unknown gate '") + name + "'");
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hqnn::ExperimentConfig parse_config(const char *config_json) {
    need(config_json, "config JSON");
    return hqnn::ExperimentConfig::from_json(nlohmann::json::parse(config_json));
}

template <class F> hqnn_status json_command(char **result_json, F &&body) {
    return guarded([&] {
        need(result_json, "result pointer");
        *result_json = nullptr;
        *result_json = copy_string(body().dump());
    });
}

} // namespace

extern "C" {

const char *hqnn_version(void) { return "1.0.0"; }

const char *hqnn_last_error(void) { return g_last_error.c_str(); }

void hqnn_string_free(char *str) { std::free(str); }

hqnn_status hqnn_state_create(size_t n_qubits, hqnn_state **out) {
    return guarded([&] {
        need(out, "output handle");
        *out = new hqnn_state{hqnn::StateVector::zero(n_qubits)};
    });
}

void hqnn_state_destroy(hqnn_state *state) { delete state; }

hqnn_status hqnn_state_num_qubits(const hqnn_state *state, size_t *out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        *out = state->sv.num_qubits();
    });
}

hqnn_status hqnn_state_amplitudes(const hqnn_state *state, double *out, size_t len) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        const auto amps = state->sv.amplitudes();
        if (len < 2 * amps.size()) {
            throw hqnn::ContractError("amplitude buffer holds " + std::to_string(len) +
                                      " doubles, need " + std::to_string(2 * amps.size()));
        }
        for (std::size_t i = 0; i < amps.size(); ++i) {
            out[2 * i] = amps[i].real();
            out[2 * i + 1] = amps[i].imag();
        }
    });
}

hqnn_status hqnn_state_apply_gate(hqnn_state *state, const char *gate, const size_t *wires,
                                  size_t n_wires, const double *angles, size_t n_angles) {
    return guarded([&] {
        need(state, "state");
        if (n_wires > 0) {
            need(wires, "wires");
        }
        if (n_angles > 0) {
            need(angles, "angles");
        }
        hqnn::GateInstruction g{parse_gate(gate), {wires, wires + n_wires}, {}};
        for (std::size_t i = 0; i < n_angles; ++i) {
            g.params.emplace_back(angles[i]);
        }
        hqnn::apply_gate(state->sv, g);
    });
}

hqnn_status hqnn_state_expectation_z(const hqnn_state *state, size_t wire, double *out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        *out = hqnn::expectation_z(state->sv, wire);
    });
}

hqnn_status hqnn_state_meyer_wallach(const hqnn_state *state, double *out) {
    return guarded([&] {
        need(state, "state");
        need(out, "output");
        *out = hqnn::meyer_wallach_q(state->sv);
    });
}

hqnn_status hqnn_circuit_create(size_t n_qubits, hqnn_circuit **out) {
    return guarded([&] {
        need(out, "output handle");
        if (n_qubits == 0 || n_qubits > hqnn::kDefaultMaxQubits) {
            throw hqnn::ResourceError("circuit width " + std::to_string(n_qubits) +
                                      " outside [1, " + std::to_string(hqnn::kDefaultMaxQubits) +
                                      "]");
        }
        *out = new hqnn_circuit{hqnn::CircuitProgram(n_qubits)};
    });
}

hqnn_status hqnn_circuit_strongly_entangling(size_t n_wires, size_t n_layers,
                                             const char *entangler, hqnn_circuit **out) {
    return guarded([&] {
        need(out, "output handle");
        need(entangler, "entangler");
        const std::string name = entangler;
        hqnn::Entangler kind = hqnn::Entangler::CNOT;
        if (name == "cz") {
            kind = hqnn::Entangler::CZ;
        } else if (name == "none") {
            kind = hqnn::Entangler::None;
        } else if (name != "cnot") {
            throw hqnn::ContractError("unknown entangler '" + name + "'");
        }
        if (n_wires > hqnn::kDefaultMaxQubits) {
            throw hqnn::ResourceError("ansatz width exceeds the qubit ceiling");
        }
        *out = new hqnn_circuit{hqnn::strongly_entangling_layers({n_wires, n_layers, kind})};
    });
}

void hqnn_circuit_destroy(hqnn_circuit *circuit) { delete circuit; }

hqnn_status hqnn_circuit_add_gate(hqnn_circuit *circuit, const char *gate, const size_t *wires,
                                  size_t n_wires, const size_t *slots, size_t n_slots) {
    return guarded([&] {
        need(circuit, "circuit");
        if (n_wires > 0) {
            need(wires, "wires");
        }
        if (n_slots > 0) {
            need(slots, "slots");
        }
        std::vector<hqnn::Param> params;
        for (std::size_t i = 0; i < n_slots; ++i) {
            params.emplace_back(hqnn::Slot{slots[i]});
        }
        circuit->program.add(parse_gate(gate), {wires, wires + n_wires}, std::move(params));
    });
}

hqnn_status hqnn_circuit_num_params(const hqnn_circuit *circuit, size_t *out) {
    return guarded([&] {
        need(circuit, "circuit");
        need(out, "output");
        *out = circuit->program.num_params();
    });
}

hqnn_status hqnn_circuit_run(const hqnn_circuit *circuit, const double *params, size_t n_params,
                             hqnn_state **out) {
    return guarded([&] {
        need(circuit, "circuit");
        need(out, "output handle");
        if (n_params > 0) {
            need(params, "params");
        }
        *out = new hqnn_state{circuit->program.run({params, n_params})};
    });
}

hqnn_status hqnn_circuit_jacobian(const hqnn_circuit *circuit, const double *params,
                                  size_t n_params, double *out, size_t len) {
    return guarded([&] {
        need(circuit, "circuit");
        need(out, "output");
        if (n_params > 0) {
            need(params, "params");
        }
        const auto &p = circuit->program;
        if (len < p.num_qubits() * p.num_params()) {
            throw hqnn::ContractError("Jacobian buffer too small");
        }
        const Eigen::MatrixXd jac = hqnn::param_shift(
            p, {params, n_params}, hqnn::ObservableSpec::all_wires(p.num_qubits()));
        for (Eigen::Index r = 0; r < jac.rows(); ++r) {
            for (Eigen::Index c = 0; c < jac.cols(); ++c) {
                out[static_cast<std::size_t>(r * jac.cols() + c)] = jac(r, c);
            }
        }
    });
}

hqnn_status hqnn_circuit_expressibility(const hqnn_circuit *circuit, size_t samples, size_t bins,
                                        uint64_t seed, double *out) {
    return guarded([&] {
        need(circuit, "circuit");
        need(out, "output");
        *out = hqnn::expressibility(circuit->program, {samples, bins, seed});
    });
}

hqnn_status hqnn_circuit_entangling_capability(const hqnn_circuit *circuit, size_t samples,
                                               uint64_t seed, double *out) {
    return guarded([&] {
        need(circuit, "circuit");
        need(out, "output");
        *out = hqnn::entangling_capability(circuit->program, samples, seed);
    });
}

hqnn_status hqnn_config_load(const char *path, char **config_json) {
    return json_command(config_json, [&] {
        need(path, "path");
        return hqnn::load_experiment_config(path).to_json();
    });
}

hqnn_status hqnn_data_prepare(const char *config_json, char **result_json) {
    return json_command(result_json,
                        [&] { return hqnn::run_data_prepare(parse_config(config_json)); });
}

hqnn_status hqnn_train(const char *config_json, char **result_json) {
    return json_command(result_json, [&] { return hqnn::run_train(parse_config(config_json)); });
}

hqnn_status hqnn_predict(const char *manifest_path, const char *input_csv, const char *output_dir,
                         size_t shots, char **result_json) {
    return json_command(result_json, [&] {
        need(manifest_path, "manifest path");
        need(input_csv, "input path");
        std::optional<std::size_t> s;
        if (shots > 0) {
            s = shots;
        }
        return hqnn::run_predict(manifest_path, input_csv, output_dir ? output_dir : ".", s);
    });
}

hqnn_status hqnn_descriptors(const char *config_json, char **result_json) {
    return json_command(result_json,
                        [&] { return hqnn::run_descriptors(parse_config(config_json)); });
}

} // extern "C"
