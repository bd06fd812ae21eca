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

// hqnn command-line tool: data prepare, train, predict, descriptors.

#include "hqnn/hqnn.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kNumeric = 3, kResource = 4 };

int exit_code(hqnn_status status) {
    switch (status) {
    case HQNN_OK:
        return kOk;
    case HQNN_ERR_CONTRACT:
    case HQNN_ERR_INPUT:
        return kInput;
    case HQNN_ERR_NUMERIC:
        return kNumeric;
    case HQNN_ERR_RESOURCE:
    case HQNN_ERR_TRUNCATION:
        return kResource;
    default:
        return kInternal;
    }
}

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> input;
    std::optional<std::string> output_dir;
    std::optional<std::size_t> pca_k;
    std::optional<double> split_fraction;
    std::optional<std::string> model;
    std::optional<std::size_t> epochs;
    std::optional<double> lr;
    std::optional<std::size_t> batch_size;
    std::optional<std::size_t> shots;
    std::optional<std::size_t> layers;
    std::optional<std::size_t> qubits;
    std::optional<std::string> encoding;
    std::optional<std::string> entangler;
    std::optional<std::string> backend;
    std::optional<std::string> gradient;
    std::optional<std::string> target_scaling;
    std::optional<std::size_t> cutoff;
    std::optional<std::size_t> budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> bins;
    std::optional<std::size_t> scan_samples;
    std::optional<std::string> scan_qubits;
};

void add_common(CLI::App *cmd, Flags &f) {
    cmd->add_option("--config", f.config, "JSON config file or run manifest");
    cmd->add_option("--input", f.input, "input CSV");
    cmd->add_option("--output-dir", f.output_dir, "directory for output files");
    cmd->add_option("--seed", f.seed, "random seed");
}

void add_data(CLI::App *cmd, Flags &f) {
    cmd->add_option("--pca-k,--features", f.pca_k, "number of principal components");
    cmd->add_option("--split-fraction", f.split_fraction, "test fraction of the rows");
}

void add_model(CLI::App *cmd, Flags &f) {
    cmd->add_option("--model", f.model, "hybrid, classical or photonic");
    cmd->add_option("--epochs", f.epochs);
    cmd->add_option("--lr", f.lr, "learning rate");
    cmd->add_option("--batch-size", f.batch_size);
    cmd->add_option("--shots", f.shots, "shots for evaluation (exact when absent)");
    cmd->add_option("--layers", f.layers, "ansatz layers");
    cmd->add_option("--qubits", f.qubits, "wires, hidden width or modes");
    cmd->add_option("--encoding", f.encoding, "angle, angle-x, angle-y or angle-z");
    cmd->add_option("--entangler", f.entangler, "cnot, cz or none");
    cmd->add_option("--backend", f.backend, "statevector or fock");
    cmd->add_option("--gradient", f.gradient, "parameter-shift or finite-difference");
    cmd->add_option("--target-scaling", f.target_scaling, "standardize or none");
    cmd->add_option("--cutoff", f.cutoff, "Fock cutoff dimension");
    cmd->add_option("--budget", f.budget, "Fock tensor element budget");
}

std::vector<std::size_t> parse_list(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t pos = 0;
        const auto v = std::stoull(item, &pos);
        if (pos != item.size()) {
            throw std::invalid_argument(item);
        }
        out.push_back(v);
    }
    return out;
}

template <class T> void put(json &doc, const char *key, const std::optional<T> &v) {
    if (v) {
        doc[key] = *v;
    }
}

int report_failure(hqnn_status status) {
    std::cerr << "error: " << hqnn_last_error() << '\n';
    return exit_code(status);
}

/// Config file (if any) overlaid with the flags given on the command line.
int resolve_config(const Flags &f, json &doc) {
    doc = json::object();
    if (f.config) {
        char *text = nullptr;
        const auto status = hqnn_config_load(f.config->c_str(), &text);
        if (status != HQNN_OK) {
            return report_failure(status);
        }
        doc = json::parse(text);
        hqnn_string_free(text);
    }
    put(doc, "input", f.input);
    put(doc, "output_dir", f.output_dir);
    put(doc, "pca_k", f.pca_k);
    put(doc, "split_fraction", f.split_fraction);
    put(doc, "model", f.model);
    put(doc, "epochs", f.epochs);
    put(doc, "lr", f.lr);
    put(doc, "batch_size", f.batch_size);
    put(doc, "shots", f.shots);
    put(doc, "layers", f.layers);
    put(doc, "qubits", f.qubits);
    put(doc, "encoding", f.encoding);
    put(doc, "entangler", f.entangler);
    put(doc, "backend", f.backend);
    put(doc, "gradient", f.gradient);
    put(doc, "target_scaling", f.target_scaling);
    put(doc, "cutoff", f.cutoff);
    put(doc, "budget", f.budget);
    put(doc, "seed", f.seed);
    put(doc, "samples", f.samples);
    put(doc, "bins", f.bins);
    put(doc, "scan_samples", f.scan_samples);
    if (f.scan_qubits) {
        try {
            doc["scan_qubits"] = parse_list(*f.scan_qubits);
        } catch (const std::exception &) {
            std::cerr << "error: --scan-qubits expects a comma-separated list of integers, got '"
                      << *f.scan_qubits << "'\n";
            return kInput;
        }
    }
    return kOk;
}

using Command = hqnn_status (*)(const char *, char **);

int run_command(Command command, const Flags &f) {
    json doc;
    if (const int rc = resolve_config(f, doc); rc != kOk) {
        return rc;
    }
    char *result = nullptr;
    const auto status = command(doc.dump().c_str(), &result);
    if (status != HQNN_OK) {
        return report_failure(status);
    }
    const json summary = json::parse(result);
    hqnn_string_free(result);
    if (summary.contains("min_components_95")) {
        std::cout << "minimal components reaching 95% variance: "
                  << summary["min_components_95"].get<std::size_t>() << '\n';
    }
    if (summary.contains("warnings")) {
        for (const auto &w : summary["warnings"]) {
            std::cerr << "warning: " << w.get<std::string>() << '\n';
        }
    }
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int run_predict(const Flags &f) {
    if (!f.config || !f.input) {
        std::cerr << "error: predict needs --config <manifest.json> and --input <csv>\n";
        return kInput;
    }
    char *result = nullptr;
    const auto status =
        hqnn_predict(f.config->c_str(), f.input->c_str(),
                     f.output_dir ? f.output_dir->c_str() : ".", f.shots.value_or(0), &result);
    if (status != HQNN_OK) {
        return report_failure(status);
    }
    std::cout << json::parse(result).dump(2) << '\n';
    hqnn_string_free(result);
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quantum-classical regression and circuit descriptors"};
    app.require_subcommand(1);
    Flags f;

    auto *data = app.add_subcommand("data", "dataset preparation");
    data->require_subcommand(1);
    auto *prepare = data->add_subcommand("prepare", "standardize, correlate, PCA and split");
    add_common(prepare, f);
    add_data(prepare, f);
    prepare->add_option("--model", f.model, "model the default PCA size follows");

    auto *train = app.add_subcommand("train", "train a model and write a run manifest");
    add_common(train, f);
    add_data(train, f);
    add_model(train, f);

    auto *predict = app.add_subcommand("predict", "apply a trained manifest to a CSV");
    add_common(predict, f);
    predict->add_option("--shots", f.shots, "shots for evaluation (exact when absent)");

    auto *descriptors = app.add_subcommand("descriptors", "expressibility, entanglement, gradient variance");
    add_common(descriptors, f);
    descriptors->add_option("--qubits", f.qubits, "ansatz width (default 4)");
    descriptors->add_option("--layers", f.layers, "ansatz layers");
    descriptors->add_option("--entangler", f.entangler, "cnot, cz or none");
    descriptors->add_option("--samples", f.samples, "fidelity pairs");
    descriptors->add_option("--bins", f.bins, "histogram bins");
    descriptors->add_option("--scan-qubits", f.scan_qubits, "comma-separated qubit counts");
    descriptors->add_option("--scan-samples", f.scan_samples, "draws per scan point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*prepare) {
            return run_command(hqnn_data_prepare, f);
        }
        if (*train) {
            return run_command(hqnn_train, f);
        }
        if (*predict) {
            return run_predict(f);
        }
        return run_command(hqnn_descriptors, f);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
}
