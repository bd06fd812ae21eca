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
 * Config-driven experiment runs behind the command-line tool: data
 * preparation, training, prediction and circuit descriptors.
 */
#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hqnn {

/**
 * Flat experiment configuration. JSON keys are the field names; unknown
 * keys are rejected. Zero for `pca_k` or `qubits` means "derive": nine
 * features (three for the photonic model) and one wire or mode per
 * feature.
 */
struct ExperimentConfig {
    std::string model = "hybrid"; ///< hybrid | classical | photonic
    std::string input;
    std::string output_dir = ".";
    std::size_t pca_k = 0;
    double split_fraction = 0.2;
    std::size_t epochs = 25;
    double lr = 0.08;
    std::size_t batch_size = 5;
    std::optional<std::size_t> shots;
    std::size_t layers = 1;
    std::size_t qubits = 0;
    std::string encoding = "angle";   ///< angle | angle-x | angle-y | angle-z
    std::string entangler = "cnot";   ///< cnot | cz | none
    std::string backend;              ///< statevector | fock; empty follows the model
    std::string gradient = "parameter-shift"; ///< parameter-shift | finite-difference
    std::string target_scaling = "standardize"; ///< standardize | none
    std::size_t cutoff = 8;
    std::size_t budget = 100000;
    std::uint64_t seed = 0;
    std::size_t samples = 5000;            ///< expressibility pairs
    std::size_t bins = 75;
    std::size_t entangling_samples = 1000;
    std::size_t scan_samples = 500;
    std::vector<std::size_t> scan_qubits;

    static ExperimentConfig from_json(const nlohmann::json &doc);
    [[nodiscard]] nlohmann::json to_json() const;

    /// Config with derived fields filled in; throws InputError on invalid values.
    [[nodiscard]] ExperimentConfig resolved() const;
};

/**
 * Reads a config file. A run manifest is accepted too, in which case its
 * recorded config is returned.
 */
[[nodiscard]] ExperimentConfig load_experiment_config(const std::filesystem::path &path);

/// Writes prepared.csv, correlation.csv and explained_variance.csv.
nlohmann::json run_data_prepare(const ExperimentConfig &config);

/**
 * Trains on a raw or prepared CSV and writes loss_history.csv,
 * predictions.csv (test split) and manifest.json. Files other than the
 * manifest's wall time are identical for a repeated config.
 */
nlohmann::json run_train(const ExperimentConfig &config);

/// Applies the model in `manifest_path` to `input_csv`; writes predictions.csv.
nlohmann::json run_predict(const std::filesystem::path &manifest_path,
                           const std::filesystem::path &input_csv,
                           const std::filesystem::path &output_dir,
                           std::optional<std::size_t> shots);

/// Writes descriptors.json.
nlohmann::json run_descriptors(const ExperimentConfig &config);

} // namespace hqnn
