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
 * Tabular ingestion, standardization, correlation, PCA and splitting.
 */
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hqnn {

/// Raw CSV cells. Rows keep their 1-based line number for error messages.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

/// Splits a file into comma-separated cells; the first line is the header
/// when `has_header` is set. Throws InputError when the file is unreadable.
[[nodiscard]] CsvTable read_csv_table(const std::filesystem::path &path, bool has_header);

/// Writes `header` then one line per row with 17 significant digits.
void write_csv(const std::filesystem::path &path, std::span<const std::string> header,
               const Eigen::MatrixXd &values);

struct CsvSchema {
    std::vector<std::string> feature_columns;
    std::string target_column; ///< empty when the file carries no target
    bool has_header = true;
    std::optional<std::size_t> expected_rows;

    /// CRIM ... LSTAT features, MEDV target, 506 rows.
    static CsvSchema boston_housing();
};

struct TabularDataset {
    Eigen::MatrixXd features;
    Eigen::VectorXd targets;               ///< empty without a target column
    std::vector<std::string> column_names; ///< features, then the target

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(features.cols()); }
};

/**
 * Loads the schema's columns. With a header, columns are matched by name
 * (case-sensitive) and extra columns are ignored; without one, the file
 * must hold exactly the schema columns in order. Missing columns, ragged
 * rows and unparseable or non-finite cells throw InputError naming the
 * line and column. A row count that differs from `expected_rows` appends
 * a message to `warnings` instead.
 */
[[nodiscard]] TabularDataset load_csv(const std::filesystem::path &path, const CsvSchema &schema,
                                      std::vector<std::string> *warnings = nullptr);

/// Rows of `data` picked by `indices`, in that order.
[[nodiscard]] TabularDataset take_rows(const TabularDataset &data,
                                       std::span<const std::size_t> indices);

struct StandardizerState {
    Eigen::VectorXd mean;
    Eigen::VectorXd std; ///< population standard deviation
};

/// Column statistics of `train`; throws InputError on a zero-variance column.
[[nodiscard]] StandardizerState standardize_fit(const Eigen::MatrixXd &train,
                                                std::span<const std::string> names = {});
[[nodiscard]] Eigen::MatrixXd standardize_apply(const StandardizerState &state,
                                                const Eigen::MatrixXd &values);

struct StandardizeResult {
    StandardizerState state;
    std::vector<Eigen::MatrixXd> transformed; ///< train first, then each of `apply_to`
};

[[nodiscard]] StandardizeResult standardize_fit_apply(const Eigen::MatrixXd &train,
                                                      std::span<const Eigen::MatrixXd> apply_to,
                                                      std::span<const std::string> names = {});

/// Pearson correlations of the feature columns followed by the target.
[[nodiscard]] Eigen::MatrixXd correlation_matrix(const TabularDataset &data);
[[nodiscard]] Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd &columns,
                                                 std::span<const std::string> names = {});

struct PcaState {
    Eigen::MatrixXd components;               ///< cols x k, orthonormal columns
    Eigen::VectorXd explained_variance_ratio; ///< all cols ratios, descending
    std::size_t k = 0;

    /// Sum of the first `count` ratios.
    [[nodiscard]] double cumulative(std::size_t count) const;
    /// Smallest component count whose cumulative ratio reaches `threshold`.
    [[nodiscard]] std::size_t minimal_components(double threshold) const;
};

/**
 * Principal axes from the SVD of the column-centered matrix. Each
 * component is sign-fixed so its largest-magnitude entry is positive.
 */
[[nodiscard]] PcaState pca_fit(const Eigen::MatrixXd &values, std::size_t k);

/// values * components (no re-centering; inputs are already standardized).
[[nodiscard]] Eigen::MatrixXd pca_transform(const PcaState &state, const Eigen::MatrixXd &values);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded shuffle; the test side gets ceil(fraction * n) rows.
[[nodiscard]] SplitIndices train_test_split(std::size_t n_rows, double fraction,
                                            std::uint64_t seed);

} // namespace hqnn
