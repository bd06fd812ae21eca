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

#include "hqnn/data.hpp"

#include "hqnn/error.hpp"
#include "hqnn/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hqnn {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

std::string column_label(std::span<const std::string> names, std::size_t c) {
    return c < names.size() ? "'" + names[c] + "'" : std::to_string(c + 1);
}

} // namespace

CsvTable read_csv_table(const std::filesystem::path &path, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        if (header_pending) {
            table.header = split_line(line);
            header_pending = false;
            continue;
        }
        table.rows.push_back(split_line(line));
        table.line_numbers.push_back(line_no);
    }
    if (header_pending) {
        throw InputError(path.string() + " is empty");
    }
    return table;
}

void write_csv(const std::filesystem::path &path, std::span<const std::string> header,
               const Eigen::MatrixXd &values) {
    require(header.empty() || header.size() == static_cast<std::size_t>(values.cols()),
            "CSV header width differs from the matrix width");
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out.precision(17);
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << (c ? "," : "") << header[c];
    }
    if (!header.empty()) {
        out << '\n';
    }
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            out << (c ? "," : "") << values(r, c);
        }
        out << '\n';
    }
    if (!out) {
        throw InputError("failed writing " + path.string());
    }
}

CsvSchema CsvSchema::boston_housing() {
    return {{"CRIM", "ZN", "INDUS", "CHAS", "NOX", "RM", "AGE", "DIS", "RAD", "TAX", "PTRATIO", "B",
             "LSTAT"},
            "MEDV",
            true,
            506};
}

TabularDataset load_csv(const std::filesystem::path &path, const CsvSchema &schema,
                        std::vector<std::string> *warnings) {
    require(!schema.feature_columns.empty(), "schema lists no feature columns");
    const CsvTable table = read_csv_table(path, schema.has_header);

    std::vector<std::string> wanted = schema.feature_columns;
    const bool has_target = !schema.target_column.empty();
    if (has_target) {
        wanted.push_back(schema.target_column);
    }
    std::vector<std::size_t> positions(wanted.size());
    std::size_t width = wanted.size();
    if (schema.has_header) {
        for (std::size_t i = 0; i < wanted.size(); ++i) {
            const auto it = std::find(table.header.begin(), table.header.end(), wanted[i]);
            if (it == table.header.end()) {
                throw InputError(path.string() + ": missing column '" + wanted[i] + "'");
            }
            positions[i] = static_cast<std::size_t>(it - table.header.begin());
        }
        width = table.header.size();
    } else {
        std::iota(positions.begin(), positions.end(), std::size_t{0});
    }
    if (table.rows.empty()) {
        throw InputError(path.string() + " has no data rows");
    }

    const auto n = static_cast<Eigen::Index>(table.rows.size());
    TabularDataset data;
    data.features.resize(n, static_cast<Eigen::Index>(schema.feature_columns.size()));
    data.targets.resize(has_target ? n : 0);
    data.column_names = wanted;
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto &row = table.rows[static_cast<std::size_t>(r)];
        const auto line = table.line_numbers[static_cast<std::size_t>(r)];
        if (row.size() != width) {
            throw InputError(path.string() + ": line " + std::to_string(line) + " has " +
                             std::to_string(row.size()) + " cells, expected " +
                             std::to_string(width));
        }
        for (std::size_t i = 0; i < wanted.size(); ++i) {
            const std::string &cell = row[positions[i]];
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
                !std::isfinite(value)) {
                throw InputError(path.string() + ": line " + std::to_string(line) + " (row " +
                                 std::to_string(r + 1) + "), column '" + wanted[i] +
                                 "': cannot parse '" + cell + "'");
            }
            if (has_target && i + 1 == wanted.size()) {
                data.targets[r] = value;
            } else {
                data.features(r, static_cast<Eigen::Index>(i)) = value;
            }
        }
    }
    if (schema.expected_rows && *schema.expected_rows != table.rows.size() && warnings) {
        warnings->push_back(path.string() + ": expected " + std::to_string(*schema.expected_rows) +
                            " rows, found " + std::to_string(table.rows.size()));
    }
    return data;
}

TabularDataset take_rows(const TabularDataset &data, std::span<const std::size_t> indices) {
    require(data.targets.size() == data.features.rows(), "take_rows needs a dataset with targets");
    TabularDataset out;
    out.column_names = data.column_names;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), data.features.cols());
    out.targets.resize(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        require(indices[i] < data.rows(), "row index out of range");
        const auto src = static_cast<Eigen::Index>(indices[i]);
        out.features.row(static_cast<Eigen::Index>(i)) = data.features.row(src);
        out.targets[static_cast<Eigen::Index>(i)] = data.targets[src];
    }
    return out;
}

StandardizerState standardize_fit(const Eigen::MatrixXd &train, std::span<const std::string> names) {
    require(train.rows() >= 1 && train.cols() >= 1, "cannot standardize an empty matrix");
    StandardizerState state;
    state.mean = train.colwise().mean().transpose();
    state.std.resize(train.cols());
    for (Eigen::Index c = 0; c < train.cols(); ++c) {
        const double var =
            (train.col(c).array() - state.mean[c]).square().sum() / static_cast<double>(train.rows());
        state.std[c] = std::sqrt(var);
        if (!(state.std[c] > 0.0)) {
            throw InputError("column " + column_label(names, static_cast<std::size_t>(c)) +
                             " has zero variance");
        }
    }
    return state;
}

Eigen::MatrixXd standardize_apply(const StandardizerState &state, const Eigen::MatrixXd &values) {
    require(values.cols() == state.mean.size(), "standardizer was fit on " +
                                                    std::to_string(state.mean.size()) +
                                                    " columns, got " + std::to_string(values.cols()));
    return ((values.rowwise() - state.mean.transpose()).array().rowwise() /
            state.std.transpose().array())
        .matrix();
}

StandardizeResult standardize_fit_apply(const Eigen::MatrixXd &train,
                                        std::span<const Eigen::MatrixXd> apply_to,
                                        std::span<const std::string> names) {
    StandardizeResult result{standardize_fit(train, names), {}};
    result.transformed.push_back(standardize_apply(result.state, train));
    for (const auto &m : apply_to) {
        result.transformed.push_back(standardize_apply(result.state, m));
    }
    return result;
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd &columns, std::span<const std::string> names) {
    require(columns.rows() >= 2, "correlation needs at least two rows");
    const auto state = standardize_fit(columns, names);
    const Eigen::MatrixXd z = standardize_apply(state, columns);
    Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(columns.rows());
    for (Eigen::Index i = 0; i < corr.rows(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = std::clamp(0.5 * (corr(i, j) + corr(j, i)), -1.0, 1.0);
            corr(i, j) = v;
            corr(j, i) = v;
        }
        corr(i, i) = 1.0;
    }
    return corr;
}

Eigen::MatrixXd correlation_matrix(const TabularDataset &data) {
    require(data.targets.size() == data.features.rows(), "correlation matrix needs a target column");
    Eigen::MatrixXd all(data.features.rows(), data.features.cols() + 1);
    all << data.features, data.targets;
    return correlation_matrix(all, data.column_names);
}

double PcaState::cumulative(std::size_t count) const {
    require(count <= static_cast<std::size_t>(explained_variance_ratio.size()),
            "component count exceeds the spectrum length");
    return explained_variance_ratio.head(static_cast<Eigen::Index>(count)).sum();
}

std::size_t PcaState::minimal_components(double threshold) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < explained_variance_ratio.size(); ++i) {
        total += explained_variance_ratio[i];
        if (total >= threshold) {
            return static_cast<std::size_t>(i + 1);
        }
    }
    return static_cast<std::size_t>(explained_variance_ratio.size());
}

PcaState pca_fit(const Eigen::MatrixXd &values, std::size_t k) {
    const auto cols = static_cast<std::size_t>(values.cols());
    require(values.rows() >= 2, "PCA needs at least two rows");
    require(k >= 1 && k <= cols,
            "PCA component count " + std::to_string(k) + " outside [1, " + std::to_string(cols) + "]");
    const Eigen::MatrixXd centered = values.rowwise() - values.colwise().mean();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::VectorXd sq = svd.singularValues().array().square().matrix();
    const double total = sq.sum();
    require(total > 0.0, "PCA input has zero total variance");

    PcaState state;
    state.k = k;
    state.explained_variance_ratio = Eigen::VectorXd::Zero(values.cols());
    state.explained_variance_ratio.head(sq.size()) = sq / total;
    state.components = svd.matrixV().leftCols(static_cast<Eigen::Index>(k));
    for (Eigen::Index c = 0; c < state.components.cols(); ++c) {
        Eigen::Index arg = 0;
        state.components.col(c).cwiseAbs().maxCoeff(&arg);
        if (state.components(arg, c) < 0.0) {
            state.components.col(c) *= -1.0;
        }
    }
    return state;
}

Eigen::MatrixXd pca_transform(const PcaState &state, const Eigen::MatrixXd &values) {
    require(values.cols() == state.components.rows(),
            "PCA was fit on " + std::to_string(state.components.rows()) + " columns, got " +
                std::to_string(values.cols()));
    return values * state.components;
}

SplitIndices train_test_split(std::size_t n_rows, double fraction, std::uint64_t seed) {
    require(fraction > 0.0 && fraction < 1.0, "split fraction must lie in (0, 1)");
    const auto n_test =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n_rows) - 1e-9));
    require(n_test >= 1 && n_test < n_rows,
            "split of " + std::to_string(n_rows) + " rows leaves an empty side");
    std::vector<std::size_t> order(n_rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto rng = make_stream(seed, 0);
    std::shuffle(order.begin(), order.end(), rng);
    SplitIndices split;
    split.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    return split;
}

} // namespace hqnn
