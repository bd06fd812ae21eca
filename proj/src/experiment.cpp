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

#include "hqnn/experiment.hpp"

#include "hqnn/data.hpp"
#include "hqnn/descriptors.hpp"
#include "hqnn/error.hpp"
#include "hqnn/model.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

namespace hqnn {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr const char *kManifestFormat = "hqnn-run-manifest";
constexpr int kManifestVersion = 1;

template <class T> void take(json &doc, const char *key, T &out) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    try {
        out = it->get<T>();
    } catch (const json::exception &) {
        throw InputError(std::string("config key '") + key + "' has the wrong type");
    }
    doc.erase(it);
}

void take_optional(json &doc, const char *key, std::optional<std::size_t> &out) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    if (it->is_null()) {
        out.reset();
    } else {
        std::size_t v = 0;
        take(doc, key, v);
        out = v;
        return;
    }
    doc.erase(it);
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
}

void write_json_file(const fs::path &path, const json &doc) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

fs::path ensure_output_dir(const std::string &dir) {
    const fs::path path = dir.empty() ? fs::path(".") : fs::path(dir);
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec || !fs::is_directory(path)) {
        throw InputError("cannot create output directory " + path.string());
    }
    return path;
}

Entangler parse_entangler(const std::string &name) {
    if (name == "cnot") {
        return Entangler::CNOT;
    }
    if (name == "cz") {
        return Entangler::CZ;
    }
    if (name == "none") {
        return Entangler::None;
    }
    throw InputError("unknown entangler '" + name + "' (expected cnot, cz or none)");
}

RotationAxis parse_encoding_axis(const std::string &name) {
    if (name == "angle" || name == "angle-y") {
        return RotationAxis::Y;
    }
    if (name == "angle-x") {
        return RotationAxis::X;
    }
    if (name == "angle-z") {
        return RotationAxis::Z;
    }
    throw InputError("unsupported encoding '" + name +
                     "' for the model layer (expected angle, angle-x, angle-y or angle-z)");
}

template <class M> json matrix_rows(const M &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd rows_matrix(const json &rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = n == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.at(0).size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            out(r, c) = rows.at(r).at(c).get<double>();
        }
    }
    return out;
}

json vector_json(const Eigen::VectorXd &v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd json_vector(const json &values) {
    const auto v = values.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Feature matrices after preprocessing, plus the state needed to redo it.
struct PreparedData {
    Eigen::MatrixXd train_x;
    Eigen::MatrixXd test_x;
    Eigen::VectorXd train_y;
    Eigen::VectorXd test_y;
    json preprocessing;
};

bool is_prepared_file(const fs::path &path) {
    const auto table = read_csv_table(path, true);
    return std::find(table.header.begin(), table.header.end(), "split") != table.header.end();
}

PreparedData load_prepared(const ExperimentConfig &cfg) {
    const auto table = read_csv_table(cfg.input, true);
    std::vector<std::string> features;
    std::size_t split_col = 0;
    std::size_t target_col = table.header.size();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (table.header[c] == "split") {
            split_col = c;
        } else if (table.header[c] == "MEDV") {
            target_col = c;
        } else {
            features.push_back(table.header[c]);
        }
    }
    if (target_col == table.header.size()) {
        throw InputError(cfg.input + ": missing column 'MEDV'");
    }
    if (features.size() != cfg.pca_k) {
        throw InputError(cfg.input + " holds " + std::to_string(features.size()) +
                         " feature columns but the config asks for " + std::to_string(cfg.pca_k));
    }
    CsvSchema schema{features, "MEDV", true, std::nullopt};
    const auto data = load_csv(cfg.input, schema);
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto &label = table.rows[r].at(split_col);
        if (label == "train") {
            train.push_back(r);
        } else if (label == "test") {
            test.push_back(r);
        } else {
            throw InputError(cfg.input + ": line " + std::to_string(table.line_numbers[r]) +
                             ", column 'split': expected train or test, got '" + label + "'");
        }
    }
    if (train.empty() || test.empty()) {
        throw InputError(cfg.input + " needs both train and test rows");
    }
    const auto tr = take_rows(data, train);
    const auto te = take_rows(data, test);
    return {tr.features, te.features, tr.targets, te.targets,
            {{"input_format", "prepared"}, {"feature_columns", features}}};
}

struct RawPipeline {
    TabularDataset data;
    SplitIndices split;
    StandardizerState standardizer;
    PcaState pca;
};

RawPipeline fit_raw_pipeline(const ExperimentConfig &cfg, std::vector<std::string> *warnings) {
    const auto schema = CsvSchema::boston_housing();
    RawPipeline p;
    p.data = load_csv(cfg.input, schema, warnings);
    p.split = train_test_split(p.data.rows(), cfg.split_fraction, cfg.seed);
    const auto train = take_rows(p.data, p.split.train);
    p.standardizer = standardize_fit(train.features, schema.feature_columns);
    if (cfg.pca_k > p.data.cols()) {
        throw InputError("pca_k " + std::to_string(cfg.pca_k) + " exceeds the " +
                         std::to_string(p.data.cols()) + " feature columns");
    }
    p.pca = pca_fit(standardize_apply(p.standardizer, train.features), cfg.pca_k);
    return p;
}

json raw_preprocessing_json(const RawPipeline &p) {
    const auto schema = CsvSchema::boston_housing();
    return {{"input_format", "raw"},
            {"feature_columns", schema.feature_columns},
            {"mean", vector_json(p.standardizer.mean)},
            {"std", vector_json(p.standardizer.std)},
            {"components", matrix_rows(p.pca.components)},
            {"explained_variance_ratio", vector_json(p.pca.explained_variance_ratio)}};
}

PreparedData load_raw(const ExperimentConfig &cfg) {
    const auto p = fit_raw_pipeline(cfg, nullptr);
    const auto tr = take_rows(p.data, p.split.train);
    const auto te = take_rows(p.data, p.split.test);
    return {pca_transform(p.pca, standardize_apply(p.standardizer, tr.features)),
            pca_transform(p.pca, standardize_apply(p.standardizer, te.features)), tr.targets,
            te.targets, raw_preprocessing_json(p)};
}

HybridRegressor build_model(const ExperimentConfig &cfg, std::size_t n_features) {
    if (cfg.model == "classical") {
        return make_classical_regressor(n_features, cfg.qubits, cfg.seed);
    }
    if (cfg.model == "photonic") {
        PhotonicLayerConfig pc;
        pc.n_modes = cfg.qubits;
        pc.fock.cutoff = cfg.cutoff;
        pc.fock.max_elements = cfg.budget;
        return make_photonic_regressor(n_features, pc, cfg.seed);
    }
    auto qc = QuantumLayerConfig::for_wires(cfg.qubits, cfg.layers);
    qc.encoding.axis = parse_encoding_axis(cfg.encoding);
    qc.ansatz.entangler = parse_entangler(cfg.entangler);
    qc.gradient = cfg.gradient == "finite-difference" ? GradientMethod::FiniteDifference
                                                      : GradientMethod::ParameterShift;
    qc.finite_diff = {1e-6, DiffScheme::Central};
    if (cfg.qubits > kDefaultMaxQubits) {
        throw ResourceError("hybrid model on " + std::to_string(cfg.qubits) + " qubits exceeds the " +
                            std::to_string(kDefaultMaxQubits) + "-qubit ceiling");
    }
    return make_hybrid_regressor(n_features, qc, cfg.seed);
}

std::string format_row(std::initializer_list<double> values) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const double v : values) {
        os << (first ? "" : ",") << v;
        first = false;
    }
    return os.str();
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &doc_in) {
    if (!doc_in.is_object()) {
        throw InputError("config must be a JSON object");
    }
    json doc = doc_in;
    ExperimentConfig c;
    take(doc, "model", c.model);
    take(doc, "input", c.input);
    take(doc, "output_dir", c.output_dir);
    take(doc, "pca_k", c.pca_k);
    take(doc, "split_fraction", c.split_fraction);
    take(doc, "epochs", c.epochs);
    take(doc, "lr", c.lr);
    take(doc, "batch_size", c.batch_size);
    take_optional(doc, "shots", c.shots);
    take(doc, "layers", c.layers);
    take(doc, "qubits", c.qubits);
    take(doc, "encoding", c.encoding);
    take(doc, "entangler", c.entangler);
    take(doc, "backend", c.backend);
    take(doc, "gradient", c.gradient);
    take(doc, "target_scaling", c.target_scaling);
    take(doc, "cutoff", c.cutoff);
    take(doc, "budget", c.budget);
    take(doc, "seed", c.seed);
    take(doc, "samples", c.samples);
    take(doc, "bins", c.bins);
    take(doc, "entangling_samples", c.entangling_samples);
    take(doc, "scan_samples", c.scan_samples);
    take(doc, "scan_qubits", c.scan_qubits);
    if (!doc.empty()) {
        throw InputError("unknown config key '" + doc.begin().key() + "'");
    }
    return c;
}

nlohmann::json ExperimentConfig::to_json() const {
    json doc = {{"model", model},
                {"input", input},
                {"output_dir", output_dir},
                {"pca_k", pca_k},
                {"split_fraction", split_fraction},
                {"epochs", epochs},
                {"lr", lr},
                {"batch_size", batch_size},
                {"shots", nullptr},
                {"layers", layers},
                {"qubits", qubits},
                {"encoding", encoding},
                {"entangler", entangler},
                {"backend", backend},
                {"gradient", gradient},
                {"target_scaling", target_scaling},
                {"cutoff", cutoff},
                {"budget", budget},
                {"seed", seed},
                {"samples", samples},
                {"bins", bins},
                {"entangling_samples", entangling_samples},
                {"scan_samples", scan_samples},
                {"scan_qubits", scan_qubits}};
    if (shots) {
        doc["shots"] = *shots;
    }
    return doc;
}

ExperimentConfig ExperimentConfig::resolved() const {
    ExperimentConfig c = *this;
    static const std::set<std::string> models{"hybrid", "classical", "photonic"};
    if (!models.count(c.model)) {
        throw InputError("unknown model '" + c.model + "' (expected hybrid, classical or photonic)");
    }
    const std::string natural = c.model == "photonic" ? "fock" : "statevector";
    if (c.backend.empty()) {
        c.backend = natural;
    }
    if (c.backend != "statevector" && c.backend != "fock") {
        throw InputError("unknown backend '" + c.backend + "' (expected statevector or fock)");
    }
    if (c.backend != natural) {
        throw InputError("model '" + c.model + "' runs on the " + natural + " backend, not " +
                         c.backend);
    }
    if (c.pca_k == 0) {
        c.pca_k = c.model == "photonic" ? 3 : 9;
    }
    if (c.qubits == 0) {
        c.qubits = c.pca_k;
    }
    (void)parse_encoding_axis(c.encoding);
    (void)parse_entangler(c.entangler);
    if (c.gradient != "parameter-shift" && c.gradient != "finite-difference") {
        throw InputError("unknown gradient '" + c.gradient +
                         "' (expected parameter-shift or finite-difference)");
    }
    if (c.target_scaling != "standardize" && c.target_scaling != "none") {
        throw InputError("unknown target_scaling '" + c.target_scaling +
                         "' (expected standardize or none)");
    }
    const auto positive = [](std::size_t v, const char *name) {
        if (v == 0) {
            throw InputError(std::string(name) + " must be positive");
        }
    };
    positive(c.epochs, "epochs");
    positive(c.batch_size, "batch_size");
    positive(c.layers, "layers");
    positive(c.cutoff, "cutoff");
    positive(c.budget, "budget");
    if (c.shots) {
        positive(*c.shots, "shots");
    }
    if (!(c.split_fraction > 0.0 && c.split_fraction < 1.0)) {
        throw InputError("split_fraction must lie in (0, 1)");
    }
    if (!std::isfinite(c.lr) || c.lr < 0.0) {
        throw InputError("lr must be finite and non-negative");
    }
    if (c.samples < 100 || c.scan_samples < 100) {
        throw InputError("samples and scan_samples must be at least 100");
    }
    if (c.bins < 2) {
        throw InputError("bins must be at least 2");
    }
    positive(c.entangling_samples, "entangling_samples");
    for (std::size_t i = 0; i < c.scan_qubits.size(); ++i) {
        if (c.scan_qubits[i] == 0 || (i > 0 && c.scan_qubits[i] <= c.scan_qubits[i - 1])) {
            throw InputError("scan_qubits must be positive and strictly ascending");
        }
    }
    return c;
}

ExperimentConfig load_experiment_config(const fs::path &path) {
    const json doc = read_json_file(path);
    if (doc.is_object() && doc.value("format", "") == kManifestFormat) {
        return ExperimentConfig::from_json(doc.at("config"));
    }
    return ExperimentConfig::from_json(doc);
}

nlohmann::json run_data_prepare(const ExperimentConfig &config) {
    const auto cfg = config.resolved();
    if (cfg.input.empty()) {
        throw InputError("data prepare needs an input CSV");
    }
    std::vector<std::string> warnings;
    const auto p = fit_raw_pipeline(cfg, &warnings);
    const auto full = pca_fit(standardize_apply(p.standardizer, take_rows(p.data, p.split.train).features),
                              p.data.cols());
    const auto dir = ensure_output_dir(cfg.output_dir);

    const Eigen::MatrixXd projected = pca_transform(p.pca, standardize_apply(p.standardizer, p.data.features));
    std::vector<bool> is_test(p.data.rows(), false);
    for (const auto i : p.split.test) {
        is_test[i] = true;
    }
    {
        std::ofstream out(dir / "prepared.csv");
        if (!out) {
            throw InputError("cannot write " + (dir / "prepared.csv").string());
        }
        out.precision(17);
        out << "split";
        for (std::size_t c = 0; c < cfg.pca_k; ++c) {
            out << ",PC" << c + 1;
        }
        out << ",MEDV\n";
        for (std::size_t r = 0; r < p.data.rows(); ++r) {
            out << (is_test[r] ? "test" : "train");
            for (Eigen::Index c = 0; c < projected.cols(); ++c) {
                out << ',' << projected(static_cast<Eigen::Index>(r), c);
            }
            out << ',' << p.data.targets[static_cast<Eigen::Index>(r)] << '\n';
        }
    }
    {
        const Eigen::MatrixXd corr = correlation_matrix(p.data);
        std::ofstream out(dir / "correlation.csv");
        out.precision(17);
        out << "column";
        for (const auto &name : p.data.column_names) {
            out << ',' << name;
        }
        out << '\n';
        for (Eigen::Index r = 0; r < corr.rows(); ++r) {
            out << p.data.column_names[static_cast<std::size_t>(r)];
            for (Eigen::Index c = 0; c < corr.cols(); ++c) {
                out << ',' << corr(r, c);
            }
            out << '\n';
        }
    }
    {
        Eigen::MatrixXd ev(full.explained_variance_ratio.size(), 3);
        double cumulative = 0.0;
        for (Eigen::Index i = 0; i < ev.rows(); ++i) {
            cumulative += full.explained_variance_ratio[i];
            ev(i, 0) = static_cast<double>(i + 1);
            ev(i, 1) = full.explained_variance_ratio[i];
            ev(i, 2) = cumulative;
        }
        const std::vector<std::string> header{"component", "ratio", "cumulative"};
        write_csv(dir / "explained_variance.csv", header, ev);
    }
    return {{"rows", p.data.rows()},
            {"train_rows", p.split.train.size()},
            {"test_rows", p.split.test.size()},
            {"pca_k", cfg.pca_k},
            {"cumulative_variance", full.cumulative(cfg.pca_k)},
            {"min_components_95", full.minimal_components(0.95)},
            {"warnings", warnings},
            {"output_dir", dir.string()}};
}

nlohmann::json run_train(const ExperimentConfig &config) {
    const auto cfg = config.resolved();
    if (cfg.input.empty()) {
        throw InputError("train needs an input CSV");
    }
    const auto start = std::chrono::steady_clock::now();
    PreparedData data = is_prepared_file(cfg.input) ? load_prepared(cfg) : load_raw(cfg);

    double target_mean = 0.0;
    double target_std = 1.0;
    if (cfg.target_scaling == "standardize") {
        target_mean = data.train_y.mean();
        target_std = std::sqrt((data.train_y.array() - target_mean).square().mean());
        if (!(target_std > 0.0)) {
            throw InputError("training targets are constant");
        }
    }
    const Eigen::VectorXd train_t = (data.train_y.array() - target_mean) / target_std;
    const Eigen::VectorXd test_t = (data.test_y.array() - target_mean) / target_std;

    auto model = build_model(cfg, static_cast<std::size_t>(data.train_x.cols()));
    TrainConfig tc;
    tc.epochs = cfg.epochs;
    tc.learning_rate = cfg.lr;
    tc.batch_size = cfg.batch_size;
    tc.seed = cfg.seed;
    tc.shots = cfg.shots;
    const auto report = fit(model, data.train_x, train_t, data.test_x, test_t, tc);

    const double scale = target_std * target_std;
    const Eigen::VectorXd predicted =
        (predict(model, data.test_x, {cfg.shots, cfg.seed}).array() * target_std + target_mean).matrix();
    const double test_pearson = pearson(data.test_y, predicted);
    const double baseline = (data.train_y.array() - data.train_y.mean()).square().mean();

    json extra = json::object();
    if (const auto *layer = std::get_if<PhotonicLayer>(&model.qlayer)) {
        double worst = 0.0;
        for (Eigen::Index r = 0; r < data.train_x.rows(); ++r) {
            const Eigen::VectorXd h = model.clayer_in.forward(data.train_x.row(r).transpose());
            worst = std::max(worst, layer->leakage(h));
        }
        extra["max_fock_leakage"] = worst;
    }

    const auto dir = ensure_output_dir(cfg.output_dir);
    {
        std::ofstream out(dir / "loss_history.csv");
        if (!out) {
            throw InputError("cannot write " + (dir / "loss_history.csv").string());
        }
        out << "epoch,train_mse,val_mse\n";
        for (std::size_t e = 0; e < report.train_loss.size(); ++e) {
            out << e + 1 << ','
                << format_row({report.train_loss[e] * scale, report.val_loss[e] * scale}) << '\n';
        }
    }
    {
        std::ofstream out(dir / "predictions.csv");
        out << "actual,predicted\n";
        for (Eigen::Index i = 0; i < predicted.size(); ++i) {
            out << format_row({data.test_y[i], predicted[i]}) << '\n';
        }
    }
    std::vector<double> train_hist;
    std::vector<double> val_hist;
    for (std::size_t e = 0; e < report.train_loss.size(); ++e) {
        train_hist.push_back(report.train_loss[e] * scale);
        val_hist.push_back(report.val_loss[e] * scale);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json summary = {{"model", cfg.model},
                    {"seed", cfg.seed},
                    {"train_rows", data.train_x.rows()},
                    {"test_rows", data.test_x.rows()},
                    {"initial_train_mse", report.initial_train_loss * scale},
                    {"final_train_mse", train_hist.back()},
                    {"final_val_mse", val_hist.back()},
                    {"train_target_variance", baseline},
                    {"test_pearson", test_pearson},
                    {"wall_seconds", wall}};
    summary.update(extra);
    json manifest = {{"format", kManifestFormat},
                     {"version", kManifestVersion},
                     {"config", cfg.to_json()},
                     {"seed", cfg.seed},
                     {"summary", summary},
                     {"loss_history", {{"train_mse", train_hist}, {"val_mse", val_hist}}},
                     {"preprocessing", data.preprocessing},
                     {"target", {{"mean", target_mean}, {"std", target_std}}},
                     {"parameters", vector_json(report.final_parameters)}};
    write_json_file(dir / "manifest.json", manifest);
    summary["output_dir"] = dir.string();
    return summary;
}

nlohmann::json run_predict(const fs::path &manifest_path, const fs::path &input_csv,
                           const fs::path &output_dir, std::optional<std::size_t> shots) {
    const json manifest = read_json_file(manifest_path);
    if (!manifest.is_object() || manifest.value("format", "") != kManifestFormat) {
        throw InputError(manifest_path.string() + " is not a run manifest");
    }
    try {
        const auto cfg = ExperimentConfig::from_json(manifest.at("config")).resolved();
        const auto &pre = manifest.at("preprocessing");
        const auto columns = pre.at("feature_columns").get<std::vector<std::string>>();
        const bool raw = pre.at("input_format") == "raw";

        const CsvTable head = read_csv_table(input_csv, true);
        const bool labelled =
            std::find(head.header.begin(), head.header.end(), "MEDV") != head.header.end();
        const auto data = load_csv(input_csv, {columns, labelled ? "MEDV" : "", true, std::nullopt});

        Eigen::MatrixXd x = data.features;
        if (raw) {
            const StandardizerState st{json_vector(pre.at("mean")), json_vector(pre.at("std"))};
            PcaState pca;
            pca.components = rows_matrix(pre.at("components"));
            pca.k = static_cast<std::size_t>(pca.components.cols());
            x = pca_transform(pca, standardize_apply(st, x));
        }
        auto model = build_model(cfg, static_cast<std::size_t>(x.cols()));
        model.set_parameters(json_vector(manifest.at("parameters")));
        const double mean = manifest.at("target").at("mean").get<double>();
        const double sd = manifest.at("target").at("std").get<double>();
        const Eigen::VectorXd predicted =
            (predict(model, x, {shots, cfg.seed}).array() * sd + mean).matrix();

        const auto dir = ensure_output_dir(output_dir.string());
        std::ofstream out(dir / "predictions.csv");
        if (!out) {
            throw InputError("cannot write " + (dir / "predictions.csv").string());
        }
        out << (labelled ? "actual,predicted\n" : "predicted\n");
        for (Eigen::Index i = 0; i < predicted.size(); ++i) {
            out << (labelled ? format_row({data.targets[i], predicted[i]})
                             : format_row({predicted[i]}))
                << '\n';
        }
        json summary = {{"rows", predicted.size()}, {"output_dir", dir.string()}};
        if (labelled) {
            const Eigen::VectorXd err = predicted - data.targets;
            summary["mse"] = err.squaredNorm() / static_cast<double>(err.size());
            if (predicted.size() >= 2) {
                summary["pearson"] = pearson(data.targets, predicted);
            }
        }
        return summary;
    } catch (const json::exception &e) {
        throw InputError(manifest_path.string() + ": malformed manifest: " + e.what());
    }
}

nlohmann::json run_descriptors(const ExperimentConfig &config) {
    ExperimentConfig c = config;
    if (c.qubits == 0) {
        c.qubits = 4;
    }
    const auto cfg = c.resolved();
    if (cfg.qubits > kDefaultMaxQubits) {
        throw ResourceError("descriptors on " + std::to_string(cfg.qubits) + " qubits exceed the " +
                            std::to_string(kDefaultMaxQubits) + "-qubit ceiling");
    }
    const AnsatzSpec spec{cfg.qubits, cfg.layers, parse_entangler(cfg.entangler)};
    const auto circuit = strongly_entangling_layers(spec);

    DescriptorReport report;
    report.expressibility_kl = expressibility(circuit, {cfg.samples, cfg.bins, cfg.seed});
    report.entangling_capability = entangling_capability(circuit, cfg.entangling_samples, cfg.seed);
    report.gradient_variance_by_qubits =
        gradient_variance_scan(spec, cfg.scan_qubits, cfg.scan_samples, cfg.seed);

    json scan = json::object();
    for (const auto &[n, v] : report.gradient_variance_by_qubits) {
        scan[std::to_string(n)] = v;
    }
    const json doc = {{"expressibility_kl", report.expressibility_kl},
                      {"entangling_capability", report.entangling_capability},
                      {"gradient_variance_by_qubits", scan},
                      {"config", cfg.to_json()},
                      {"seed", cfg.seed}};
    const auto dir = ensure_output_dir(cfg.output_dir);
    write_json_file(dir / "descriptors.json", doc);
    json summary = doc;
    summary.erase("config");
    summary["output_dir"] = dir.string();
    return summary;
}

} // namespace hqnn
