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

#include "catch_amalgamated.hpp"

#include "hqnn/data.hpp"
#include "hqnn/error.hpp"
#include "hqnn/experiment.hpp"

#include <filesystem>
#include <fstream>

using namespace hqnn;
using nlohmann::json;
using Catch::Matchers::WithinAbs;

namespace fs = std::filesystem;

namespace {

const std::string kBoston = std::string(HQNN_DATA_DIR) + "/boston_housing.csv";

fs::path fresh_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "hqnn_test_experiment" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json read_json(const fs::path &path) {
    std::ifstream in(path);
    return json::parse(in);
}

ExperimentConfig quick(const std::string &model, const fs::path &dir) {
    ExperimentConfig c;
    c.model = model;
    c.input = kBoston;
    c.output_dir = dir.string();
    c.epochs = 1;
    c.seed = 3;
    return c;
}

} // namespace

TEST_CASE("config defaults resolve from the model") {
    const auto hybrid = ExperimentConfig{}.resolved();
    CHECK(hybrid.pca_k == 9);
    CHECK(hybrid.qubits == 9);
    CHECK(hybrid.backend == "statevector");
    CHECK(hybrid.epochs == 25);
    CHECK(hybrid.lr == 0.08);
    CHECK(hybrid.batch_size == 5);
    CHECK(hybrid.split_fraction == 0.2);

    ExperimentConfig p;
    p.model = "photonic";
    const auto photonic = p.resolved();
    CHECK(photonic.pca_k == 3);
    CHECK(photonic.backend == "fock");
    CHECK(photonic.cutoff == 8);
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    c.model = "quantum";
    CHECK_THROWS_AS(c.resolved(), InputError);
    c = {};
    c.backend = "fock";
    CHECK_THROWS_AS(c.resolved(), InputError);
    c = {};
    c.split_fraction = 1.5;
    CHECK_THROWS_AS(c.resolved(), InputError);
    c = {};
    c.encoding = "amplitude";
    CHECK_THROWS_AS(c.resolved(), InputError);
    c = {};
    c.scan_qubits = {4, 2};
    CHECK_THROWS_AS(c.resolved(), InputError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"epoch", 3}}), InputError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"epochs", "three"}}), InputError);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig c;
    c.model = "classical";
    c.epochs = 7;
    c.shots = 1000;
    c.scan_qubits = {1, 3};
    const auto back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK(back.shots == std::optional<std::size_t>{1000});

    const auto dir = fresh_dir("config");
    std::ofstream(dir / "cfg.json") << json{{"model", "classical"}, {"lr", 0.01}}.dump();
    const auto loaded = load_experiment_config(dir / "cfg.json");
    CHECK(loaded.model == "classical");
    CHECK(loaded.lr == 0.01);
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK_THROWS_AS(load_experiment_config(dir / "broken.json"), InputError);
    CHECK_THROWS_AS(load_experiment_config(dir / "absent.json"), InputError);
}

TEST_CASE("data prepare writes the processed tables") {
    const auto dir = fresh_dir("prepare");
    ExperimentConfig c;
    c.input = kBoston;
    c.output_dir = dir.string();
    const auto result = run_data_prepare(c);
    CHECK(result.at("min_components_95") == 9);
    CHECK(result.at("train_rows") == 404);
    CHECK(result.at("test_rows") == 102);

    const auto prepared = read_csv_table(dir / "prepared.csv", true);
    CHECK(prepared.header.size() == 11);
    CHECK(prepared.header.front() == "split");
    CHECK(prepared.header[1] == "PC1");
    CHECK(prepared.header.back() == "MEDV");
    CHECK(prepared.rows.size() == 506);
    std::size_t tests = 0;
    for (const auto &row : prepared.rows) {
        tests += row[0] == "test" ? 1U : 0U;
    }
    CHECK(tests == 102);

    const auto corr = read_csv_table(dir / "correlation.csv", true);
    CHECK(corr.rows.size() == 14);
    const auto ev = read_csv_table(dir / "explained_variance.csv", true);
    CHECK(ev.rows.size() == 13);
    CHECK_THAT(std::stod(ev.rows.back()[2]), WithinAbs(1.0, 1e-12));
}

TEST_CASE("train, reload and predict") {
    const auto dir = fresh_dir("train");
    auto c = quick("classical", dir);
    c.epochs = 3;
    const auto summary = run_train(c);
    CHECK(summary.at("train_rows") == 404);
    CHECK(summary.at("test_rows") == 102);

    const auto manifest = read_json(dir / "manifest.json");
    CHECK(manifest.at("format") == "hqnn-run-manifest");
    CHECK(manifest.at("seed") == 3);
    CHECK(manifest.at("loss_history").at("train_mse").size() == 3);
    const auto history = read_csv_table(dir / "loss_history.csv", true);
    CHECK(history.rows.size() == 3);
    const auto preds = read_csv_table(dir / "predictions.csv", true);
    CHECK(preds.rows.size() == 102);

    const auto reloaded = load_experiment_config(dir / "manifest.json");
    CHECK(reloaded.to_json() == manifest.at("config"));

    const auto out = fresh_dir("predict");
    const auto result = run_predict(dir / "manifest.json", kBoston, out, std::nullopt);
    CHECK(result.at("rows") == 506);
    CHECK(result.contains("mse"));
    const auto all = read_csv_table(out / "predictions.csv", true);
    REQUIRE(all.rows.size() == 506);
    // Test rows predicted after reload match the ones written at train time.
    const auto split = train_test_split(506, 0.2, 3);
    for (std::size_t i = 0; i < split.test.size(); ++i) {
        CHECK_THAT(std::stod(all.rows[split.test[i]][1]), WithinAbs(std::stod(preds.rows[i][1]), 1e-9));
    }
}

TEST_CASE("training is reproducible from the seed") {
    const auto a_dir = fresh_dir("repeat_a");
    const auto b_dir = fresh_dir("repeat_b");
    run_train(quick("hybrid", a_dir));
    run_train(quick("hybrid", b_dir));
    const auto a = read_json(a_dir / "manifest.json");
    const auto b = read_json(b_dir / "manifest.json");
    CHECK(a.at("parameters") == b.at("parameters"));
    CHECK(a.at("loss_history") == b.at("loss_history"));
}

TEST_CASE("prepared input trains without refitting") {
    const auto prep = fresh_dir("prepared_in");
    ExperimentConfig p;
    p.input = kBoston;
    p.output_dir = prep.string();
    (void)run_data_prepare(p);

    const auto dir = fresh_dir("prepared_train");
    auto c = quick("classical", dir);
    c.input = (prep / "prepared.csv").string();
    const auto summary = run_train(c);
    CHECK(summary.at("train_rows") == 404);
    const auto manifest = read_json(dir / "manifest.json");
    CHECK(manifest.at("preprocessing").at("input_format") == "prepared");
}

TEST_CASE("bad inputs surface as input errors") {
    auto c = quick("classical", fresh_dir("bad"));
    c.input = "/nonexistent.csv";
    CHECK_THROWS_AS(run_train(c), InputError);
    CHECK_THROWS_AS(run_predict("/nonexistent.json", kBoston, fresh_dir("bad2"), std::nullopt),
                    InputError);
}

TEST_CASE("photonic model on six features exceeds the budget") {
    auto c = quick("photonic", fresh_dir("six_modes"));
    c.pca_k = 6;
    CHECK_THROWS_AS(run_train(c), ResourceError);
}

TEST_CASE("descriptors command") {
    const auto dir = fresh_dir("descriptors");
    ExperimentConfig c;
    c.output_dir = dir.string();
    c.qubits = 2;
    c.samples = 400;
    c.entangling_samples = 100;
    c.scan_samples = 200;
    c.scan_qubits = {1, 2, 3};
    c.seed = 5;
    const auto result = run_descriptors(c);
    CHECK(result.at("expressibility_kl").get<double>() > 0.0);
    const auto doc = read_json(dir / "descriptors.json");
    CHECK(doc.at("gradient_variance_by_qubits").size() == 3);
    CHECK(doc.at("config").at("qubits") == 2);

    c.qubits = 15;
    CHECK_THROWS_AS(run_descriptors(c), ResourceError);
}
