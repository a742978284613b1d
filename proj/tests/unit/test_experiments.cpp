#include "cosetlab/errors.hpp"
#include "cosetlab/experiments.hpp"
#include "cosetlab/matrix_io.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

using namespace cosetlab;

namespace {

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("COSETLAB_TEST_DIR");
  return std::string(dir ? dir : ".") + "/" + name;
}

ExperimentConfig small_config(FamilyKind family) {
  ExperimentConfig cfg;
  cfg.family = family;
  cfg.alpha = 1;
  cfg.k = 1;
  cfg.m = 1;
  cfg.N_list = {1, 3};
  cfg.epsilon_list = {0.1, 0.4};
  cfg.samples = 20;
  cfg.seed = 5;
  return cfg;
}

std::size_t count_fields(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("Wilson interval") {
  CHECK(wilson_interval(0, 40).first == 0.0);
  CHECK(wilson_interval(40, 40).second == 1.0);
  const auto [lo, hi] = wilson_interval(75, 100);
  CHECK(std::abs(lo - 0.657) <= 0.005);
  CHECK(std::abs(hi - 0.826) <= 0.005);
  // Closed form with z = 1.959963984540054.
  const double z = 1.959963984540054;
  const double p = 0.75;
  const double n = 100;
  const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double w = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  CHECK(lo == doctest::Approx(c - w).epsilon(1e-9));
  CHECK(hi == doctest::Approx(c + w).epsilon(1e-9));
  for (int hits = 0; hits <= 30; ++hits) {
    const auto [l, h] = wilson_interval(hits, 30);
    CHECK(l <= hits / 30.0);
    CHECK(h >= hits / 30.0);
  }
  CHECK_THROWS_AS(wilson_interval(5, 4), InvalidArgument);
  CHECK_THROWS_AS(wilson_interval(0, 0), InvalidArgument);
}

TEST_CASE("config parsing") {
  const auto cfg = ExperimentConfig::from_json(R"({
    "family": "unitary_conjugation", "alpha": 1, "k": 1, "m": 1,
    "N_list": [8, 64], "epsilon_list": [0.4], "samples": 10, "seed": 12345678901234,
    "g_spec": "random_unitary", "h_spec": [2, 1], "measure": "tau_full",
    "restarts": 2, "max_iters": 50, "tol": 1e-10, "timing": false})");
  CHECK(cfg.family == FamilyKind::unitary_conjugation);
  CHECK(cfg.N_list == std::vector<int>{8, 64});
  CHECK(cfg.seed == 12345678901234ull);
  CHECK(cfg.h_spec == "[2,1]");
  CHECK(cfg.measure == Measure::tau_full);
  CHECK(cfg.solver.restarts == 2);
  CHECK(cfg.solver.max_iters == 50);

  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"alpha": "one"})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json("{"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"seed": -3})"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"measure": "tau"})"), ConfigError);

  auto bad = small_config(FamilyKind::unitary_orthogonal);
  bad.seed.reset();
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = small_config(FamilyKind::unitary_orthogonal);
  bad.k = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);  // N = 1 < k
  bad = small_config(FamilyKind::unitary_orthogonal);
  bad.epsilon_list = {0.0};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = small_config(FamilyKind::unitary_orthogonal);
  bad.samples = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = small_config(FamilyKind::unitary_conjugation);
  bad.m = 2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  CHECK_THROWS_WITH_AS(ExperimentConfig::from_file("no/such/config.json"), doctest::Contains("no/such/config.json"),
                       ConfigError);
}

TEST_CASE("matrix sources") {
  const BlockSpec small{1, 1, 0, 1};
  CHECK(resolve_matrix_source("identity", FamilyKind::symmetric, small, nullptr, "g").permutation()->is_identity());
  CHECK(resolve_matrix_source("(1 2)", FamilyKind::symmetric, small, nullptr, "g").permutation()->images() ==
        std::vector<int>{2, 1});
  CHECK(resolve_matrix_source("2 1", FamilyKind::symmetric, small, nullptr, "g").permutation()->images() ==
        std::vector<int>{2, 1});
  CHECK_THROWS_AS(resolve_matrix_source("random_unitary", FamilyKind::symmetric, small, nullptr, "g"), ConfigError);
  RandomStream rng(1, 0);
  CHECK(resolve_matrix_source("random_unitary", FamilyKind::symmetric, small, &rng, "g").is_permutation());
  const auto u = resolve_matrix_source("random_unitary", FamilyKind::unitary_orthogonal, small, &rng, "g");
  CHECK(is_unitary(u.entries(), 1e-10));
  CHECK_THROWS_AS(resolve_matrix_source("(1 2 3)", FamilyKind::symmetric, small, nullptr, "g"), ConfigError);
  CHECK_THROWS_WITH_AS(resolve_matrix_source("missing_matrix.json", FamilyKind::symmetric, small, nullptr, "g"),
                       doctest::Contains("missing_matrix.json"), ConfigError);

  const auto path = temp_path("source_matrix.json");
  write_text_file(path, matrix_to_json(u));
  const auto back = resolve_matrix_source(path, FamilyKind::unitary_orthogonal, small, nullptr, "g");
  CHECK((back.entries() - u.entries()).norm() == 0.0);
  CHECK_THROWS_AS(resolve_matrix_source(path, FamilyKind::symmetric, small, nullptr, "g"), ConfigError);

  write_text_file(path, R"({"dim": 2, "re": [[2, 0], [0, 1]]})");
  CHECK_THROWS_WITH_AS(resolve_matrix_source(path, FamilyKind::unitary_orthogonal, small, nullptr, "g"),
                       doctest::Contains("not unitary"), ConfigError);
}

TEST_CASE("matrix JSON round trip") {
  RandomStream rng(2, 0);
  Matrix m(2, 2);
  m << std::complex<double>(0.1, 1.0 / 3.0), 2.5, std::complex<double>(-1e-300, 7.0), 1.0 / 7.0;
  const auto back = matrix_from_json(matrix_to_json(BlockMatrix(m)));
  CHECK((back.entries().array() == m.array()).all());
  const auto p = matrix_from_json(matrix_to_json(BlockMatrix(Permutation::parse("(1 3)"))));
  CHECK(p.permutation()->cycles() == "(1 3)");
  CHECK_THROWS_AS(matrix_from_json(R"({"dim": 2, "re": [[1, 0]]})"), InvalidArgument);
  CHECK_THROWS_AS(matrix_from_json(R"({"perm": [1, 1]})"), InvalidArgument);
  CHECK_THROWS_AS(matrix_from_json("[]"), InvalidArgument);
}

TEST_CASE("identity inputs always hit") {
  for (auto family : {FamilyKind::unitary_orthogonal, FamilyKind::unitary_conjugation, FamilyKind::symmetric}) {
    auto cfg = small_config(family);
    for (auto measure : {Measure::tau_tilde, Measure::tau_full}) {
      cfg.measure = measure;
      const auto report = run_concentration(cfg);
      REQUIRE(report.rows.size() == 4);
      for (const auto& row : report.rows) {
        CHECK(row.hits == row.samples);
        CHECK(row.fraction == 1.0);
        CHECK(row.ci_high == 1.0);
        CHECK(row.median_dist <= 1e-8);
      }
    }
  }
}

TEST_CASE("rows are ordered N-major and carry the config") {
  auto cfg = small_config(FamilyKind::unitary_orthogonal);
  cfg.g_spec = "random_unitary";
  cfg.h_spec = "random_unitary";
  const auto report = run_concentration(cfg);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].N == 1);
  CHECK(report.rows[0].epsilon == 0.1);
  CHECK(report.rows[1].N == 1);
  CHECK(report.rows[1].epsilon == 0.4);
  CHECK(report.rows[2].N == 3);
  for (const auto& r : report.rows) {
    CHECK(r.hits <= r.samples);
    CHECK(r.ci_low <= r.fraction);
    CHECK(r.fraction <= r.ci_high);
    CHECK(r.seed == 5u);
    CHECK(r.runtime_s == 0.0);
  }
  // Larger epsilon never has fewer hits.
  CHECK(report.rows[1].hits >= report.rows[0].hits);
}

TEST_CASE("symmetric fixture agrees with the exact law") {
  ExperimentConfig cfg;
  cfg.family = FamilyKind::symmetric;
  cfg.N_list = {3};
  cfg.epsilon_list = {0.5};
  cfg.samples = 2400;
  cfg.seed = 2024;
  cfg.g_spec = "(1 2)";
  cfg.h_spec = "(1 2)";
  const auto row = run_concentration(cfg).rows.at(0);
  CHECK(row.ci_low <= 0.75);
  CHECK(row.ci_high >= 0.75);
}

TEST_CASE("reports are reproducible") {
  auto cfg = small_config(FamilyKind::unitary_conjugation);
  cfg.g_spec = "random_unitary";
  cfg.h_spec = "random_unitary";
  const auto a = format_report(run_concentration(cfg), ReportFormat::csv);
  const auto b = format_report(run_concentration(cfg), ReportFormat::csv);
  CHECK(a == b);
  cfg.seed = 6;
  CHECK(format_report(run_concentration(cfg), ReportFormat::csv) != a);
}

TEST_CASE("hits re-verify") {
  auto cfg = small_config(FamilyKind::unitary_orthogonal);
  cfg.g_spec = "random_unitary";
  cfg.h_spec = "random_unitary";
  cfg.measure = Measure::tau_full;
  const auto inputs = resolve_inputs(cfg);
  for (const int n : {1, 4, 12}) {
    for (const auto& o : run_samples(cfg, inputs, n)) CHECK(o.witness_gap <= 1e-10);
  }
}

TEST_CASE("reduced and full measures agree on coset neighborhoods") {
  // Compare at N = k, where both go through the same general solver, and
  // for the symmetric family through exact membership.
  for (auto family : {FamilyKind::unitary_orthogonal, FamilyKind::symmetric}) {
    ExperimentConfig cfg;
    cfg.family = family;
    cfg.N_list = {family == FamilyKind::symmetric ? 3 : 1};
    cfg.epsilon_list = {0.4};
    cfg.samples = 400;
    cfg.seed = 31;
    cfg.g_spec = "random_unitary";
    cfg.h_spec = "random_unitary";
    cfg.measure = Measure::tau_tilde;
    const auto reduced = run_concentration(cfg).rows.at(0);
    cfg.measure = Measure::tau_full;
    const auto full = run_concentration(cfg).rows.at(0);
    const double p1 = reduced.fraction;
    const double p2 = full.fraction;
    const double se = std::sqrt(p1 * (1 - p1) / 400 + p2 * (1 - p2) / 400);
    CHECK(std::abs(p1 - p2) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("CSV and JSON output") {
  CHECK(format_report(ConcentrationReport{}, ReportFormat::csv) ==
        "family,alpha,k,m,N,epsilon,samples,hits,fraction,ci_low,ci_high,median_dist,mean_dist,seed,runtime_s\n");

  auto cfg = small_config(FamilyKind::symmetric);
  cfg.g_spec = "(1 2)";
  const auto report = run_concentration(cfg);
  std::istringstream csv(format_report(report, ReportFormat::csv));
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) {
    CHECK(count_fields(line) == 15);
    ++lines;
  }
  CHECK(lines == 1 + static_cast<int>(report.rows.size()));

  ConcentrationReport one;
  one.rows.push_back(report.rows.at(0));
  one.rows[0].mean_dist = 1.0 / 3.0;
  one.rows[0].runtime_s = 0.1 + 0.2;
  one.rows[0].seed = 18446744073709551615ull;
  CHECK(parse_report_json(format_report(one, ReportFormat::json)) == one);

  const auto path = temp_path("report.csv");
  write_report(report, path, ReportFormat::csv);
  CHECK(read_text_file(path) == format_report(report, ReportFormat::csv));
  CHECK_THROWS_WITH_AS(write_report(report, "/nonexistent-dir/r.csv", ReportFormat::csv),
                       doctest::Contains("/nonexistent-dir/r.csv"), IoError);
}

TEST_CASE("block decay") {
  const auto rows = run_block_decay(2, {0, 20, 200}, 60, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].median_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rows[2].median_norm < 0.5 * rows[1].median_norm);
  CHECK(rows[2].median_norm <= 3.0 * std::sqrt(2.0 / 200));
  CHECK_THROWS_AS(run_block_decay(2, {20}, 29, 3), InvalidArgument);
  const auto csv = format_block_decay(rows, ReportFormat::csv);
  CHECK(csv.rfind("k,N,samples,median_norm,mean_norm,seed\n", 0) == 0);
  CHECK(format_block_decay(run_block_decay(2, {0, 20, 200}, 60, 3), ReportFormat::json) ==
        format_block_decay(rows, ReportFormat::json));
}

TEST_CASE("shortest round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.75) == "0.75");
  CHECK(format_double(1.0) == "1");
}

}  // TEST_SUITE
