#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fdepth/error.hpp"
#include "fdepth/experiments.hpp"

using namespace fdepth;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const std::string kFixtures = FDEPTH_FIXTURES;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig small_cgp_config() {
  ExperimentConfig cfg;
  SimulatedSource sim;
  sim.cgp.n0 = sim.cgp.n1 = 20;
  sim.cgp.grid_points = 21;
  sim.train_per_group = {10, 10};
  cfg.source = sim;
  cfg.methods = {ClassifierSpec::wmd(DepthSpec::kfsd(50)), ClassifierSpec::wad(DepthSpec::fsd()),
                 ClassifierSpec::dtm(DepthSpec::mbd(), 0.2), ClassifierSpec::wmd(DepthSpec::rtd()),
                 ClassifierSpec::knn(5)};
  cfg.replications = 4;
  cfg.master_seed = 2024;
  return cfg;
}

}  // namespace

TEST_CASE("summarize examples") {
  const auto zero = summarize_rates({"KNN"}, {{0.0, 0.0, 0.0}});
  CHECK(zero.methods[0].mean_pct == 0.0);
  CHECK(zero.methods[0].sd_pct == 0.0);

  const auto two = summarize_rates({"WMD+KFSD"}, {{0.10, 0.20}});
  CHECK_THAT(two.at("WMD+KFSD").mean_pct, WithinAbs(15.0, 1e-12));
  CHECK_THAT(two.at("WMD+KFSD").sd_pct, WithinAbs(std::sqrt(50.0), 1e-12));
  CHECK_THAT(two.at("WMD+KFSD").sd_pct, WithinAbs(7.071, 1e-3));
  CHECK(two.at("WMD+KFSD").depth == DepthKind::KFSD);
  CHECK_THROWS_AS(two.at("DTM+FMD"), Error);
  CHECK_THROWS_AS(summarize_rates({}, {}), Error);
}

TEST_CASE("emit_table examples") {
  SECTION("single method gives one data row") {
    const auto s = summarize_rates({"WMD+FSD"}, {{0.02, 0.04}});
    const auto md = emit_table(s, TableFormat::Markdown);
    std::size_t lines = 0;
    for (char c : md) lines += c == '\n';
    CHECK(lines == 3);  // header, separator, one row
    CHECK_THAT(md, ContainsSubstring("| WMD | 3.00 (1.41) |"));
  }
  SECTION("procedures are rows, depths are columns, k-NN gets its own row") {
    const auto s = summarize_rates({"DTM+FMD", "DTM+KFSD", "WMD+FMD", "KNN"},
                             {{0.0, 0.1}, {0.0, 0.0}, {0.2, 0.2}, {0.05, 0.05}});
    const auto rows = parse_csv(emit_table(s, TableFormat::Csv));
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"Method/Depth", "FMD", "KFSD"});
    CHECK(rows[1] == std::vector<std::string>{"DTM", "5.00", "0.00"});
    CHECK(rows[2] == std::vector<std::string>{"DTM (sd)", "7.07", "0.00"});
    CHECK(rows[3] == std::vector<std::string>{"WMD", "20.00", ""});
    CHECK(rows[5][0] == "k-NN");
    CHECK(rows[5][1] == "5.00");
  }
  SECTION("empty method lists are rejected before any table exists") {
    ExperimentConfig cfg = small_cgp_config();
    cfg.methods.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
  }
}

TEST_CASE("csv tables reparse to the summary up to rounding") {
  const auto s = summarize_rates({"DTM+FSD", "WAD+FSD", "WMD+FSD", "WMD+KFSD", "KNN"},
                           {{0.013, 0.02, 0.0}, {0.1, 0.3, 0.25}, {0.0, 0.0, 0.04}, {0.5, 0.5, 0.51}, {0.2, 0.1, 0.3}});
  const auto rows = parse_csv(emit_table(s, TableFormat::Csv));
  const auto& header = rows[0];
  std::size_t checked = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::string head = rows[r][0];
    const bool is_sd = head.size() > 5 && head.substr(head.size() - 5) == " (sd)";
    if (is_sd) head = head.substr(0, head.size() - 5);
    for (std::size_t c = 1; c < rows[r].size(); ++c) {
      if (rows[r][c].empty()) continue;
      const std::string name = head == "k-NN" ? "KNN" : head + "+" + header[c];
      const auto& m = s.at(name);
      CHECK_THAT(std::stod(rows[r][c]), WithinAbs(is_sd ? m.sd_pct : m.mean_pct, 0.005 + 1e-12));
      ++checked;
    }
  }
  CHECK(checked == 10);
}

TEST_CASE("counts mode prints integer totals") {
  ExperimentSummary s = summarize_rates({"WMD+KFSD", "KNN"}, {{0.0, 1.0, 1.0}, {1.0, 0.0, 0.0}});
  s.counts_mode = true;
  s.methods[0].total_misclassified = 2;
  s.methods[1].total_misclassified = 1;
  const auto rows = parse_csv(emit_table(s, TableFormat::Csv));
  CHECK(rows[1] == std::vector<std::string>{"WMD", "2"});
  CHECK(rows[2] == std::vector<std::string>{"k-NN", "1"});
}

TEST_CASE("cv table and ordinals") {
  CHECK(ordinal(15) == "15th");
  CHECK(ordinal(33) == "33rd");
  CHECK(ordinal(22) == "22nd");
  CHECK(ordinal(11) == "11th");
  CHECK(ordinal(51) == "51st");
  ExperimentSummary s = summarize_rates({"WMD+KFSD"}, {{0.0, 0.0}});
  s.methods[0].cv_required_fraction = 0.56;
  s.methods[0].best_percentiles = {15, 25};
  const auto rows = parse_csv(emit_cv_table(s, TableFormat::Csv));
  CHECK(rows[1] == std::vector<std::string>{"WMD+KFSD", "56.00", "15th 25th"});
  CHECK(emit_cv_table(summarize_rates({"KNN"}, {{0.0}}), TableFormat::Csv).empty());
}

TEST_CASE("run_replication on a simulated source") {
  ExperimentConfig cfg;
  SimulatedSource sim;  // CGP1, 50 + 50, 25 + 25 training
  cfg.source = sim;
  cfg.methods = {ClassifierSpec::knn(5)};
  cfg.replications = 1;
  const auto r = run_replication(cfg, 0);
  REQUIRE(r.outcomes.size() == 1);
  CHECK(r.outcomes[0].test_size == 50);
  CHECK(r.outcomes[0].error_rate() >= 0.0);
  CHECK(r.outcomes[0].error_rate() <= 1.0);
  CHECK_FALSE(r.outcomes[0].choice.has_value());
}

TEST_CASE("separable groups give zero error for every method") {
  ExperimentConfig cfg;
  DatasetSource ds;
  ds.path = kFixtures + "/separable_twins.csv";
  ds.scheme.kind = SplitScheme::Kind::T2;
  cfg.source = ds;
  cfg.methods = all_methods();
  cfg.cv_folds = 5;
  const Experiment exp(cfg);
  CHECK(exp.counts_mode());
  CHECK(exp.replication_count() == 32);
  const auto summary = summarize(cfg, exp.run_all(), exp.counts_mode());
  REQUIRE(summary.methods.size() == 22);
  for (const auto& m : summary.methods) {
    INFO(m.name);
    CHECK(m.total_misclassified == 0);
    CHECK(m.ties == 0);
  }
  CHECK(summary.at("WMD+KFSD").cv_required_fraction.has_value());
}

TEST_CASE("experiments are deterministic and replications independent of the count") {
  const auto cfg = small_cgp_config();
  const auto a = emit_table(run_experiment(cfg), TableFormat::Csv);
  const auto b = emit_table(run_experiment(cfg), TableFormat::Csv);
  CHECK(a == b);

  auto longer = cfg;
  longer.replications = 6;
  const Experiment e4(cfg), e6(longer);
  const auto r4 = e4.run_all(), r6 = e6.run_all();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t j = 0; j < cfg.methods.size(); ++j) {
      CHECK(r4[r].outcomes[j].misclassified == r6[r].outcomes[j].misclassified);
      if (r4[r].outcomes[j].choice) CHECK(r4[r].outcomes[j].choice->percentile == r6[r].outcomes[j].choice->percentile);
    }

  // Parallel and one-at-a-time replications agree.
  for (std::size_t r = 0; r < 4; ++r) {
    const auto single = e4.run_replication(r);
    for (std::size_t j = 0; j < cfg.methods.size(); ++j)
      CHECK(single.outcomes[j].misclassified == r4[r].outcomes[j].misclassified);
  }
}

TEST_CASE("summary statistics recompute from stored error vectors") {
  const auto cfg = small_cgp_config();
  const auto s = run_experiment(cfg);
  for (const auto& m : s.methods) {
    REQUIRE(m.error_rates.size() == 4);
    double mean = 0.0;
    for (double r : m.error_rates) mean += 100.0 * r / 4.0;
    double ss = 0.0;
    for (double r : m.error_rates) ss += (100.0 * r - mean) * (100.0 * r - mean);
    CHECK_THAT(m.mean_pct, WithinAbs(mean, 1e-12));
    CHECK_THAT(m.sd_pct, WithinAbs(std::sqrt(ss / 3.0), 1e-12));
  }
  const auto& k = s.at("WMD+KFSD");
  REQUIRE(k.cv_required_fraction.has_value());
  std::size_t total = 0;
  for (const auto& [p, c] : k.percentile_counts) total += c;
  CHECK(total == 4);
  CHECK_FALSE(k.best_percentiles.empty());
}

TEST_CASE("train and test are disjoint in every replication") {
  ExperimentConfig cfg;
  DatasetSource ds;
  ds.path = kFixtures + "/growth_synthetic.csv";
  ds.scheme.kind = SplitScheme::Kind::T1;
  ds.scheme.train_per_group = {8, 6};
  ds.regrid_points = 41;
  cfg.source = ds;
  cfg.methods = {ClassifierSpec::knn(5)};
  cfg.replications = 5;
  const Experiment exp(cfg);
  for (std::size_t r = 0; r < 5; ++r) {
    const auto [train, test] = exp.train_test(r);
    CHECK(train.size() == 14);
    CHECK(test.size() == 7);
    for (const auto& x : test.sample().curves())
      for (const auto& y : train.sample().curves()) CHECK_FALSE(x == y);
  }
}

TEST_CASE("config parsing") {
  SECTION("simulated source with explicit methods") {
    const auto cfg = parse_experiment_config(R"(
[experiment]
title = CGP2 check
replications = 7
seed = 99

[source]
kind = cgp
model = CGP2
contaminated = true
q = 0.2
n0 = 30
n1 = 40
train0 = 10
train1 = 20

[methods]
list = WMD+KFSD, DTM+FMD, KNN

[parameters]
alpha = 0.1
k = 3

[cv]
folds = 4
percentiles = 25, 50

[output]
format = csv
)");
    CHECK(cfg.title == "CGP2 check");
    CHECK(cfg.replications == 7);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.cv_folds == 4);
    CHECK(cfg.percentiles == std::vector<double>{25, 50});
    CHECK(cfg.format == TableFormat::Csv);
    const auto& sim = std::get<SimulatedSource>(cfg.source);
    CHECK(sim.cgp.model == CgpModel::CGP2);
    CHECK(sim.cgp.contaminated);
    CHECK(sim.cgp.q == 0.2);
    CHECK(sim.train_per_group == std::array<std::size_t, 2>{10, 20});
    REQUIRE(cfg.methods.size() == 3);
    CHECK(cfg.methods[0].name() == "WMD+KFSD");
    CHECK(cfg.methods[1].alpha == 0.1);
    CHECK(cfg.methods[2].k == 3);
  }
  SECTION("defaults give all 22 methods") {
    const auto cfg = parse_experiment_config("[source]\nmodel = CGP1\n");
    CHECK(cfg.methods.size() == 22);
    CHECK(cfg.replications == 125);
    CHECK(std::get<SimulatedSource>(cfg.source).train_per_group == std::array<std::size_t, 2>{25, 25});
  }
  SECTION("dataset paths resolve against the config directory") {
    const auto cfg = parse_experiment_config(
        "[source]\nkind = dataset\npath = growth.csv\nscheme = T1\ntrain0 = 40\ntrain1 = 30\nregrid_points = 101\n",
        "/data/studies");
    const auto& ds = std::get<DatasetSource>(cfg.source);
    CHECK(ds.path == std::filesystem::path("/data/studies/growth.csv"));
    CHECK(ds.regrid_points == std::size_t{101});
  }
  SECTION("errors are config errors") {
    auto kind = [](const std::string& text) {
      try {
        parse_experiment_config(text);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::InvalidArgument;
    };
    CHECK(kind("[source]\nmodel = CGP9\n") == ErrorKind::ConfigError);
    CHECK(kind("[experiment]\nreplications = many\n[source]\nmodel = CGP1\n") == ErrorKind::ConfigError);
    CHECK(kind("[source]\nkind = dataset\n") == ErrorKind::ConfigError);
    CHECK(kind("[source]\nmodel = CGP1\n[methods]\nlist = WMD\n") == ErrorKind::ConfigError);
    CHECK(kind("[source]\nmodel = CGP3\ncontaminated = true\n") == ErrorKind::ConfigError);
    CHECK(kind("[source\n") == ErrorKind::ConfigError);
    CHECK(kind("[source]\nmodel = CGP1\n[methods]\nlist = \n") == ErrorKind::ConfigError);
    CHECK(kind("[source]\nkind = dataset\npath = x.csv\nscheme = T2\nregrid_points = -4\n") == ErrorKind::ConfigError);
  }
}
