// Command-line front end: depth, classify, simulate, experiment, cv.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fdepth/datasets.hpp"
#include "fdepth/experiments.hpp"

using namespace fdepth;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Common {
  Seed seed = 0;
  std::string format = "markdown";
  std::string out;
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write " + path);
  f << text;
}

LabeledSample load_labeled(const std::string& path) {
  const auto table = load_curves_csv(path);
  return to_labeled(table, to_sample(table));
}

FunctionalSample load_sample(const std::string& path) { return to_sample(load_curves_csv(path)); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Parses "WMD+KFSD" style names; KFSD gets `percentile` when given.
ClassifierSpec parse_classifier(const std::string& name, std::optional<double> percentile, int k,
                                double alpha, int projections, Seed seed) {
  const auto plus = name.find('+');
  const Method m = parse_method(name.substr(0, plus));
  if (m == Method::KNN) return ClassifierSpec::knn(k, derive_seed(seed, {key(Stream::TieBreak)}));
  if (plus == std::string::npos) throw Error(ErrorKind::ConfigError, "method needs a depth: " + name);
  const DepthKind kind = parse_depth_kind(name.substr(plus + 1));
  DepthSpec d = DepthSpec::defaults(kind, derive_seed(seed, {key(Stream::Projection)}));
  if (kind == DepthKind::RTD || kind == DepthKind::IDD) d.num_projections = projections;
  if (kind == DepthKind::KFSD && percentile) d.bandwidth_percentile = *percentile;
  const Seed tie = derive_seed(seed, {key(Stream::TieBreak)});
  switch (m) {
    case Method::DTM: return ClassifierSpec::dtm(d, alpha, tie);
    case Method::WAD: return ClassifierSpec::wad(d, tie);
    default: return ClassifierSpec::wmd(d, tie);
  }
}

int run_depth(const Common& c, const std::string& data, const std::string& queries,
              const std::string& depth_name, std::optional<double> percentile, int projections,
              std::optional<int> group) {
  const DepthKind kind = parse_depth_kind(depth_name);
  DepthSpec spec = DepthSpec::defaults(kind, derive_seed(c.seed, {key(Stream::Projection)}));
  if (kind == DepthKind::RTD || kind == DepthKind::IDD) spec.num_projections = projections;
  if (percentile) spec.bandwidth_percentile = *percentile;
  spec.validate();

  const auto table = load_curves_csv(data);
  FunctionalSample sample = to_sample(table);
  if (group) sample = to_labeled(table, sample).group(static_cast<Label>(*group));
  const FunctionalSample q = queries.empty() ? sample : load_sample(queries);
  const DepthModel model(sample, spec);
  const auto values = evaluate_all(model, q);

  const bool csv = parse_table_format(c.format) == TableFormat::Csv;
  std::string text = csv ? "index,depth\n" : "| index | " + std::string(to_string(kind)) + " |\n|---|---|\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    text += csv ? std::to_string(i) + "," + fmt(values[i]) + "\n"
                : "| " + std::to_string(i) + " | " + fmt(values[i]) + " |\n";
  write_output(text, c.out);
  return 0;
}

int run_classify(const Common& c, const std::string& train_path, const std::string& test_path,
                 ClassifierSpec spec, std::size_t folds, const std::vector<double>& grid) {
  const LabeledSample train = load_labeled(train_path);
  const auto test_table = load_curves_csv(test_path);
  const FunctionalSample test = to_sample(test_table);

  std::string note;
  if (spec.depth && spec.depth->kind == DepthKind::KFSD && !spec.depth->bandwidth_percentile) {
    const auto plan = make_cv_plan(train, folds, derive_seed(c.seed, {key(Stream::CvPlan)}));
    const auto choice = cv_select_percentile(train, spec, grid, plan);
    spec.depth->bandwidth_percentile = choice.percentile;
    note = "selected percentile " + fmt(choice.percentile) + "\n";
  }
  const Classifier clf(train, spec);
  const auto preds = clf.predict_all(test);

  const bool csv = parse_table_format(c.format) == TableFormat::Csv;
  std::string text = csv ? "index,label,score0,score1,tie\n"
                         : "| index | label | score 0 | score 1 | tie |\n|---|---|---|---|---|\n";
  std::size_t wrong = 0, known = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    const std::string tie = p.tie_broken ? "yes" : "no";
    if (csv)
      text += std::to_string(i) + "," + std::to_string(p.label) + "," + fmt(p.scores[0]) + "," +
              fmt(p.scores[1]) + "," + tie + "\n";
    else
      text += "| " + std::to_string(i) + " | " + std::to_string(p.label) + " | " + fmt(p.scores[0]) +
              " | " + fmt(p.scores[1]) + " | " + tie + " |\n";
    if (test_table.labels[i]) {
      ++known;
      wrong += *test_table.labels[i] != p.label;
    }
  }
  write_output(text, c.out);
  std::cerr << note;
  if (known) std::cerr << "misclassified " << wrong << " of " << known << "\n";
  return 0;
}

int run_cv(const Common& c, const std::string& data, const ClassifierSpec& spec, std::size_t folds,
           const std::vector<double>& grid) {
  const LabeledSample s = load_labeled(data);
  const auto plan = make_cv_plan(s, folds, derive_seed(c.seed, {key(Stream::CvPlan)}));
  const auto choice = cv_select_percentile(s, spec, grid, plan);

  const bool csv = parse_table_format(c.format) == TableFormat::Csv;
  std::string text = csv ? "percentile,errors,secondary\n"
                         : "| percentile | errors | secondary |\n|---|---|---|\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    text += csv ? fmt(grid[i]) + "," + std::to_string(choice.errors[i]) + "," + fmt(choice.secondary[i]) + "\n"
                : "| " + fmt(grid[i]) + " | " + std::to_string(choice.errors[i]) + " | " +
                      fmt(choice.secondary[i]) + " |\n";
  text += (csv ? "# " : "\n") + std::string("selected ") + fmt(choice.percentile) + " (tie level " +
          std::string(to_string(choice.tie_level)) + ", CV required: " + (choice.required_cv ? "yes" : "no") +
          ")\n";
  write_output(text, c.out);
  return 0;
}

int run_simulate(const Common& c, CgpSpec spec) {
  spec.seed = c.seed;
  spec.validate();
  write_output(format_curves_csv(generate_cgp(spec)), c.out);
  return 0;
}

int run_experiment_cmd(const Common& c, const std::string& path, bool seed_set,
                       std::optional<std::size_t> replications, bool format_set, bool timings) {
  ExperimentConfig cfg = load_experiment_config(path);
  if (seed_set) cfg.master_seed = c.seed;
  if (replications) {
    cfg.replications = *replications;
    if (auto* ds = std::get_if<DatasetSource>(&cfg.source)) ds->scheme.replications = *replications;
  }
  if (format_set) cfg.format = parse_table_format(c.format);
  if (!c.out.empty()) cfg.output = c.out;
  cfg.validate();

  const auto summary = run_experiment(cfg);
  std::string text;
  if (!summary.title.empty())
    text += cfg.format == TableFormat::Markdown ? "## " + summary.title + "\n\n" : "# " + summary.title + "\n";
  text += emit_table(summary, cfg.format);
  const std::string cv = emit_cv_table(summary, cfg.format);
  if (!cv.empty()) text += "\n" + cv;
  if (timings) text += "\n" + emit_timings(summary);
  write_output(text, cfg.output ? cfg.output->string() : std::string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional depths and depth-based classification of curves"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Master seed");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "markdown"}));
    sub->add_option("--out", common.out, "Write output to this path instead of stdout");
  };

  std::string data, queries, depth_name = "KFSD", method = "WMD+KFSD", train, test, config;
  std::optional<double> percentile;
  std::optional<int> group;
  std::optional<std::size_t> replications;
  int projections = 50, k = 5;
  double alpha = 0.2;
  std::size_t folds = 5;
  std::vector<double> grid = kDefaultPercentiles;
  bool timings = false;
  CgpSpec cgp;
  std::string model = "CGP1";

  auto* depth = app.add_subcommand("depth", "Depth of curves relative to a sample");
  depth->add_option("data", data, "Sample CSV")->required();
  depth->add_option("--queries", queries, "Curves to evaluate (default: the sample itself)");
  depth->add_option("--depth", depth_name, "FMD, HMD, RTD, IDD, MBD, FSD or KFSD");
  depth->add_option("--percentile", percentile, "Bandwidth percentile for HMD/KFSD");
  depth->add_option("--projections", projections, "Random projections for RTD/IDD");
  depth->add_option("--group", group, "Use only the curves with this label as the sample");
  add_common(depth);

  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", method, "DTM+<depth>, WAD+<depth>, WMD+<depth> or KNN");
    sub->add_option("--alpha", alpha, "DTM trimming proportion");
    sub->add_option("-k", k, "Neighbours for KNN");
    sub->add_option("--projections", projections, "Random projections for RTD/IDD");
    sub->add_option("--folds", folds, "Cross-validation folds");
    sub->add_option("--percentiles", grid, "Candidate KFSD bandwidth percentiles")->delimiter(',');
  };

  auto* classify = app.add_subcommand("classify", "Train on labeled curves, predict test curves");
  classify->add_option("train", train, "Labeled training CSV")->required();
  classify->add_option("test", test, "Test CSV (labels optional)")->required();
  classify->add_option("--percentile", percentile, "Fixed KFSD percentile (default: chosen by CV)");
  add_method(classify);
  add_common(classify);

  auto* cv = app.add_subcommand("cv", "Cross-validated KFSD bandwidth percentile");
  cv->add_option("data", data, "Labeled CSV")->required();
  add_method(cv);
  add_common(cv);

  auto* simulate = app.add_subcommand("simulate", "Generate curves from a simulation model");
  simulate->add_option("--model", model, "CGP1, CGP2, CGP3 or CGP4");
  simulate->add_flag("--contaminated", cgp.contaminated, "Contaminate group 0");
  simulate->add_option("-q", cgp.q, "Contamination probability");
  simulate->add_option("--n0", cgp.n0, "Curves in group 0");
  simulate->add_option("--n1", cgp.n1, "Curves in group 1");
  simulate->add_option("--grid-points", cgp.grid_points, "Equidistant points on [0, 1]");
  add_common(simulate);

  auto* experiment = app.add_subcommand("experiment", "Run a misclassification study from a config");
  experiment->add_option("config", config, "INI config")->required()->check(CLI::ExistingFile);
  experiment->add_option("--replications", replications, "Override the replication count");
  experiment->add_flag("--timings", timings, "Append mean training times");
  add_common(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*depth) return run_depth(common, data, queries, depth_name, percentile, projections, group);
    if (*classify || *cv) {
      const auto spec = parse_classifier(method, percentile, k, alpha, projections, common.seed);
      spec.validate();
      if (*classify) return run_classify(common, train, test, spec, folds, grid);
      if (!spec.depth || spec.depth->kind != DepthKind::KFSD)
        throw Error(ErrorKind::ConfigError, "cv needs a KFSD method");
      return run_cv(common, data, spec, folds, grid);
    }
    if (*simulate) {
      cgp.model = parse_cgp_model(model);
      return run_simulate(common, cgp);
    }
    if (*experiment)
      return run_experiment_cmd(common, config, experiment->count("--seed") > 0, replications,
                                experiment->count("--format") > 0, timings);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto kind = e.kind();
    return kind == ErrorKind::ConfigError || kind == ErrorKind::InvalidArgument ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
