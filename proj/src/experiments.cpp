#include "fdepth/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "fdepth/parallel.hpp"

namespace fdepth {

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown" || name == "md") return TableFormat::Markdown;
  throw Error(ErrorKind::ConfigError, "unknown table format '" + std::string(name) + "'");
}

std::vector<ClassifierSpec> all_methods() {
  std::vector<ClassifierSpec> out;
  for (auto m : {Method::DTM, Method::WAD, Method::WMD})
    for (auto d : kAllDepths) {
      const auto depth = DepthSpec::defaults(d);
      switch (m) {
        case Method::DTM: out.push_back(ClassifierSpec::dtm(depth, 0.2)); break;
        case Method::WAD: out.push_back(ClassifierSpec::wad(depth)); break;
        default: out.push_back(ClassifierSpec::wmd(depth)); break;
      }
    }
  out.push_back(ClassifierSpec::knn(5));
  return out;
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw Error(ErrorKind::ConfigError, "no methods configured");
  if (replications < 1) throw Error(ErrorKind::ConfigError, "replications must be at least 1");
  if (cv_folds < 2) throw Error(ErrorKind::ConfigError, "cv folds must be at least 2");
  if (percentiles.empty()) throw Error(ErrorKind::ConfigError, "empty percentile grid");
  for (double p : percentiles)
    if (!(p > 0.0 && p < 100.0)) throw Error(ErrorKind::ConfigError, "percentiles must lie in (0, 100)");
  for (const auto& m : methods) {
    try {
      m.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, m.name() + ": " + e.what());
    }
  }
  if (const auto* sim = std::get_if<SimulatedSource>(&source)) {
    try {
      sim->cgp.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, e.what());
    }
    if (sim->train_per_group[0] >= sim->cgp.n0 || sim->train_per_group[1] >= sim->cgp.n1 ||
        sim->train_per_group[0] == 0 || sim->train_per_group[1] == 0)
      throw Error(ErrorKind::ConfigError, "training sizes must be positive and below the group sizes");
  }
}

Experiment::Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  if (auto* ds = std::get_if<DatasetSource>(&cfg_.source)) {
    auto table = load_curves_csv(ds->path);
    if (ds->truncate_to) table = truncate_domain(table, *ds->truncate_to);
    auto sample = ds->regrid_points ? natural_cubic_regrid(table, *ds->regrid_points) : to_sample(table);
    data_ = to_labeled(table, std::move(sample));
    validate_labeled_sample(*data_);
    ds->scheme.seed = derive_seed(cfg_.master_seed, {key(Stream::Split)});
  }
}

bool Experiment::counts_mode() const {
  const auto* ds = std::get_if<DatasetSource>(&cfg_.source);
  return ds && ds->scheme.kind == SplitScheme::Kind::T2;
}

std::size_t Experiment::replication_count() const {
  return counts_mode() ? data_->size() : cfg_.replications;
}

std::pair<LabeledSample, LabeledSample> Experiment::train_test(std::size_t r) const {
  if (const auto* sim = std::get_if<SimulatedSource>(&cfg_.source)) {
    auto spec = sim->cgp;
    spec.seed = derive_seed(cfg_.master_seed, {key(Stream::Data), r});
    const auto all = generate_cgp(spec);
    std::vector<std::size_t> train, test;
    std::array<std::size_t, 2> taken{0, 0};
    for (std::size_t i = 0; i < all.size(); ++i) {
      const Label g = all.labels()[i];
      (taken[g]++ < sim->train_per_group[g] ? train : test).push_back(i);
    }
    return {all.subset(train), all.subset(test)};
  }
  const auto& ds = std::get<DatasetSource>(cfg_.source);
  auto split = ds.scheme.kind == SplitScheme::Kind::T1 ? split_t1(*data_, ds.scheme, r)
                                                       : split_t2(*data_, r);
  return {std::move(split.train), std::move(split.test)};
}

ReplicationResult Experiment::run_replication(std::size_t r) const {
  using Clock = std::chrono::steady_clock;
  const auto [train, test] = train_test(r);
  const Seed proj_seed = derive_seed(cfg_.master_seed, {key(Stream::Projection), r});

  std::optional<CvPlan> plan;
  ReplicationResult out{r, {}};
  out.outcomes.reserve(cfg_.methods.size());
  for (std::size_t j = 0; j < cfg_.methods.size(); ++j) {
    auto spec = cfg_.methods[j];
    spec.tie_seed = derive_seed(cfg_.master_seed, {key(Stream::TieBreak), r, j});
    MethodOutcome outcome;
    if (spec.depth) {
      auto& d = *spec.depth;
      if (d.kind == DepthKind::RTD || d.kind == DepthKind::IDD) d.projection_seed = proj_seed;
      if (d.kind == DepthKind::KFSD) {
        if (!plan)
          plan = make_cv_plan(train, cfg_.cv_folds, derive_seed(cfg_.master_seed, {key(Stream::CvPlan), r}));
        outcome.choice = cv_select_percentile(train, spec, cfg_.percentiles, *plan);
        d.bandwidth_percentile = outcome.choice->percentile;
      }
    }
    const auto t0 = Clock::now();
    const Classifier clf(train, spec);
    outcome.train_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

    const auto preds = clf.predict_all_serial(test.sample());
    outcome.test_size = preds.size();
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (preds[i].label != test.labels()[i]) ++outcome.misclassified;
      if (preds[i].tie_broken) ++outcome.ties;
    }
    out.outcomes.push_back(std::move(outcome));
  }
  return out;
}

std::vector<ReplicationResult> Experiment::run_all() const {
  std::vector<ReplicationResult> results(replication_count());
  parallel_for(results.size(), [&](std::size_t r) { results[r] = run_replication(r); });
  return results;
}

ReplicationResult run_replication(const ExperimentConfig& cfg, std::size_t r) {
  return Experiment(cfg).run_replication(r);
}

const MethodSummary& ExperimentSummary::at(std::string_view name) const {
  for (const auto& m : methods)
    if (m.name == name) return m;
  throw Error(ErrorKind::InvalidArgument, "no method '" + std::string(name) + "' in summary");
}

namespace {

void fill_moments(MethodSummary& m) {
  const auto n = static_cast<double>(m.error_rates.size());
  if (m.error_rates.empty()) return;
  double mean = 0.0;
  for (double r : m.error_rates) mean += 100.0 * r;
  mean /= n;
  double ss = 0.0;
  for (double r : m.error_rates) ss += (100.0 * r - mean) * (100.0 * r - mean);
  m.mean_pct = mean;
  m.sd_pct = m.error_rates.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

ExperimentSummary summarize_rates(const std::vector<std::string>& names,
                                  const std::vector<std::vector<double>>& rates) {
  if (names.empty() || names.size() != rates.size())
    throw Error(ErrorKind::InvalidArgument, "one rate vector per method is required");
  ExperimentSummary out;
  out.replications = rates.front().size();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (rates[j].empty()) throw Error(ErrorKind::InvalidArgument, "no replications for " + names[j]);
    MethodSummary m;
    m.name = names[j];
    const auto plus = names[j].find('+');
    m.method = parse_method(names[j].substr(0, plus));
    if (plus != std::string::npos) m.depth = parse_depth_kind(names[j].substr(plus + 1));
    m.error_rates = rates[j];
    fill_moments(m);
    out.methods.push_back(std::move(m));
  }
  return out;
}

ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ReplicationResult>& results,
                            bool counts_mode) {
  if (results.empty()) throw Error(ErrorKind::InvalidArgument, "no replications to summarize");
  ExperimentSummary out;
  out.title = cfg.title;
  out.replications = results.size();
  out.counts_mode = counts_mode;
  for (std::size_t j = 0; j < cfg.methods.size(); ++j) {
    const auto& spec = cfg.methods[j];
    MethodSummary m;
    m.name = spec.name();
    m.method = spec.method;
    if (spec.depth) m.depth = spec.depth->kind;
    std::size_t required = 0;
    bool kfsd = false;
    for (const auto& rep : results) {
      const auto& o = rep.outcomes.at(j);
      m.error_rates.push_back(o.error_rate());
      m.total_misclassified += o.misclassified;
      m.ties += o.ties;
      m.mean_train_seconds += o.train_seconds;
      if (o.choice) {
        kfsd = true;
        if (o.choice->required_cv) ++required;
        ++m.percentile_counts[o.choice->percentile];
      }
    }
    m.mean_train_seconds /= static_cast<double>(results.size());
    fill_moments(m);
    if (kfsd) {
      m.cv_required_fraction = static_cast<double>(required) / static_cast<double>(results.size());
      std::size_t top = 0;
      for (const auto& [p, c] : m.percentile_counts) top = std::max(top, c);
      for (const auto& [p, c] : m.percentile_counts)
        if (c == top) m.best_percentiles.push_back(p);
    }
    out.methods.push_back(std::move(m));
  }
  return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  const Experiment exp(cfg);
  return summarize(exp.config(), exp.run_all(), exp.counts_mode());
}

}  // namespace fdepth
