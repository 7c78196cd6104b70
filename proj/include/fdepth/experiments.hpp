#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fdepth/classify.hpp"
#include "fdepth/datasets.hpp"
#include "fdepth/modelselect.hpp"
#include "fdepth/simulate.hpp"

namespace fdepth {

enum class TableFormat { Csv, Markdown };
TableFormat parse_table_format(std::string_view name);

/// Simulated source: generate n0 + n1 curves per replication and train on the
/// first train_per_group curves of each group.
struct SimulatedSource {
  CgpSpec cgp;
  std::array<std::size_t, 2> train_per_group{25, 25};
};

/// Real-data source: one curve file, split per replication by T1 or T2.
struct DatasetSource {
  std::filesystem::path path;
  SplitScheme scheme;
  std::optional<std::size_t> truncate_to;
  std::optional<std::size_t> regrid_points;  // natural cubic spline onto an equidistant grid
};

struct ExperimentConfig {
  std::string title;
  std::variant<SimulatedSource, DatasetSource> source;
  /// Depth hyperparameters that depend on the replication (projection seeds,
  /// tie seeds, KFSD percentile) are filled in per replication.
  std::vector<ClassifierSpec> methods;
  std::size_t replications = 125;
  std::size_t cv_folds = 5;
  std::vector<double> percentiles = kDefaultPercentiles;
  Seed master_seed = 0;
  TableFormat format = TableFormat::Markdown;
  std::optional<std::filesystem::path> output;

  void validate() const;
};

/// The 21 depth-based methods (DTM, WAD, WMD x seven depths) plus k-NN, with
/// alpha = 0.2, k = 5, 50 projections and the 15th-percentile HMD bandwidth.
std::vector<ClassifierSpec> all_methods();

/// INI-style config (see configs/ and README). Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct MethodOutcome {
  std::size_t misclassified = 0;
  std::size_t test_size = 0;
  std::size_t ties = 0;
  double train_seconds = 0.0;  // within-group depth computation on the training sample
  std::optional<PercentileChoice> choice;

  double error_rate() const {
    return test_size ? static_cast<double>(misclassified) / static_cast<double>(test_size) : 0.0;
  }
};

struct ReplicationResult {
  std::size_t index = 0;
  std::vector<MethodOutcome> outcomes;  // parallel to ExperimentConfig::methods
};

/// Loads (for datasets) the source once; replications are then independent.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  /// T2 uses one replication per curve; otherwise cfg.replications.
  std::size_t replication_count() const;
  ReplicationResult run_replication(std::size_t r) const;
  /// All replications, run concurrently, stored by index.
  std::vector<ReplicationResult> run_all() const;

  const ExperimentConfig& config() const { return cfg_; }
  bool counts_mode() const;
  std::pair<LabeledSample, LabeledSample> train_test(std::size_t r) const;

 private:
  ExperimentConfig cfg_;
  std::optional<LabeledSample> data_;
};

ReplicationResult run_replication(const ExperimentConfig& cfg, std::size_t r);

struct MethodSummary {
  std::string name;
  Method method = Method::KNN;
  std::optional<DepthKind> depth;
  std::vector<double> error_rates;  // per replication, fractions
  double mean_pct = 0.0;
  double sd_pct = 0.0;  // divisor n - 1
  std::size_t total_misclassified = 0;
  std::size_t ties = 0;
  double mean_train_seconds = 0.0;
  // KFSD methods only.
  std::optional<double> cv_required_fraction;
  std::map<double, std::size_t> percentile_counts;
  std::vector<double> best_percentiles;  // most frequently selected
};

struct ExperimentSummary {
  std::string title;
  std::size_t replications = 0;
  bool counts_mode = false;  // report misclassified counts (T2) instead of percentages
  std::vector<MethodSummary> methods;

  const MethodSummary& at(std::string_view name) const;
};

/// Mean and sample standard deviation of percentage errors, per method.
ExperimentSummary summarize_rates(const std::vector<std::string>& names,
                                  const std::vector<std::vector<double>>& rates);
ExperimentSummary summarize(const ExperimentConfig& cfg, const std::vector<ReplicationResult>& results,
                            bool counts_mode = false);

ExperimentSummary run_experiment(const ExperimentConfig& cfg);

/// Procedure rows x depth columns, cells "mean (sd)" with two decimals, k-NN
/// on its own row; counts mode prints integer misclassification counts.
std::string emit_table(const ExperimentSummary& summary, TableFormat format);
/// CV-required percentage and most selected percentiles per KFSD method.
std::string emit_cv_table(const ExperimentSummary& summary, TableFormat format);
/// Mean wall-clock seconds of within-group depth computation per method.
std::string emit_timings(const ExperimentSummary& summary);

/// "15th", "33rd", ...
std::string ordinal(double percentile);

}  // namespace fdepth
