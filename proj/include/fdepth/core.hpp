#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdepth/error.hpp"
#include "fdepth/random.hpp"

namespace fdepth {

using Label = int;

/// Ordered evaluation points of a common domain, with trapezoidal weights.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// m equidistant points spanning [a, b]; the last point is exactly b.
  static Grid uniform(double a, double b, std::size_t m);

  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double length() const { return points_.back() - points_.front(); }
  bool is_equidistant() const { return equidistant_; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
  bool equidistant_ = false;
};

/// Values of one curve at the points of some grid. All values are finite.
class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  std::vector<double> values_;
};

/// A nonempty set of curves on one shared grid.
class FunctionalSample {
 public:
  FunctionalSample(Grid grid, std::vector<Curve> curves);

  const Grid& grid() const { return grid_; }
  const std::vector<Curve>& curves() const { return curves_; }
  const Curve& operator[](std::size_t i) const { return curves_[i]; }
  std::size_t size() const { return curves_.size(); }

  /// Subsample in the order given by `indices`.
  FunctionalSample subset(std::span<const std::size_t> indices) const;

  /// Throws GridMismatch unless `x` has one value per grid point.
  void check_query(const Curve& x) const;

 private:
  Grid grid_;
  std::vector<Curve> curves_;
};

/// Curves with binary group labels. Construction checks shape and label
/// values only; use validate_labeled_sample before training on it.
class LabeledSample {
 public:
  LabeledSample(FunctionalSample sample, std::vector<Label> labels);

  const FunctionalSample& sample() const { return sample_; }
  const Grid& grid() const { return sample_.grid(); }
  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t count(Label g) const;

  /// Indices of the curves carrying label g, in sample order.
  std::vector<std::size_t> indices_of(Label g) const;

  /// Curves of label g. Throws EmptyGroup if there are none.
  FunctionalSample group(Label g) const;

  LabeledSample subset(std::span<const std::size_t> indices) const;

 private:
  FunctionalSample sample_;
  std::vector<Label> labels_;
};

/// Throws GridMismatch, NonFiniteValue or EmptyGroup; returns normally iff
/// the sample is fit for two-group classification.
void validate_labeled_sample(const LabeledSample& s);

enum class DepthKind { FMD, HMD, RTD, IDD, MBD, FSD, KFSD };

inline constexpr DepthKind kAllDepths[] = {DepthKind::FMD, DepthKind::HMD, DepthKind::RTD,
                                           DepthKind::IDD, DepthKind::MBD, DepthKind::FSD,
                                           DepthKind::KFSD};

std::string_view to_string(DepthKind kind);
DepthKind parse_depth_kind(std::string_view name);

/// Depth choice plus the hyperparameters that kind needs.
struct DepthSpec {
  DepthKind kind = DepthKind::FSD;
  std::optional<double> bandwidth_percentile;  // HMD, KFSD
  std::optional<int> num_projections;          // RTD, IDD
  std::optional<int> band_order;               // MBD (only J = 2)
  std::optional<Seed> projection_seed;         // RTD, IDD
  bool normalize_hmd = true;

  static DepthSpec fmd() { DepthSpec s; s.kind = DepthKind::FMD; return s; }
  static DepthSpec hmd(double percentile = 15.0);
  static DepthSpec rtd(int projections = 50, Seed seed = 0);
  static DepthSpec idd(int projections = 50, Seed seed = 0);
  static DepthSpec mbd();
  static DepthSpec fsd() { DepthSpec s; s.kind = DepthKind::FSD; return s; }
  static DepthSpec kfsd(double percentile);

  /// Default hyperparameters for `kind` (the study settings).
  static DepthSpec defaults(DepthKind kind, Seed projection_seed = 0);

  /// Throws InvalidArgument unless hyperparameters are present exactly for
  /// the kinds that use them.
  void validate() const;
};

}  // namespace fdepth
