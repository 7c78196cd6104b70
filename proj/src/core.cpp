#include "fdepth/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdepth {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateBandwidth: return "DegenerateBandwidth";
    case ErrorKind::InsufficientSample: return "InsufficientSample";
    case ErrorKind::ZeroDistance: return "ZeroDistance";
    case ErrorKind::ZeroWeights: return "ZeroWeights";
    case ErrorKind::FactorizationFailure: return "FactorizationFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DomainNotIncreasing: return "DomainNotIncreasing";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::UnlabeledCurve: return "UnlabeledCurve";
  }
  return "Unknown";
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  const std::size_t m = points_.size();
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(points_[i]))
      throw Error(ErrorKind::NonFiniteValue, "grid point " + std::to_string(i));
    if (i > 0 && !(points_[i] > points_[i - 1]))
      throw Error(ErrorKind::DomainNotIncreasing,
                  "grid not strictly increasing at index " + std::to_string(i));
  }

  weights_.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = points_[i + 1] - points_[i];
    weights_[i] += 0.5 * h;
    weights_[i + 1] += 0.5 * h;
  }

  const double step = length() / static_cast<double>(m - 1);
  equidistant_ = true;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double h = points_[i + 1] - points_[i];
    if (std::abs(h - step) > 1e-9 * std::abs(step)) {
      equidistant_ = false;
      break;
    }
  }
}

Grid Grid::uniform(double a, double b, std::size_t m) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  if (!(b > a)) throw Error(ErrorKind::DomainNotIncreasing, "uniform grid needs a < b");
  std::vector<double> pts(m);
  const double h = (b - a) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) pts[i] = a + h * static_cast<double>(i);
  pts.back() = b;
  return Grid(std::move(pts));
}

Curve::Curve(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw Error(ErrorKind::NonFiniteValue, "curve value at index " + std::to_string(i));
}

FunctionalSample::FunctionalSample(Grid grid, std::vector<Curve> curves)
    : grid_(std::move(grid)), curves_(std::move(curves)) {
  if (curves_.empty()) throw Error(ErrorKind::InsufficientSample, "functional sample is empty");
  for (std::size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].size() != grid_.size())
      throw Error(ErrorKind::GridMismatch, "curve " + std::to_string(i) + " has " +
                                               std::to_string(curves_[i].size()) +
                                               " values for a grid of " +
                                               std::to_string(grid_.size()));
}

FunctionalSample FunctionalSample::subset(std::span<const std::size_t> indices) const {
  std::vector<Curve> picked;
  picked.reserve(indices.size());
  for (auto i : indices) {
    if (i >= curves_.size()) throw Error(ErrorKind::IndexOutOfRange, std::to_string(i));
    picked.push_back(curves_[i]);
  }
  return FunctionalSample(grid_, std::move(picked));
}

void FunctionalSample::check_query(const Curve& x) const {
  if (x.size() != grid_.size())
    throw Error(ErrorKind::GridMismatch, "query has " + std::to_string(x.size()) +
                                             " values for a grid of " +
                                             std::to_string(grid_.size()));
}

LabeledSample::LabeledSample(FunctionalSample sample, std::vector<Label> labels)
    : sample_(std::move(sample)), labels_(std::move(labels)) {
  if (labels_.size() != sample_.size())
    throw Error(ErrorKind::GridMismatch, "label count " + std::to_string(labels_.size()) +
                                             " differs from curve count " +
                                             std::to_string(sample_.size()));
  for (auto g : labels_)
    if (g != 0 && g != 1)
      throw Error(ErrorKind::InvalidArgument, "labels must be 0 or 1, got " + std::to_string(g));
}

std::size_t LabeledSample::count(Label g) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), g));
}

std::vector<std::size_t> LabeledSample::indices_of(Label g) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == g) out.push_back(i);
  return out;
}

FunctionalSample LabeledSample::group(Label g) const {
  const auto idx = indices_of(g);
  if (idx.empty()) throw Error(ErrorKind::EmptyGroup, "no curves with label " + std::to_string(g));
  return sample_.subset(idx);
}

LabeledSample LabeledSample::subset(std::span<const std::size_t> indices) const {
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (auto i : indices) {
    if (i >= labels_.size()) throw Error(ErrorKind::IndexOutOfRange, std::to_string(i));
    labels.push_back(labels_[i]);
  }
  return LabeledSample(sample_.subset(indices), std::move(labels));
}

void validate_labeled_sample(const LabeledSample& s) {
  const auto& grid = s.grid();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.sample()[i];
    if (c.size() != grid.size())
      throw Error(ErrorKind::GridMismatch, "curve " + std::to_string(i));
    for (double v : c.values())
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteValue, "curve " + std::to_string(i));
  }
  for (Label g : {0, 1})
    if (s.count(g) == 0)
      throw Error(ErrorKind::EmptyGroup, "no curves with label " + std::to_string(g));
}

std::string_view to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::FMD: return "FMD";
    case DepthKind::HMD: return "HMD";
    case DepthKind::RTD: return "RTD";
    case DepthKind::IDD: return "IDD";
    case DepthKind::MBD: return "MBD";
    case DepthKind::FSD: return "FSD";
    case DepthKind::KFSD: return "KFSD";
  }
  return "?";
}

DepthKind parse_depth_kind(std::string_view name) {
  for (auto k : kAllDepths)
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown depth '" + std::string(name) + "'");
}

DepthSpec DepthSpec::hmd(double percentile) {
  DepthSpec s;
  s.kind = DepthKind::HMD;
  s.bandwidth_percentile = percentile;
  return s;
}

DepthSpec DepthSpec::rtd(int projections, Seed seed) {
  DepthSpec s;
  s.kind = DepthKind::RTD;
  s.num_projections = projections;
  s.projection_seed = seed;
  return s;
}

DepthSpec DepthSpec::idd(int projections, Seed seed) {
  DepthSpec s;
  s.kind = DepthKind::IDD;
  s.num_projections = projections;
  s.projection_seed = seed;
  return s;
}

DepthSpec DepthSpec::mbd() {
  DepthSpec s;
  s.kind = DepthKind::MBD;
  s.band_order = 2;
  return s;
}

DepthSpec DepthSpec::kfsd(double percentile) {
  DepthSpec s;
  s.kind = DepthKind::KFSD;
  s.bandwidth_percentile = percentile;
  return s;
}

DepthSpec DepthSpec::defaults(DepthKind kind, Seed projection_seed) {
  switch (kind) {
    case DepthKind::FMD: return fmd();
    case DepthKind::HMD: return hmd(15.0);
    case DepthKind::RTD: return rtd(50, projection_seed);
    case DepthKind::IDD: return idd(50, projection_seed);
    case DepthKind::MBD: return mbd();
    case DepthKind::FSD: return fsd();
    case DepthKind::KFSD: return kfsd(50.0);  // placeholder; experiments choose it by CV
  }
  return fsd();
}

void DepthSpec::validate() const {
  const bool wants_bw = kind == DepthKind::HMD || kind == DepthKind::KFSD;
  const bool wants_proj = kind == DepthKind::RTD || kind == DepthKind::IDD;
  const bool wants_band = kind == DepthKind::MBD;
  const auto name = std::string(to_string(kind));

  if (wants_bw != bandwidth_percentile.has_value())
    throw Error(ErrorKind::InvalidArgument,
                name + (wants_bw ? " requires" : " does not take") + " a bandwidth percentile");
  if (wants_bw && !(*bandwidth_percentile > 0.0 && *bandwidth_percentile < 100.0))
    throw Error(ErrorKind::InvalidArgument, "bandwidth percentile must lie in (0, 100)");

  if (wants_proj != num_projections.has_value() || wants_proj != projection_seed.has_value())
    throw Error(ErrorKind::InvalidArgument,
                name + (wants_proj ? " requires" : " does not take") +
                    " a projection count and seed");
  if (wants_proj && *num_projections < 1)
    throw Error(ErrorKind::InvalidArgument, "projection count must be positive");

  if (band_order.has_value() && !wants_band)
    throw Error(ErrorKind::InvalidArgument, name + " does not take a band order");
  if (wants_band && band_order.value_or(2) != 2)
    throw Error(ErrorKind::InvalidArgument, "only bands of J = 2 curves are supported");
}

}  // namespace fdepth
