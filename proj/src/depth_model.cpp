#include <algorithm>
#include <cmath>

#include "fdepth/depths.hpp"
#include "fdepth/parallel.hpp"

namespace fdepth {

namespace {

double pairs(std::size_t k) { return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0; }

// Counts of sorted values strictly below / strictly above v.
std::pair<std::size_t, std::size_t> below_above(std::span<const double> sorted, double v) {
  const auto lo = std::lower_bound(sorted.begin(), sorted.end(), v);
  const auto hi = std::upper_bound(lo, sorted.end(), v);
  return {static_cast<std::size_t>(lo - sorted.begin()),
          static_cast<std::size_t>(sorted.end() - hi)};
}

}  // namespace

DepthModel::DepthModel(FunctionalSample sample, DepthSpec spec)
    : sample_(std::move(sample)), spec_(std::move(spec)) {
  prepare(nullptr);
}

DepthModel::DepthModel(FunctionalSample sample, DepthSpec spec, const ProjectionSet& projections)
    : sample_(std::move(sample)), spec_(std::move(spec)) {
  prepare(&projections);
}

void DepthModel::prepare(const ProjectionSet* projections) {
  spec_.validate();
  const std::size_t n = sample_.size();
  const std::size_t m = sample_.grid().size();
  eps_zero_ = zero_distance_threshold(sample_);

  switch (spec_.kind) {
    case DepthKind::HMD:
    case DepthKind::KFSD: {
      dist_ = pairwise_distances(sample_);
      sigma_ = bandwidth_from_percentile(dist_, *spec_.bandwidth_percentile);
      if (spec_.kind == DepthKind::KFSD) {
        const double s2 = *sigma_ * *sigma_;
        one_minus_kernel_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const double d = dist_(i, j);
            one_minus_kernel_[i * n + j] = -std::expm1(-(d * d) / s2);
          }
      }
      break;
    }
    case DepthKind::MBD:
      if (n < 2) throw Error(ErrorKind::InsufficientSample, "MBD needs at least 2 curves");
      [[fallthrough]];
    case DepthKind::FMD: {
      sorted_by_point_.resize(m * n);
      for (std::size_t t = 0; t < m; ++t) {
        auto row = sorted_by_point_.begin() + static_cast<std::ptrdiff_t>(t * n);
        for (std::size_t i = 0; i < n; ++i) row[static_cast<std::ptrdiff_t>(i)] = sample_[i][t];
        std::sort(row, row + static_cast<std::ptrdiff_t>(n));
      }
      break;
    }
    case DepthKind::IDD:
      if (n < 2) throw Error(ErrorKind::InsufficientSample, "IDD needs at least 2 curves");
      [[fallthrough]];
    case DepthKind::RTD: {
      if (projections) {
        if (!(projections->grid == sample_.grid()))
          throw Error(ErrorKind::GridMismatch, "projections were drawn on a different grid");
        directions_ = projections->directions;
      } else {
        directions_ = generate_projections(sample_.grid(), *spec_.num_projections,
                                           *spec_.projection_seed)
                          .directions;
      }
      const std::size_t p = directions_.size();
      sorted_projections_.resize(p * n);
      for (std::size_t k = 0; k < p; ++k) {
        auto row = sorted_projections_.begin() + static_cast<std::ptrdiff_t>(k * n);
        for (std::size_t i = 0; i < n; ++i)
          row[static_cast<std::ptrdiff_t>(i)] = l2_inner(sample_[i], directions_[k], sample_.grid());
        std::sort(row, row + static_cast<std::ptrdiff_t>(n));
      }
      break;
    }
    case DepthKind::FSD:
      break;
  }
}

double DepthModel::evaluate(const Curve& x) const {
  sample_.check_query(x);
  switch (spec_.kind) {
    case DepthKind::FSD: return eval_fsd(x);
    case DepthKind::KFSD: return eval_kfsd(x);
    case DepthKind::HMD: return eval_hmd(x);
    case DepthKind::FMD: return eval_fmd(x);
    case DepthKind::MBD: return eval_mbd(x);
    case DepthKind::RTD:
    case DepthKind::IDD: return eval_projected(x);
  }
  return 0.0;
}

double DepthModel::eval_fsd(const Curve& x) const {
  const auto w = sample_.grid().weights();
  const std::size_t m = w.size();
  std::vector<double> sign_sum(m, 0.0);
  for (const auto& y : sample_.curves()) {
    const double d = l2_distance(x.values(), y.values(), w);
    if (d <= eps_zero_) continue;
    for (std::size_t t = 0; t < m; ++t) sign_sum[t] += (x[t] - y[t]) / d;
  }
  const double norm = std::sqrt(l2_inner(sign_sum, sign_sum, w));
  return std::clamp(1.0 - norm / static_cast<double>(sample_.size()), 0.0, 1.0);
}

double DepthModel::eval_kfsd(const Curve& x) const {
  const std::size_t n = sample_.size();
  const auto w = sample_.grid().weights();
  const double s2 = *sigma_ * *sigma_;

  // With kappa(x, x) = 1 every kernel term is expressed through
  // a = 1 - kappa, which keeps precision when sigma dwarfs the distances.
  std::vector<std::size_t> kept;
  std::vector<double> a(n), root(n);
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = l2_distance(x.values(), sample_[i].values(), w);
    if (d <= eps_zero_) continue;
    kept.push_back(i);
    a[i] = -std::expm1(-(d * d) / s2);
    root[i] = std::sqrt(2.0 * a[i]);
  }
  if (kept.empty()) return 1.0;

  double sum = 0.0;
  for (auto i : kept) {
    const double* row = one_minus_kernel_.data() + i * n;
    for (auto j : kept) sum += (a[i] + a[j] - row[j]) / (root[i] * root[j]);
  }
  return 1.0 - std::sqrt(std::max(0.0, sum)) / static_cast<double>(n);
}

double DepthModel::eval_hmd(const Curve& x) const {
  const auto w = sample_.grid().weights();
  double raw = 0.0;
  for (const auto& y : sample_.curves())
    raw += gaussian_kernel_hmd(l2_distance(x.values(), y.values(), w), *sigma_);
  return spec_.normalize_hmd
             ? raw / (static_cast<double>(sample_.size()) * kHmdKernelAtZero)
             : raw;
}

double DepthModel::eval_fmd(const Curve& x) const {
  const auto& grid = sample_.grid();
  const auto w = grid.weights();
  const std::size_t n = sample_.size();
  double acc = 0.0;
  for (std::size_t t = 0; t < grid.size(); ++t) {
    std::span<const double> row(sorted_by_point_.data() + t * n, n);
    const auto below = static_cast<std::size_t>(
        std::upper_bound(row.begin(), row.end(), x[t]) - row.begin());
    const double cdf = static_cast<double>(below) / static_cast<double>(n);
    acc += w[t] * (1.0 - std::abs(0.5 - cdf));
  }
  return acc / grid.length();
}

double DepthModel::eval_mbd(const Curve& x) const {
  const std::size_t n = sample_.size();
  const std::size_t m = sample_.grid().size();
  const double total = pairs(n);
  double covered = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    // A pair misses x(t) only when both curves are strictly below or above.
    const auto [below, above] = below_above({sorted_by_point_.data() + t * n, n}, x[t]);
    covered += total - pairs(below) - pairs(above);
  }
  return covered / (total * static_cast<double>(m));
}

double DepthModel::eval_projected(const Curve& x) const {
  const std::size_t n = sample_.size();
  const bool tukey = spec_.kind == DepthKind::RTD;
  double min_depth = 1.0;
  double sum_depth = 0.0;
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    const double v = l2_inner(x, directions_[k], sample_.grid());
    const auto [below, above] = below_above({sorted_projections_.data() + k * n, n}, v);
    if (tukey) {
      const std::size_t le = n - above;
      const std::size_t ge = n - below;
      min_depth = std::min(min_depth, static_cast<double>(std::min(le, ge)) / static_cast<double>(n));
    } else {
      sum_depth += (pairs(n) - pairs(below) - pairs(above)) / pairs(n);
    }
  }
  return tukey ? min_depth : sum_depth / static_cast<double>(directions_.size());
}

namespace {

void check_queries(const DepthModel& model, const FunctionalSample& queries) {
  if (!(queries.grid() == model.sample().grid()))
    throw Error(ErrorKind::GridMismatch, "queries and sample use different grids");
}

}  // namespace

std::vector<double> evaluate_all_serial(const DepthModel& model, const FunctionalSample& queries) {
  check_queries(model, queries);
  std::vector<double> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) out[q] = model.evaluate(queries[q]);
  return out;
}

std::vector<double> evaluate_all(const DepthModel& model, const FunctionalSample& queries) {
  check_queries(model, queries);
  std::vector<double> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t q) { out[q] = model.evaluate(queries[q]); });
  return out;
}

namespace {

DepthModel model_for(const LabeledSample& s, Label group, const FunctionalSample& queries,
                     const DepthSpec& spec) {
  if (!(queries.grid() == s.grid()))
    throw Error(ErrorKind::GridMismatch, "queries and sample use different grids");
  return DepthModel(s.group(group), spec);
}

}  // namespace

DepthVector depth_vector(const LabeledSample& s, Label group, const FunctionalSample& queries,
                         const DepthSpec& spec) {
  const auto model = model_for(s, group, queries, spec);
  return {evaluate_all(model, queries), spec};
}

DepthVector depth_vector_serial(const LabeledSample& s, Label group,
                                const FunctionalSample& queries, const DepthSpec& spec) {
  const auto model = model_for(s, group, queries, spec);
  return {evaluate_all_serial(model, queries), spec};
}

}  // namespace fdepth
