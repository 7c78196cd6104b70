// Reference (definition-level) depth functions.
#include "fdepth/depths.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fdepth {

double zero_distance_threshold(const FunctionalSample& s) {
  double max_norm = 0.0;
  for (const auto& y : s.curves()) max_norm = std::max(max_norm, l2_norm(y, s.grid()));
  return kZeroRelTol * max_norm;
}

double fsd(const FunctionalSample& s, const Curve& x) {
  s.check_query(x);
  const auto& grid = s.grid();
  const double eps = zero_distance_threshold(s);
  const std::size_t m = grid.size();

  std::vector<double> sign_sum(m, 0.0);
  std::vector<double> diff(m);
  for (const auto& y : s.curves()) {
    for (std::size_t t = 0; t < m; ++t) diff[t] = x[t] - y[t];
    const double d = std::sqrt(l2_inner(diff, diff, grid.weights()));
    if (d <= eps) continue;  // FS(0) = 0
    for (std::size_t t = 0; t < m; ++t) sign_sum[t] += diff[t] / d;
  }
  const double norm = std::sqrt(l2_inner(sign_sum, sign_sum, grid.weights()));
  return std::clamp(1.0 - norm / static_cast<double>(s.size()), 0.0, 1.0);
}

double fsd_inner_product_oracle(const FunctionalSample& s, const Curve& x) {
  s.check_query(x);
  const auto& grid = s.grid();
  const double eps = zero_distance_threshold(s);
  const std::size_t n = s.size();

  const double xx = l2_inner(x, x, grid);
  std::vector<double> xy(n), den(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (l2_distance(x, s[i], grid) <= eps)
      throw Error(ErrorKind::ZeroDistance, "query coincides with sample curve " + std::to_string(i));
    xy[i] = l2_inner(x, s[i], grid);
    const double yy = l2_inner(s[i], s[i], grid);
    den[i] = std::sqrt(std::max(0.0, xx + yy - 2.0 * xy[i]));
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double yz = l2_inner(s[i], s[j], grid);
      sum += (xx + yz - xy[i] - xy[j]) / (den[i] * den[j]);
    }
  return 1.0 - std::sqrt(std::max(0.0, sum)) / static_cast<double>(n);
}

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorKind::DegenerateBandwidth, "kernel bandwidth must be positive");
}

}  // namespace

double gaussian_kernel_kfsd(const Curve& x, const Curve& y, const Grid& grid, double sigma) {
  check_sigma(sigma);
  const double d = l2_distance(x, y, grid);
  return std::exp(-(d * d) / (sigma * sigma));
}

double kfsd(const FunctionalSample& s, const Curve& x, double sigma) {
  s.check_query(x);
  check_sigma(sigma);
  const auto& grid = s.grid();
  const double eps = zero_distance_threshold(s);
  const std::size_t n = s.size();

  const double kxx = gaussian_kernel_kfsd(x, x, grid, sigma);
  std::vector<std::size_t> kept;
  std::vector<double> kxy(n), kyy(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (l2_distance(x, s[i], grid) <= eps) continue;
    kept.push_back(i);
    kxy[i] = gaussian_kernel_kfsd(x, s[i], grid, sigma);
    kyy[i] = gaussian_kernel_kfsd(s[i], s[i], grid, sigma);
  }
  if (kept.empty()) return 1.0;

  double sum = 0.0;
  for (auto i : kept)
    for (auto j : kept) {
      const double kyz = gaussian_kernel_kfsd(s[i], s[j], grid, sigma);
      const double num = kxx + kyz - kxy[i] - kxy[j];
      const double den =
          std::sqrt(kxx + kyy[i] - 2.0 * kxy[i]) * std::sqrt(kxx + kyy[j] - 2.0 * kxy[j]);
      sum += num / den;
    }
  return 1.0 - std::sqrt(std::max(0.0, sum)) / static_cast<double>(n);
}

double gaussian_kernel_hmd(double distance, double sigma) {
  check_sigma(sigma);
  return kHmdKernelAtZero * std::exp(-(distance * distance) / (2.0 * sigma * sigma));
}

double hmd(const FunctionalSample& s, const Curve& x, double sigma, bool normalized) {
  s.check_query(x);
  check_sigma(sigma);
  double raw = 0.0;
  for (const auto& y : s.curves()) raw += gaussian_kernel_hmd(l2_distance(x, y, s.grid()), sigma);
  return normalized ? raw / (static_cast<double>(s.size()) * kHmdKernelAtZero) : raw;
}

double fmd(const FunctionalSample& s, const Curve& x) {
  s.check_query(x);
  const auto& grid = s.grid();
  const auto w = grid.weights();
  const double n = static_cast<double>(s.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < grid.size(); ++t) {
    std::size_t below = 0;
    for (const auto& y : s.curves())
      if (y[t] <= x[t]) ++below;
    const double cdf = static_cast<double>(below) / n;
    acc += w[t] * (1.0 - std::abs(0.5 - cdf));
  }
  return acc / grid.length();
}

double mbd(const FunctionalSample& s, const Curve& x) {
  s.check_query(x);
  const std::size_t n = s.size();
  if (n < 2) throw Error(ErrorKind::InsufficientSample, "MBD needs at least 2 curves");
  const std::size_t m = s.grid().size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t inside = 0;
      for (std::size_t t = 0; t < m; ++t) {
        const double lo = std::min(s[i][t], s[j][t]);
        const double hi = std::max(s[i][t], s[j][t]);
        if (lo <= x[t] && x[t] <= hi) ++inside;
      }
      acc += static_cast<double>(inside) / static_cast<double>(m);
    }
  return acc / (static_cast<double>(n * (n - 1)) / 2.0);
}

double halfspace_depth_1d(std::span<const double> values, double v) {
  if (values.empty()) throw Error(ErrorKind::InsufficientSample, "halfspace depth of empty set");
  std::size_t le = 0, ge = 0;
  for (double u : values) {
    if (u <= v) ++le;
    if (u >= v) ++ge;
  }
  return static_cast<double>(std::min(le, ge)) / static_cast<double>(values.size());
}

double simplicial_depth_1d(std::span<const double> values, double v) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorKind::InsufficientSample, "simplicial depth needs at least 2 values");
  std::size_t covering = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::min(values[i], values[j]) <= v && v <= std::max(values[i], values[j])) ++covering;
  return static_cast<double>(covering) / (static_cast<double>(n * (n - 1)) / 2.0);
}

ProjectionSet generate_projections(const Grid& grid, int p, Seed seed) {
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "projection count must be positive");
  auto rng = substream(seed, {key(Stream::Projection)});
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto pts = grid.points();

  ProjectionSet out{grid, {}, seed};
  out.directions.reserve(static_cast<std::size_t>(p));
  std::vector<double> path(grid.size());
  for (int k = 0; k < p; ++k) {
    path[0] = 0.0;
    for (std::size_t t = 1; t < path.size(); ++t)
      path[t] = path[t - 1] + std::sqrt(pts[t] - pts[t - 1]) * normal(rng);
    const double norm = std::sqrt(l2_inner(path, path, grid.weights()));
    if (!(norm > 0.0)) {
      --k;  // all-zero path; redraw
      continue;
    }
    std::vector<double> unit(path.size());
    for (std::size_t t = 0; t < path.size(); ++t) unit[t] = path[t] / norm;
    out.directions.emplace_back(std::move(unit));
  }
  return out;
}

namespace {

std::vector<double> project_sample(const FunctionalSample& s, const Curve& d) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = l2_inner(s[i], d, s.grid());
  return out;
}

void check_projection_grid(const FunctionalSample& s, const ProjectionSet& proj) {
  if (!(proj.grid == s.grid()))
    throw Error(ErrorKind::GridMismatch, "projections were drawn on a different grid");
  if (proj.directions.empty())
    throw Error(ErrorKind::InvalidArgument, "empty projection set");
}

}  // namespace

double rtd(const FunctionalSample& s, const Curve& x, const ProjectionSet& proj) {
  s.check_query(x);
  check_projection_grid(s, proj);
  double depth = 1.0;
  for (const auto& d : proj.directions)
    depth = std::min(depth, halfspace_depth_1d(project_sample(s, d), l2_inner(x, d, s.grid())));
  return depth;
}

double idd(const FunctionalSample& s, const Curve& x, const ProjectionSet& proj) {
  s.check_query(x);
  check_projection_grid(s, proj);
  if (s.size() < 2) throw Error(ErrorKind::InsufficientSample, "IDD needs at least 2 curves");
  double acc = 0.0;
  for (const auto& d : proj.directions)
    acc += simplicial_depth_1d(project_sample(s, d), l2_inner(x, d, s.grid()));
  return acc / static_cast<double>(proj.size());
}

}  // namespace fdepth
