#include "fdepth/geometry.hpp"

#include "fdepth/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fdepth {

double l2_inner(std::span<const double> f, std::span<const double> g,
                std::span<const double> weights) {
  if (f.size() != weights.size() || g.size() != weights.size())
    throw Error(ErrorKind::GridMismatch, "inner product of curves on different grids");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * (f[i] * g[i]);  // exactly symmetric in f and g
  return acc;
}

double l2_inner(const Curve& f, const Curve& g, const Grid& grid) {
  return l2_inner(f.values(), g.values(), grid.weights());
}

double l2_norm(const Curve& f, const Grid& grid) {
  return std::sqrt(std::max(0.0, l2_inner(f, f, grid)));
}

double l2_distance(std::span<const double> f, std::span<const double> g,
                   std::span<const double> weights) {
  if (f.size() != weights.size() || g.size() != weights.size())
    throw Error(ErrorKind::GridMismatch, "distance between curves on different grids");
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double diff = f[i] - g[i];
    acc += weights[i] * diff * diff;
  }
  return std::sqrt(acc);
}

double l2_distance(const Curve& f, const Curve& g, const Grid& grid) {
  return l2_distance(f.values(), g.values(), grid.weights());
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

double DistanceMatrix::max() const {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

DistanceMatrix pairwise_distances_serial(const FunctionalSample& s) {
  const std::size_t n = s.size();
  const auto w = s.grid().weights();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, l2_distance(s[i].values(), s[j].values(), w));
  return d;
}

DistanceMatrix pairwise_distances(const FunctionalSample& s) {
  const std::size_t n = s.size();
  const auto w = s.grid().weights();
  DistanceMatrix d(n);
  // Row i writes only the pairs (i, j > i).
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, l2_distance(s[i].values(), s[j].values(), w));
  });
  return d;
}

std::vector<double> distances_to(const FunctionalSample& s, const Curve& x) {
  s.check_query(x);
  const auto w = s.grid().weights();
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = l2_distance(x.values(), s[i].values(), w);
  return out;
}

double percentile_linear(std::vector<double> values, double pct) {
  if (values.empty()) throw Error(ErrorKind::InsufficientSample, "percentile of an empty set");
  if (!(pct > 0.0 && pct < 100.0))
    throw Error(ErrorKind::InvalidArgument, "percentile must lie in (0, 100)");
  std::sort(values.begin(), values.end());
  const double rank = static_cast<double>(values.size() - 1) * pct / 100.0;  // zero-based
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double bandwidth_from_percentile(const DistanceMatrix& d, double pct) {
  if (d.size() < 2)
    throw Error(ErrorKind::InsufficientSample, "bandwidth needs at least 2 curves");
  const double bw = percentile_linear(d.upper_triangle(), pct);
  if (!(bw > 0.0))
    throw Error(ErrorKind::DegenerateBandwidth,
                "percentile " + std::to_string(pct) + " of pairwise distances is zero");
  return bw;
}

}  // namespace fdepth
