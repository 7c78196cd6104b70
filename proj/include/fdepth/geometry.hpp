#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fdepth/core.hpp"

namespace fdepth {

/// Trapezoidal L2 inner product of two curves sampled on `grid`.
double l2_inner(const Curve& f, const Curve& g, const Grid& grid);
double l2_inner(std::span<const double> f, std::span<const double> g,
                std::span<const double> weights);

double l2_norm(const Curve& f, const Grid& grid);

/// sqrt(l2_inner(f - g, f - g)), accumulated without forming f - g.
double l2_distance(const Curve& f, const Curve& g, const Grid& grid);
double l2_distance(std::span<const double> f, std::span<const double> g,
                   std::span<const double> weights);

/// Symmetric n x n matrix of pairwise L2 distances, zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

  /// Row-major entries.
  std::span<const double> data() const { return d_; }

  /// Upper-triangle (i < j) entries in row order.
  std::vector<double> upper_triangle() const;
  double max() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// Rows are split across OpenMP threads; each entry is computed exactly as in
/// pairwise_distances_serial, so the two are bit-identical.
DistanceMatrix pairwise_distances(const FunctionalSample& s);
DistanceMatrix pairwise_distances_serial(const FunctionalSample& s);

/// Distances from x to every curve of s, in sample order.
std::vector<double> distances_to(const FunctionalSample& s, const Curve& x);

/// pct-th percentile (0 < pct < 100) of the i < j distances, linear
/// interpolation at fractional rank 1 + (m - 1) pct / 100 of the sorted values.
/// Throws DegenerateBandwidth when the result is 0.
double bandwidth_from_percentile(const DistanceMatrix& d, double pct);

/// Same estimator on an arbitrary list of values; no degeneracy check.
double percentile_linear(std::vector<double> values, double pct);

}  // namespace fdepth
