#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fdepth/core.hpp"
#include "fdepth/geometry.hpp"

namespace fdepth {

// Curves closer than kZeroRelTol * (largest sample norm) count as
// coincident: they contribute a zero spatial sign and are left out of the
// KFSD double sum.
inline constexpr double kZeroRelTol = 1e-12;

double zero_distance_threshold(const FunctionalSample& s);

// ---------------------------------------------------------------------------
// Reference implementations. Each evaluates its definition directly on the
// raw curves; DepthModel below is the precomputed path and is tested against
// these.
// ---------------------------------------------------------------------------

/// Sample functional spatial depth: 1 - |sum of unit directions x - y| / n.
double fsd(const FunctionalSample& s, const Curve& x);

/// FSD rewritten through inner products only. Throws ZeroDistance when x
/// coincides with a sample curve.
double fsd_inner_product_oracle(const FunctionalSample& s, const Curve& x);

/// exp(-|x - y|^2 / sigma^2)
double gaussian_kernel_kfsd(const Curve& x, const Curve& y, const Grid& grid, double sigma);

/// Kernelized FSD. Pairs involving curves that coincide with x are skipped,
/// the divisor stays n; returns 1 when every sample curve coincides with x.
double kfsd(const FunctionalSample& s, const Curve& x, double sigma);

/// (2 / sqrt(2 pi)) exp(-|x - y|^2 / (2 sigma^2))
double gaussian_kernel_hmd(double distance, double sigma);
inline constexpr double kHmdKernelAtZero = 0.79788456080286535588;  // 2 / sqrt(2 pi)

/// h-modal depth; `normalized` divides by n * kHmdKernelAtZero.
double hmd(const FunctionalSample& s, const Curve& x, double sigma, bool normalized);

/// Fraiman-Muniz depth, integrated over the domain rescaled to unit length.
double fmd(const FunctionalSample& s, const Curve& x);

/// Modified band depth with J = 2, closed bands, grid-point counting.
double mbd(const FunctionalSample& s, const Curve& x);

/// min(#{u <= v}, #{u >= v}) / n
double halfspace_depth_1d(std::span<const double> values, double v);

/// Fraction of pairs i < j whose closed interval contains v.
double simplicial_depth_1d(std::span<const double> values, double v);

/// Unit-norm Brownian-motion directions used by RTD and IDD.
struct ProjectionSet {
  Grid grid;
  std::vector<Curve> directions;
  Seed seed = 0;

  std::size_t size() const { return directions.size(); }
};

ProjectionSet generate_projections(const Grid& grid, int p, Seed seed);

/// Random Tukey depth: minimum projected halfspace depth over directions.
double rtd(const FunctionalSample& s, const Curve& x, const ProjectionSet& proj);

/// Integrated dual depth: mean projected simplicial depth over directions.
double idd(const FunctionalSample& s, const Curve& x, const ProjectionSet& proj);

// ---------------------------------------------------------------------------
// Precomputed path.
// ---------------------------------------------------------------------------

/// A reference sample prepared for repeated depth queries with one DepthSpec.
/// Bandwidth percentiles are resolved against the sample's own pairwise
/// distances. evaluate() is const and thread-safe.
class DepthModel {
 public:
  DepthModel(FunctionalSample sample, DepthSpec spec);
  /// Shares projections across models (e.g. both groups of a classifier).
  DepthModel(FunctionalSample sample, DepthSpec spec, const ProjectionSet& projections);

  double evaluate(const Curve& x) const;

  const DepthSpec& spec() const { return spec_; }
  const FunctionalSample& sample() const { return sample_; }
  const DistanceMatrix& distances() const { return dist_; }
  /// Kernel bandwidth for HMD/KFSD, otherwise empty.
  std::optional<double> sigma() const { return sigma_; }

 private:
  void prepare(const ProjectionSet* projections);
  double eval_fsd(const Curve& x) const;
  double eval_kfsd(const Curve& x) const;
  double eval_hmd(const Curve& x) const;
  double eval_fmd(const Curve& x) const;
  double eval_mbd(const Curve& x) const;
  double eval_projected(const Curve& x) const;

  FunctionalSample sample_;
  DepthSpec spec_;
  DistanceMatrix dist_;
  std::optional<double> sigma_;
  double eps_zero_ = 0.0;
  // KFSD: 1 - kappa(y_i, y_j), row-major n x n.
  std::vector<double> one_minus_kernel_;
  // FMD/MBD: sample values at each grid point, sorted; m rows of n.
  std::vector<double> sorted_by_point_;
  // RTD/IDD: directions and sorted projected sample values, p rows of n.
  std::vector<Curve> directions_;
  std::vector<double> sorted_projections_;
};

struct DepthVector {
  std::vector<double> values;
  DepthSpec spec;
};

/// Depth of each query curve relative to the curves labeled `group`.
/// Queries are evaluated in parallel; results match depth_vector_serial
/// bit for bit.
DepthVector depth_vector(const LabeledSample& s, Label group, const FunctionalSample& queries,
                         const DepthSpec& spec);
DepthVector depth_vector_serial(const LabeledSample& s, Label group,
                                const FunctionalSample& queries, const DepthSpec& spec);

/// Evaluate a prepared model on every curve of `queries`, in parallel.
std::vector<double> evaluate_all(const DepthModel& model, const FunctionalSample& queries);
std::vector<double> evaluate_all_serial(const DepthModel& model, const FunctionalSample& queries);

}  // namespace fdepth
