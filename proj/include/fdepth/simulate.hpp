#pragma once

#include <memory>
#include <random>

#include "fdepth/core.hpp"

namespace fdepth {

enum class CgpModel { CGP1, CGP2, CGP3, CGP4 };
std::string_view to_string(CgpModel m);
CgpModel parse_cgp_model(std::string_view name);

struct CgpSpec {
  CgpModel model = CgpModel::CGP1;
  bool contaminated = false;
  double q = 0.10;
  std::size_t n0 = 50;
  std::size_t n1 = 50;
  std::size_t grid_points = 51;
  Seed seed = 0;

  void validate() const;
  /// [0, 1] for CGP1/CGP3, [0, 2 pi] for CGP2/CGP4.
  Grid grid() const;
};

/// Stationary covariance amplitude * exp(-((t - s) / scale)^2) (SqExp) or
/// amplitude * exp(-|t - s| / scale) (AbsExp).
struct CovarianceKernel {
  enum class Form { SqExp, AbsExp };
  Form form = Form::SqExp;
  double amplitude = 1.0;
  double scale = 1.0;

  double operator()(double t, double s) const;
  void validate() const;
};

/// Zero-mean Gaussian process on a fixed grid. The covariance matrix is
/// factored once (with diagonal jitter 1e-10 * amplitude, escalated tenfold
/// up to three times) and reused for every draw.
class GaussianProcessSampler {
 public:
  GaussianProcessSampler(const Grid& grid, const CovarianceKernel& cov);
  ~GaussianProcessSampler();
  GaussianProcessSampler(GaussianProcessSampler&&) noexcept;
  GaussianProcessSampler& operator=(GaussianProcessSampler&&) noexcept;

  Curve draw(std::mt19937_64& rng) const;
  double jitter() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Curve sample_gaussian_process(const Grid& grid, const CovarianceKernel& cov, std::mt19937_64& rng);

/// Covariance kernels of the simulation models.
CovarianceKernel cgp1_noise_kernel();  // 0.25 exp(-(t - s)^2)
CovarianceKernel cgp3_noise_kernel();  // 0.30 exp(-|t - s| / 0.3)
CovarianceKernel cgp4_noise_kernel();  // 0.00025 exp(-(t - s)^2)

/// n0 curves with label 0 followed by n1 curves with label 1. Every curve
/// draws from its own substreams keyed by (seed, group, index), so the
/// contamination flag never shifts the other draws.
LabeledSample generate_cgp(const CgpSpec& spec);

/// Which group-0 curves of generate_cgp(spec) took the contaminated mean.
std::vector<bool> contamination_flags(const CgpSpec& spec);

}  // namespace fdepth
