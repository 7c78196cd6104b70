#include "fdepth/simulate.hpp"

#include "fdepth/parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace fdepth {

std::string_view to_string(CgpModel m) {
  switch (m) {
    case CgpModel::CGP1: return "CGP1";
    case CgpModel::CGP2: return "CGP2";
    case CgpModel::CGP3: return "CGP3";
    case CgpModel::CGP4: return "CGP4";
  }
  return "?";
}

CgpModel parse_cgp_model(std::string_view name) {
  for (auto m : {CgpModel::CGP1, CgpModel::CGP2, CgpModel::CGP3, CgpModel::CGP4})
    if (to_string(m) == name) return m;
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + std::string(name) + "'");
}

void CgpSpec::validate() const {
  if (contaminated && model != CgpModel::CGP1 && model != CgpModel::CGP2)
    throw Error(ErrorKind::InvalidArgument, "only CGP1 and CGP2 have contaminated variants");
  if (!(q >= 0.0 && q <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "contamination probability must lie in [0, 1]");
  if (grid_points < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 grid points");
}

Grid CgpSpec::grid() const {
  const bool unit = model == CgpModel::CGP1 || model == CgpModel::CGP3;
  return Grid::uniform(0.0, unit ? 1.0 : 2.0 * std::numbers::pi, grid_points);
}

double CovarianceKernel::operator()(double t, double s) const {
  const double r = std::abs(t - s) / scale;
  return form == Form::SqExp ? amplitude * std::exp(-r * r) : amplitude * std::exp(-r);
}

void CovarianceKernel::validate() const {
  if (!(amplitude > 0.0)) throw Error(ErrorKind::InvalidArgument, "covariance amplitude must be positive");
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "covariance scale must be positive");
}

CovarianceKernel cgp1_noise_kernel() { return {CovarianceKernel::Form::SqExp, 0.25, 1.0}; }
CovarianceKernel cgp3_noise_kernel() { return {CovarianceKernel::Form::AbsExp, 0.30, 0.3}; }
CovarianceKernel cgp4_noise_kernel() { return {CovarianceKernel::Form::SqExp, 0.00025, 1.0}; }

struct GaussianProcessSampler::Impl {
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

GaussianProcessSampler::GaussianProcessSampler(const Grid& grid, const CovarianceKernel& cov)
    : impl_(std::make_unique<Impl>()) {
  cov.validate();
  const auto pts = grid.points();
  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) k(i, j) = cov(pts[i], pts[j]);

  double jitter = 1e-10 * cov.amplitude;
  for (int attempt = 0; attempt <= 3; ++attempt, jitter *= 10.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(k + jitter * Eigen::MatrixXd::Identity(m, m));
    if (llt.info() == Eigen::Success) {
      impl_->lower = llt.matrixL();
      impl_->jitter = jitter;
      return;
    }
  }
  throw Error(ErrorKind::FactorizationFailure,
              "covariance matrix not positive definite after 3 jitter escalations");
}

GaussianProcessSampler::~GaussianProcessSampler() = default;
GaussianProcessSampler::GaussianProcessSampler(GaussianProcessSampler&&) noexcept = default;
GaussianProcessSampler& GaussianProcessSampler::operator=(GaussianProcessSampler&&) noexcept = default;

double GaussianProcessSampler::jitter() const { return impl_->jitter; }

Curve GaussianProcessSampler::draw(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto m = impl_->lower.rows();
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z(i) = normal(rng);
  const Eigen::VectorXd x = impl_->lower.triangularView<Eigen::Lower>() * z;
  return Curve(std::vector<double>(x.data(), x.data() + m));
}

Curve sample_gaussian_process(const Grid& grid, const CovarianceKernel& cov, std::mt19937_64& rng) {
  return GaussianProcessSampler(grid, cov).draw(rng);
}

namespace {

struct CurveDraw {
  std::vector<double> values;
  bool contaminated = false;
};

std::mt19937_64 curve_stream(const CgpSpec& spec, Stream s, Label g, std::size_t i) {
  return substream(spec.seed, {key(s), static_cast<std::uint64_t>(g), i});
}

CurveDraw draw_curve(const CgpSpec& spec, const Grid& grid, const GaussianProcessSampler* noise,
                     Label g, std::size_t i) {
  const auto t = grid.points();
  const std::size_t m = t.size();
  CurveDraw out{std::vector<double>(m, 0.0), false};

  if (g == 0 && spec.contaminated) {
    auto flag_rng = curve_stream(spec, Stream::Contamination, g, i);
    out.contaminated = std::uniform_real_distribution<double>(0.0, 1.0)(flag_rng) < spec.q;
  }

  switch (spec.model) {
    case CgpModel::CGP1:
    case CgpModel::CGP3:
      for (std::size_t k = 0; k < m; ++k) {
        if (g == 1)
          out.values[k] = 8.0 * t[k] - 2.0;
        else
          out.values[k] = out.contaminated ? 4.0 * std::sqrt(t[k]) : 4.0 * t[k];
      }
      break;
    case CgpModel::CGP2:
    case CgpModel::CGP4: {
      // Always draw all three coefficients so contamination leaves the
      // uncontaminated ones untouched.
      auto urng = curve_stream(spec, Stream::Uniform, g, i);
      std::uniform_real_distribution<double> low(0.05, 0.1), high(0.1, 0.12);
      double a, b;
      if (g == 0) {
        a = low(urng);
        b = low(urng);
        const double alt = high(urng);
        if (out.contaminated) b = alt;
      } else {
        a = high(urng);
        b = high(urng);
      }
      for (std::size_t k = 0; k < m; ++k) out.values[k] = a * std::sin(t[k]) + b * std::cos(t[k]);
      break;
    }
  }

  if (noise) {
    auto grng = curve_stream(spec, Stream::Gaussian, g, i);
    const auto eps = noise->draw(grng);
    for (std::size_t k = 0; k < m; ++k) out.values[k] += eps[k];
  }
  return out;
}

std::optional<GaussianProcessSampler> noise_for(const CgpSpec& spec, const Grid& grid) {
  switch (spec.model) {
    case CgpModel::CGP1: return GaussianProcessSampler(grid, cgp1_noise_kernel());
    case CgpModel::CGP3: return GaussianProcessSampler(grid, cgp3_noise_kernel());
    case CgpModel::CGP4: return GaussianProcessSampler(grid, cgp4_noise_kernel());
    case CgpModel::CGP2: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

LabeledSample generate_cgp(const CgpSpec& spec) {
  spec.validate();
  if (spec.n0 + spec.n1 == 0) throw Error(ErrorKind::InsufficientSample, "no curves requested");
  const Grid grid = spec.grid();
  const auto noise = noise_for(spec, grid);
  const GaussianProcessSampler* noise_ptr = noise ? &*noise : nullptr;

  const std::size_t total = spec.n0 + spec.n1;
  std::vector<Curve> curves(total);
  std::vector<Label> labels(total);
  parallel_for(total, [&](std::size_t idx) {
    const Label g = idx < spec.n0 ? 0 : 1;
    const std::size_t i = g == 0 ? idx : idx - spec.n0;
    curves[idx] = Curve(draw_curve(spec, grid, noise_ptr, g, i).values);
    labels[idx] = g;
  });
  return LabeledSample(FunctionalSample(grid, std::move(curves)), std::move(labels));
}

std::vector<bool> contamination_flags(const CgpSpec& spec) {
  spec.validate();
  const Grid grid = spec.grid();
  std::vector<bool> flags(spec.n0, false);
  if (!spec.contaminated) return flags;
  for (std::size_t i = 0; i < spec.n0; ++i) {
    auto flag_rng = curve_stream(spec, Stream::Contamination, 0, i);
    flags[i] = std::uniform_real_distribution<double>(0.0, 1.0)(flag_rng) < spec.q;
  }
  return flags;
}

}  // namespace fdepth
