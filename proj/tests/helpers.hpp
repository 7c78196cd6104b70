#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fdepth/core.hpp"

namespace fdepth::test {

inline Curve constant(const Grid& g, double c) { return Curve(std::vector<double>(g.size(), c)); }

inline FunctionalSample constants(const Grid& g, std::initializer_list<double> cs) {
  std::vector<Curve> curves;
  for (double c : cs) curves.push_back(constant(g, c));
  return FunctionalSample(g, std::move(curves));
}

// Smooth-ish random curve: random walk plus a random sinusoid.
inline Curve random_curve(const Grid& g, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> z(0.0, 1.0);
  const double a = z(rng), b = z(rng), off = z(rng);
  std::vector<double> v(g.size());
  double walk = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    walk += 0.2 * z(rng);
    const double t = g.points()[i];
    v[i] = scale * (off + a * std::sin(6.0 * t) + b * t + walk);
  }
  return Curve(std::move(v));
}

inline FunctionalSample random_sample(const Grid& g, std::size_t n, std::mt19937_64& rng) {
  std::vector<Curve> curves;
  for (std::size_t i = 0; i < n; ++i) curves.push_back(random_curve(g, rng));
  return FunctionalSample(g, std::move(curves));
}

inline LabeledSample random_labeled(const Grid& g, std::size_t n0, std::size_t n1, std::mt19937_64& rng,
                                    double shift = 1.0) {
  std::vector<Curve> curves;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n0 + n1; ++i) {
    auto c = random_curve(g, rng);
    const Label l = i < n0 ? 0 : 1;
    if (l == 1) {
      std::vector<double> v(c.values().begin(), c.values().end());
      for (double& x : v) x += shift;
      c = Curve(std::move(v));
    }
    curves.push_back(std::move(c));
    labels.push_back(l);
  }
  return LabeledSample(FunctionalSample(g, std::move(curves)), std::move(labels));
}

// c * y + b applied to every curve.
inline Curve affine(const Curve& y, double c, double b) {
  std::vector<double> v(y.values().begin(), y.values().end());
  for (double& x : v) x = c * x + b;
  return Curve(std::move(v));
}

inline FunctionalSample affine(const FunctionalSample& s, double c, double b) {
  std::vector<Curve> curves;
  for (const auto& y : s.curves()) curves.push_back(affine(y, c, b));
  return FunctionalSample(s.grid(), std::move(curves));
}

inline LabeledSample affine(const LabeledSample& s, double c, double b) {
  return LabeledSample(affine(s.sample(), c, b), s.labels());
}

}  // namespace fdepth::test
