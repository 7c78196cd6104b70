#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdepth/core.hpp"

namespace fdepth {

/// Curves as read from disk: one shared, possibly nonequidistant domain.
struct RawCurveTable {
  std::vector<double> domain;
  std::vector<std::vector<double>> rows;
  std::vector<std::optional<Label>> labels;  // nullopt for '-'

  bool fully_labeled() const;
};

/// Header `label,<t_1>,...,<t_m>`, then rows `<0|1|->,<v_1>,...,<v_m>`.
/// LF or CRLF line endings; blank lines are ignored.
RawCurveTable parse_curves_csv(std::string_view text);
RawCurveTable load_curves_csv(const std::filesystem::path& path);

/// Writes the same format; domain and values use shortest round-trip
/// decimal form.
std::string format_curves_csv(const LabeledSample& s);
std::string format_curves_csv(const FunctionalSample& s);

/// Keeps the first `k` domain points (e.g. the first frequencies of a
/// spectrum).
RawCurveTable truncate_domain(const RawCurveTable& table, std::size_t k);

/// Table used as is: its domain becomes the grid.
FunctionalSample to_sample(const RawCurveTable& table);
/// Throws UnlabeledCurve if any curve is unlabeled.
LabeledSample to_labeled(const RawCurveTable& table, FunctionalSample sample);

/// Natural cubic spline through each row, evaluated at m equidistant points
/// spanning the original domain.
FunctionalSample natural_cubic_regrid(const RawCurveTable& table, std::size_t m);

struct SplitScheme {
  enum class Kind { T1, T2 };
  Kind kind = Kind::T1;
  std::array<std::size_t, 2> train_per_group{0, 0};  // T1
  std::size_t replications = 1;                      // T1
  Seed seed = 0;
};

struct TrainTest {
  LabeledSample train;
  LabeledSample test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Random per-group subset of the configured size for training, the rest
/// for testing; replication r draws from its own substream.
TrainTest split_t1(const LabeledSample& s, const SplitScheme& scheme, std::size_t r);

/// Leave curve i out.
TrainTest split_t2(const LabeledSample& s, std::size_t i);

}  // namespace fdepth
