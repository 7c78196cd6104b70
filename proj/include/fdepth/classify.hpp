#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fdepth/core.hpp"
#include "fdepth/depths.hpp"

namespace fdepth {

enum class Method { DTM, WAD, WMD, KNN };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct ClassifierSpec {
  Method method = Method::KNN;
  std::optional<DepthSpec> depth;  // DTM, WAD, WMD
  std::optional<double> alpha;     // DTM trimming proportion
  int k = 5;                       // KNN
  Seed tie_seed = 0;

  static ClassifierSpec dtm(DepthSpec depth, double alpha = 0.2, Seed tie_seed = 0);
  static ClassifierSpec wad(DepthSpec depth, Seed tie_seed = 0);
  static ClassifierSpec wmd(DepthSpec depth, Seed tie_seed = 0);
  static ClassifierSpec knn(int k = 5, Seed tie_seed = 0);

  void validate() const;
  /// "WMD+KFSD", "KNN", ...
  std::string name() const;
};

/// `scores` holds per-group distances (DTM, WAD), depths (WMD) or votes (KNN).
struct Prediction {
  Label label = 0;
  std::array<double, 2> scores{};
  bool tie_broken = false;
};

/// Pointwise mean of the ceil((1 - alpha) n_g) deepest curves of group g,
/// depth computed within the group. Ties at the cutoff go to the lower index.
Curve trimmed_mean(const LabeledSample& s, Label group, const DepthSpec& depth, double alpha);

/// A classifier trained once and queried many times. Within-group depths,
/// trimmed means and group depth models are prepared at construction.
class Classifier {
 public:
  Classifier(const LabeledSample& train, ClassifierSpec spec);

  /// `query_key` selects the tie-break substream so batch predictions stay
  /// reproducible regardless of scheduling.
  Prediction predict(const Curve& x, std::uint64_t query_key = 0) const;

  /// predict(queries[i], i) for every i, evaluated in parallel.
  std::vector<Prediction> predict_all(const FunctionalSample& queries) const;
  std::vector<Prediction> predict_all_serial(const FunctionalSample& queries) const;

  const ClassifierSpec& spec() const { return spec_; }
  /// Within-group depth of each member of group g (DTM, WAD).
  const std::vector<double>& within_depths(Label g) const { return within_[g]; }
  const Curve& trimmed_mean(Label g) const { return trimmed_[g]; }
  /// Kernel bandwidth used for group g, if the depth has one.
  std::optional<double> sigma(Label g) const;

 private:
  Prediction decide(std::array<double, 2> scores, bool larger_wins, std::uint64_t query_key) const;

  ClassifierSpec spec_;
  LabeledSample train_;
  std::array<FunctionalSample, 2> groups_;
  std::vector<DepthModel> models_;
  std::array<std::vector<double>, 2> within_;
  std::array<Curve, 2> trimmed_;
};

Prediction dtm_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec);
Prediction wad_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec);
Prediction wmd_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec);
Prediction knn_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec);

/// Number of curves of `test` whose prediction differs from their label.
std::size_t count_misclassified(const Classifier& c, const LabeledSample& test);

}  // namespace fdepth
