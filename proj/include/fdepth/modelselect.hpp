#pragma once

#include <vector>

#include "fdepth/classify.hpp"
#include "fdepth/core.hpp"

namespace fdepth {

/// The candidate KFSD bandwidth percentiles.
inline const std::vector<double> kDefaultPercentiles = {15, 25, 33, 50, 66, 75, 85};

/// Label-stratified fold assignment.
struct CvPlan {
  std::size_t folds = 5;
  std::vector<std::size_t> fold_of;  // per curve
  Seed seed = 0;

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Shuffles each label's curves and deals them round-robin into folds; the
/// dealing position carries over from label 0 to label 1 so total fold sizes
/// differ by at most one.
CvPlan make_cv_plan(const LabeledSample& s, std::size_t folds, Seed seed);

enum class TieLevel { Primary, Secondary, Random };
std::string_view to_string(TieLevel t);

struct PercentileChoice {
  double percentile = 0.0;
  double cv_error = 0.0;                  // misclassified fraction at the choice
  bool required_cv = false;               // at least two distinct CV errors
  TieLevel tie_level = TieLevel::Primary;
  std::vector<std::size_t> errors;        // misclassified count per candidate
  std::vector<double> secondary;          // tiebreak_score per candidate, summed over folds
};

/// Secondary criterion for one CV split at one percentile: the sum over the
/// test curves of their own-group score. DTM: distance to the own-group
/// trimmed mean (smaller is better). WAD: own-group weighted average distance
/// (smaller is better). WMD: KFSD within the own group (larger is better).
double tiebreak_score(const ClassifierSpec& method, const LabeledSample& cv_train,
                      const LabeledSample& cv_test, double percentile);

/// True when larger secondary scores are better for this method.
bool secondary_maximized(Method m);

/// Picks the KFSD bandwidth percentile with the fewest CV misclassifications,
/// then by the secondary criterion, then uniformly at random from plan.seed.
PercentileChoice cv_select_percentile(const LabeledSample& s, const ClassifierSpec& method,
                                      const std::vector<double>& grid, const CvPlan& plan);

}  // namespace fdepth
