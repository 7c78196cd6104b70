#include "fdepth/modelselect.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fdepth {

std::vector<std::size_t> CvPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> CvPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] != fold) out.push_back(i);
  return out;
}

CvPlan make_cv_plan(const LabeledSample& s, std::size_t folds, Seed seed) {
  if (folds < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 folds");
  for (Label g : {0, 1})
    if (s.count(g) < folds)
      throw Error(ErrorKind::InsufficientSample,
                  "group " + std::to_string(g) + " has fewer curves than folds");

  CvPlan plan{folds, std::vector<std::size_t>(s.size(), 0), seed};
  std::size_t next = 0;
  for (Label g : {0, 1}) {
    auto idx = s.indices_of(g);
    auto rng = substream(seed, {key(Stream::CvPlan), static_cast<std::uint64_t>(g)});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (auto i : idx) {
      plan.fold_of[i] = next;
      next = (next + 1) % folds;
    }
  }
  return plan;
}

std::string_view to_string(TieLevel t) {
  switch (t) {
    case TieLevel::Primary: return "primary";
    case TieLevel::Secondary: return "secondary";
    case TieLevel::Random: return "random";
  }
  return "?";
}

bool secondary_maximized(Method m) { return m == Method::WMD; }

namespace {

ClassifierSpec at_percentile(ClassifierSpec spec, double pct) {
  if (spec.method == Method::KNN || !spec.depth || spec.depth->kind != DepthKind::KFSD)
    throw Error(ErrorKind::InvalidArgument, "percentile selection needs a KFSD-based method");
  spec.depth->bandwidth_percentile = pct;
  return spec;
}

double own_group_sum(const std::vector<Prediction>& preds, const LabeledSample& test) {
  double acc = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) acc += preds[i].scores[test.labels()[i]];
  return acc;
}

}  // namespace

double tiebreak_score(const ClassifierSpec& method, const LabeledSample& cv_train,
                      const LabeledSample& cv_test, double percentile) {
  const Classifier c(cv_train, at_percentile(method, percentile));
  return own_group_sum(c.predict_all(cv_test.sample()), cv_test);
}

PercentileChoice cv_select_percentile(const LabeledSample& s, const ClassifierSpec& method,
                                      const std::vector<double>& grid, const CvPlan& plan) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty percentile grid");
  if (plan.fold_of.size() != s.size())
    throw Error(ErrorKind::InvalidArgument, "CV plan does not match the sample");
  const std::size_t nc = grid.size();

  PercentileChoice out;
  out.errors.assign(nc, 0);
  out.secondary.assign(nc, 0.0);

  // One trained classifier per (fold, candidate) gives both criteria.
  for (std::size_t f = 0; f < plan.folds; ++f) {
    const auto train = s.subset(plan.train_indices(f));
    const auto test = s.subset(plan.test_indices(f));
    for (std::size_t c = 0; c < nc; ++c) {
      const Classifier clf(train, at_percentile(method, grid[c]));
      const auto preds = clf.predict_all(test.sample());
      for (std::size_t i = 0; i < preds.size(); ++i)
        if (preds[i].label != test.labels()[i]) ++out.errors[c];
      out.secondary[c] += own_group_sum(preds, test);
    }
  }

  out.required_cv = std::set<std::size_t>(out.errors.begin(), out.errors.end()).size() >= 2;

  const auto best_err = *std::min_element(out.errors.begin(), out.errors.end());
  std::vector<std::size_t> tied;
  for (std::size_t c = 0; c < nc; ++c)
    if (out.errors[c] == best_err) tied.push_back(c);

  std::size_t pick = tied.front();
  if (tied.size() == 1) {
    out.tie_level = TieLevel::Primary;
  } else {
    const bool maximize = secondary_maximized(method.method);
    double best_sec = out.secondary[tied.front()];
    for (auto c : tied)
      best_sec = maximize ? std::max(best_sec, out.secondary[c]) : std::min(best_sec, out.secondary[c]);
    std::vector<std::size_t> still;
    for (auto c : tied)
      if (out.secondary[c] == best_sec) still.push_back(c);

    if (still.size() == 1) {
      out.tie_level = TieLevel::Secondary;
      pick = still.front();
    } else {
      out.tie_level = TieLevel::Random;
      auto rng = substream(plan.seed, {key(Stream::CvTie)});
      std::uniform_int_distribution<std::size_t> u(0, still.size() - 1);
      pick = still[u(rng)];
    }
  }

  out.percentile = grid[pick];
  out.cv_error = static_cast<double>(out.errors[pick]) / static_cast<double>(s.size());
  return out;
}

}  // namespace fdepth
