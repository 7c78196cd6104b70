#include "fdepth/classify.hpp"

#include "fdepth/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fdepth {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::DTM: return "DTM";
    case Method::WAD: return "WAD";
    case Method::WMD: return "WMD";
    case Method::KNN: return "KNN";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::DTM, Method::WAD, Method::WMD, Method::KNN})
    if (to_string(m) == name) return m;
  if (name == "k-NN" || name == "kNN") return Method::KNN;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

ClassifierSpec ClassifierSpec::dtm(DepthSpec depth, double alpha, Seed tie_seed) {
  return {Method::DTM, std::move(depth), alpha, 5, tie_seed};
}
ClassifierSpec ClassifierSpec::wad(DepthSpec depth, Seed tie_seed) {
  return {Method::WAD, std::move(depth), std::nullopt, 5, tie_seed};
}
ClassifierSpec ClassifierSpec::wmd(DepthSpec depth, Seed tie_seed) {
  return {Method::WMD, std::move(depth), std::nullopt, 5, tie_seed};
}
ClassifierSpec ClassifierSpec::knn(int k, Seed tie_seed) {
  return {Method::KNN, std::nullopt, std::nullopt, k, tie_seed};
}

void ClassifierSpec::validate() const {
  if ((method == Method::KNN) == depth.has_value())
    throw Error(ErrorKind::InvalidArgument,
                method == Method::KNN ? "KNN takes no depth" : "depth-based method needs a depth");
  if ((method == Method::DTM) != alpha.has_value())
    throw Error(ErrorKind::InvalidArgument, "trimming proportion is given iff the method is DTM");
  if (alpha && !(*alpha >= 0.0 && *alpha < 1.0))
    throw Error(ErrorKind::InvalidArgument, "trimming proportion must lie in [0, 1)");
  if (method == Method::KNN && (k < 1 || k % 2 == 0))
    throw Error(ErrorKind::InvalidArgument, "k must be odd and positive");
  if (depth) depth->validate();
}

std::string ClassifierSpec::name() const {
  std::string out(to_string(method));
  if (depth) out += "+" + std::string(to_string(depth->kind));
  return out;
}

namespace {

Curve mean_of_deepest(const FunctionalSample& group, const std::vector<double>& depths,
                      double alpha) {
  const std::size_t n = group.size();
  // ceil((1 - alpha) n), guarded against products like 0.8 * 5 = 4.000...01
  auto m = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(n) - 1e-9));
  m = std::clamp<std::size_t>(m, 1, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depths[a] > depths[b]; });

  std::vector<double> mean(group.grid().size(), 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = group[order[r]];
    for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += c[t];
  }
  for (auto& v : mean) v /= static_cast<double>(m);
  return Curve(std::move(mean));
}

}  // namespace

Curve trimmed_mean(const LabeledSample& s, Label group, const DepthSpec& depth, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw Error(ErrorKind::InvalidArgument, "trimming proportion must lie in [0, 1)");
  const auto members = s.group(group);
  const DepthModel model(members, depth);
  return mean_of_deepest(members, evaluate_all(model, members), alpha);
}

Classifier::Classifier(const LabeledSample& train, ClassifierSpec spec)
    : spec_(std::move(spec)), train_(train), groups_{train.group(0), train.group(1)} {
  spec_.validate();
  validate_labeled_sample(train_);

  if (spec_.method == Method::KNN) {
    if (train_.size() < static_cast<std::size_t>(spec_.k))
      throw Error(ErrorKind::InsufficientSample, "fewer training curves than k");
    return;
  }

  const auto& depth = *spec_.depth;
  std::optional<ProjectionSet> proj;
  if (depth.kind == DepthKind::RTD || depth.kind == DepthKind::IDD)
    proj = generate_projections(train_.grid(), *depth.num_projections, *depth.projection_seed);

  models_.reserve(2);
  for (Label g : {0, 1}) {
    if (proj)
      models_.emplace_back(groups_[g], depth, *proj);
    else
      models_.emplace_back(groups_[g], depth);
  }

  if (spec_.method == Method::WMD) return;

  for (Label g : {0, 1}) {
    within_[g] = evaluate_all(models_[g], groups_[g]);
    if (spec_.method == Method::DTM) trimmed_[g] = mean_of_deepest(groups_[g], within_[g], *spec_.alpha);
    if (spec_.method == Method::WAD &&
        std::accumulate(within_[g].begin(), within_[g].end(), 0.0) <= 0.0)
      throw Error(ErrorKind::ZeroWeights, "all within-group depths of group " + std::to_string(g) +
                                              " are zero");
  }
}

std::optional<double> Classifier::sigma(Label g) const {
  if (models_.empty()) return std::nullopt;
  return models_[g].sigma();
}

Prediction Classifier::decide(std::array<double, 2> scores, bool larger_wins,
                              std::uint64_t query_key) const {
  Prediction p;
  p.scores = scores;
  if (scores[0] == scores[1]) {
    auto rng = substream(spec_.tie_seed, {key(Stream::TieBreak), query_key});
    p.label = static_cast<Label>(rng() & 1u);
    p.tie_broken = true;
  } else {
    p.label = (scores[1] > scores[0]) == larger_wins ? 1 : 0;
  }
  return p;
}

Prediction Classifier::predict(const Curve& x, std::uint64_t query_key) const {
  train_.sample().check_query(x);
  const auto& grid = train_.grid();

  switch (spec_.method) {
    case Method::DTM:
      return decide({l2_distance(x, trimmed_[0], grid), l2_distance(x, trimmed_[1], grid)}, false,
                    query_key);
    case Method::WAD: {
      std::array<double, 2> score{};
      for (Label g : {0, 1}) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < groups_[g].size(); ++i) {
          num += within_[g][i] * l2_distance(x, groups_[g][i], grid);
          den += within_[g][i];
        }
        score[g] = num / den;
      }
      return decide(score, false, query_key);
    }
    case Method::WMD:
      return decide({models_[0].evaluate(x), models_[1].evaluate(x)}, true, query_key);
    case Method::KNN: {
      const auto d = distances_to(train_.sample(), x);
      std::vector<std::size_t> order(d.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
      std::array<double, 2> votes{};
      for (int r = 0; r < spec_.k; ++r) votes[train_.labels()[order[r]]] += 1.0;
      return decide(votes, true, query_key);
    }
  }
  return {};
}

std::vector<Prediction> Classifier::predict_all_serial(const FunctionalSample& queries) const {
  std::vector<Prediction> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) out[q] = predict(queries[q], q);
  return out;
}

std::vector<Prediction> Classifier::predict_all(const FunctionalSample& queries) const {
  std::vector<Prediction> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t q) { out[q] = predict(queries[q], q); });
  return out;
}

namespace {

Prediction classify_one(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec,
                        Method expected) {
  if (spec.method != expected)
    throw Error(ErrorKind::InvalidArgument,
                "spec method " + std::string(to_string(spec.method)) + " passed to " +
                    std::string(to_string(expected)) + " classifier");
  return Classifier(s, spec).predict(x);
}

}  // namespace

Prediction dtm_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec) {
  return classify_one(s, x, spec, Method::DTM);
}
Prediction wad_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec) {
  return classify_one(s, x, spec, Method::WAD);
}
Prediction wmd_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec) {
  return classify_one(s, x, spec, Method::WMD);
}
Prediction knn_classify(const LabeledSample& s, const Curve& x, const ClassifierSpec& spec) {
  return classify_one(s, x, spec, Method::KNN);
}

std::size_t count_misclassified(const Classifier& c, const LabeledSample& test) {
  const auto preds = c.predict_all(test.sample());
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < preds.size(); ++i)
    if (preds[i].label != test.labels()[i]) ++wrong;
  return wrong;
}

}  // namespace fdepth
