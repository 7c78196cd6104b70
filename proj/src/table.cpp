// Text rendering of experiment summaries.
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fdepth/experiments.hpp"

namespace fdepth {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<DepthKind> depth_columns(const ExperimentSummary& s) {
  std::vector<DepthKind> cols;
  for (auto d : kAllDepths)
    for (const auto& m : s.methods)
      if (m.depth == d) {
        cols.push_back(d);
        break;
      }
  return cols;
}

const MethodSummary* find(const ExperimentSummary& s, Method method, std::optional<DepthKind> d) {
  for (const auto& m : s.methods)
    if (m.method == method && m.depth == d) return &m;
  return nullptr;
}

std::string procedure_label(Method m) { return m == Method::KNN ? "k-NN" : std::string(to_string(m)); }

struct Row {
  std::string head;
  std::vector<std::string> cells;
};

std::string render(const std::string& corner, const std::vector<std::string>& columns,
                   const std::vector<Row>& rows, TableFormat format) {
  std::ostringstream os;
  if (format == TableFormat::Csv) {
    os << corner;
    for (const auto& c : columns) os << ',' << c;
    os << '\n';
    for (const auto& r : rows) {
      os << r.head;
      for (const auto& c : r.cells) os << ',' << c;
      os << '\n';
    }
  } else {
    os << "| " << corner << " |";
    for (const auto& c : columns) os << ' ' << c << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < columns.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& r : rows) {
      os << "| " << r.head << " |";
      for (const auto& c : r.cells) os << ' ' << c << " |";
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace

std::string ordinal(double percentile) {
  const auto v = static_cast<long>(std::lround(percentile));
  const char* suffix = "th";
  if (v % 100 < 11 || v % 100 > 13) {
    if (v % 10 == 1) suffix = "st";
    else if (v % 10 == 2) suffix = "nd";
    else if (v % 10 == 3) suffix = "rd";
  }
  return std::to_string(v) + suffix;
}

std::string emit_table(const ExperimentSummary& s, TableFormat format) {
  const auto cols = depth_columns(s);
  std::vector<std::string> col_names;
  for (auto d : cols) col_names.emplace_back(to_string(d));
  const bool csv = format == TableFormat::Csv;

  auto value = [&](const MethodSummary& m) {
    return s.counts_mode ? std::to_string(m.total_misclassified) : fixed2(m.mean_pct);
  };

  std::vector<Row> rows;
  for (auto method : {Method::DTM, Method::WAD, Method::WMD}) {
    bool any = false;
    Row mean{procedure_label(method), {}}, sd{procedure_label(method) + " (sd)", {}};
    for (auto d : cols) {
      const auto* m = find(s, method, d);
      any = any || m;
      if (!m) {
        mean.cells.emplace_back("");
        sd.cells.emplace_back("");
      } else if (csv || s.counts_mode) {
        mean.cells.push_back(value(*m));
        sd.cells.push_back(fixed2(m->sd_pct));
      } else {
        mean.cells.push_back(value(*m) + " (" + fixed2(m->sd_pct) + ")");
      }
    }
    if (!any) continue;
    rows.push_back(mean);
    if (csv && !s.counts_mode) rows.push_back(sd);
  }
  if (const auto* knn = find(s, Method::KNN, std::nullopt)) {
    Row mean{"k-NN", {}}, sd{"k-NN (sd)", {}};
    const auto width = std::max<std::size_t>(cols.size(), 1);
    for (std::size_t i = 0; i < width; ++i) {
      mean.cells.emplace_back(i == 0 ? (csv || s.counts_mode ? value(*knn)
                                                             : value(*knn) + " (" + fixed2(knn->sd_pct) + ")")
                                     : "");
      sd.cells.emplace_back(i == 0 ? fixed2(knn->sd_pct) : "");
    }
    rows.push_back(mean);
    if (csv && !s.counts_mode) rows.push_back(sd);
  }
  if (col_names.empty()) col_names.emplace_back("");
  return render("Method/Depth", col_names, rows, format);
}

std::string emit_cv_table(const ExperimentSummary& s, TableFormat format) {
  std::vector<Row> rows;
  for (const auto& m : s.methods) {
    if (!m.cv_required_fraction) continue;
    std::string best;
    for (std::size_t i = 0; i < m.best_percentiles.size(); ++i)
      best += (i ? (format == TableFormat::Csv ? " " : ", ") : "") + ordinal(m.best_percentiles[i]);
    rows.push_back({m.name, {fixed2(100.0 * *m.cv_required_fraction), best}});
  }
  if (rows.empty()) return {};
  return render("Method", {"CV required (%)", "Percentiles"}, rows, format);
}

std::string emit_timings(const ExperimentSummary& s) {
  std::ostringstream os;
  os << "method,mean_train_seconds\n";
  for (const auto& m : s.methods) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", m.mean_train_seconds);
    os << m.name << ',' << buf << '\n';
  }
  return os.str();
}

}  // namespace fdepth
