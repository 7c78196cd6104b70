#include "fdepth/datasets.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>
#include <fstream>
#include <numeric>
#include <sstream>

namespace fdepth {

bool RawCurveTable::fully_labeled() const {
  return std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); });
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                    : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view cell, std::size_t line_no, std::size_t col) {
  cell = trim(cell);
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column " +
                                           std::to_string(col + 1) + ": not a number: '" +
                                           std::string(cell) + "'");
  return v;
}

std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

RawCurveTable parse_curves_csv(std::string_view text) {
  RawCurveTable table;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const auto cells = split_commas(line);
    if (!have_header) {
      if (trim(cells.front()) != "label")
        throw Error(ErrorKind::ParseError, "line 1: header must start with 'label'");
      if (cells.size() < 2) throw Error(ErrorKind::ParseError, "line 1: header has no domain values");
      for (std::size_t c = 1; c < cells.size(); ++c)
        table.domain.push_back(parse_number(cells[c], line_no, c));
      for (std::size_t c = 1; c < table.domain.size(); ++c)
        if (!(table.domain[c] > table.domain[c - 1]))
          throw Error(ErrorKind::DomainNotIncreasing,
                      "header domain value " + std::to_string(c + 1) + " is not increasing");
      have_header = true;
      continue;
    }

    if (cells.size() != table.domain.size() + 1)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + " (curve " +
                                             std::to_string(table.rows.size()) + "): expected " +
                                             std::to_string(table.domain.size() + 1) +
                                             " cells, got " + std::to_string(cells.size()));
    const auto lab = trim(cells.front());
    if (lab == "0")
      table.labels.emplace_back(0);
    else if (lab == "1")
      table.labels.emplace_back(1);
    else if (lab == "-")
      table.labels.emplace_back(std::nullopt);
    else
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad label '" +
                                             std::string(lab) + "'");
    std::vector<double> row;
    row.reserve(table.domain.size());
    for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_number(cells[c], line_no, c));
    table.rows.push_back(std::move(row));
    if (eol == text.size()) break;
  }
  if (!have_header) throw Error(ErrorKind::ParseError, "empty file");
  return table;
}

RawCurveTable load_curves_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_curves_csv(buf.str());
}

namespace {

std::string format_rows(const FunctionalSample& s, const std::vector<Label>* labels) {
  std::string out = "label";
  for (double t : s.grid().points()) out += "," + shortest(t);
  out += "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += labels ? std::to_string((*labels)[i]) : std::string("-");
    for (double v : s[i].values()) out += "," + shortest(v);
    out += "\n";
  }
  return out;
}

}  // namespace

std::string format_curves_csv(const LabeledSample& s) { return format_rows(s.sample(), &s.labels()); }
std::string format_curves_csv(const FunctionalSample& s) { return format_rows(s, nullptr); }

RawCurveTable truncate_domain(const RawCurveTable& table, std::size_t k) {
  if (k < 2 || k > table.domain.size())
    throw Error(ErrorKind::InvalidArgument, "cannot truncate a domain of " +
                                                std::to_string(table.domain.size()) + " points to " +
                                                std::to_string(k));
  RawCurveTable out;
  out.domain.assign(table.domain.begin(), table.domain.begin() + static_cast<std::ptrdiff_t>(k));
  out.labels = table.labels;
  for (const auto& r : table.rows) out.rows.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

FunctionalSample to_sample(const RawCurveTable& table) {
  std::vector<Curve> curves;
  curves.reserve(table.rows.size());
  for (const auto& r : table.rows) curves.emplace_back(r);
  return FunctionalSample(Grid(table.domain), std::move(curves));
}

LabeledSample to_labeled(const RawCurveTable& table, FunctionalSample sample) {
  std::vector<Label> labels;
  labels.reserve(table.labels.size());
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    if (!table.labels[i])
      throw Error(ErrorKind::UnlabeledCurve, "curve " + std::to_string(i) + " is unlabeled");
    labels.push_back(*table.labels[i]);
  }
  return LabeledSample(std::move(sample), std::move(labels));
}

FunctionalSample natural_cubic_regrid(const RawCurveTable& table, std::size_t m) {
  const std::size_t k = table.domain.size();
  if (k < 4) throw Error(ErrorKind::InsufficientPoints, "natural spline needs at least 4 domain points");
  if (m < 2) throw Error(ErrorKind::InsufficientPoints, "need at least 2 output points");
  const Grid out_grid = Grid::uniform(table.domain.front(), table.domain.back(), m);

  gsl_set_error_handler_off();
  std::unique_ptr<gsl_interp_accel, decltype(&gsl_interp_accel_free)> acc(gsl_interp_accel_alloc(),
                                                                          gsl_interp_accel_free);
  std::unique_ptr<gsl_spline, decltype(&gsl_spline_free)> spline(gsl_spline_alloc(gsl_interp_cspline, k),
                                                                 gsl_spline_free);
  std::vector<Curve> curves;
  curves.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (gsl_spline_init(spline.get(), table.domain.data(), table.rows[r].data(), k) != GSL_SUCCESS)
      throw Error(ErrorKind::InvalidArgument, "spline fit failed for curve " + std::to_string(r));
    gsl_interp_accel_reset(acc.get());
    std::vector<double> values(m);
    for (std::size_t i = 0; i < m; ++i) {
      double v = 0.0;
      if (gsl_spline_eval_e(spline.get(), out_grid.points()[i], acc.get(), &v) != GSL_SUCCESS)
        throw Error(ErrorKind::InvalidArgument, "spline evaluation failed for curve " + std::to_string(r));
      values[i] = v;
    }
    curves.emplace_back(std::move(values));
  }
  return FunctionalSample(out_grid, std::move(curves));
}

TrainTest split_t1(const LabeledSample& s, const SplitScheme& scheme, std::size_t r) {
  if (scheme.kind != SplitScheme::Kind::T1)
    throw Error(ErrorKind::InvalidArgument, "split_t1 needs a T1 scheme");
  std::vector<std::size_t> train, test;
  for (Label g : {0, 1}) {
    auto idx = s.indices_of(g);
    const std::size_t want = scheme.train_per_group[g];
    if (want >= idx.size() || want == 0)
      throw Error(ErrorKind::InsufficientSample,
                  "group " + std::to_string(g) + " has " + std::to_string(idx.size()) +
                      " curves; cannot train on " + std::to_string(want));
    auto rng = substream(scheme.seed, {key(Stream::Split), r, static_cast<std::uint64_t>(g)});
    std::shuffle(idx.begin(), idx.end(), rng);
    train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(want));
    test.insert(test.end(), idx.begin() + static_cast<std::ptrdiff_t>(want), idx.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {s.subset(train), s.subset(test), train, test};
}

TrainTest split_t2(const LabeledSample& s, std::size_t i) {
  if (i >= s.size())
    throw Error(ErrorKind::IndexOutOfRange, "curve " + std::to_string(i) + " of " + std::to_string(s.size()));
  if (s.size() < 2) throw Error(ErrorKind::InsufficientSample, "leave-one-out needs 2 curves");
  std::vector<std::size_t> train;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) train.push_back(j);
  std::vector<std::size_t> test{i};
  return {s.subset(train), s.subset(test), train, test};
}

}  // namespace fdepth
