// INI experiment configs, parsed with Boost.PropertyTree.
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include "fdepth/experiments.hpp"

namespace fdepth {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <class T>
T get(const pt::ptree& tree, const std::string& path, T fallback) {
  try {
    // get(path, fallback) would silently return the fallback for unparsable text.
    if (!tree.get_child_optional(path)) return fallback;
    return tree.get<T>(path);
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorKind::ConfigError, "bad value for '" + path + "': " + e.what());
  }
}

template <class T>
T require(const pt::ptree& tree, const std::string& path) {
  try {
    return tree.get<T>(path);
  } catch (const pt::ptree_bad_path&) {
    throw Error(ErrorKind::ConfigError, "missing key '" + path + "'");
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorKind::ConfigError, "bad value for '" + path + "': " + e.what());
  }
}

// Non-negative integer; stream extraction would wrap "-4" around.
std::size_t to_count(const std::string& text, const std::string& path) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw Error(ErrorKind::ConfigError, "'" + path + "' must be a non-negative integer, got '" + text + "'");
  return v;
}

std::size_t get_count(const pt::ptree& tree, const std::string& path, std::size_t fallback) {
  if (!tree.get_child_optional(path)) return fallback;
  return to_count(tree.get<std::string>(path), path);
}

std::size_t require_count(const pt::ptree& tree, const std::string& path) {
  return to_count(require<std::string>(tree, path), path);
}

bool get_flag(const pt::ptree& tree, const std::string& path, bool fallback) {
  const auto v = get<std::string>(tree, path, fallback ? "true" : "false");
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw Error(ErrorKind::ConfigError, "'" + path + "' must be true or false");
}

std::vector<double> parse_numbers(const std::string& text, const std::string& path) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "'" + path + "': not a number: " + item);
    }
  }
  return out;
}

// "WMD+KFSD", "KNN", ... with the shared hyperparameters applied.
ClassifierSpec method_from_name(const std::string& name, double alpha, int k, int projections,
                                double hmd_percentile) {
  const auto plus = name.find('+');
  const Method method = parse_method(name.substr(0, plus));
  if (method == Method::KNN) {
    if (plus != std::string::npos) throw Error(ErrorKind::ConfigError, "k-NN takes no depth: " + name);
    return ClassifierSpec::knn(k);
  }
  if (plus == std::string::npos) throw Error(ErrorKind::ConfigError, "method needs a depth: " + name);
  const DepthKind kind = parse_depth_kind(name.substr(plus + 1));
  DepthSpec depth = DepthSpec::defaults(kind);
  if (kind == DepthKind::RTD || kind == DepthKind::IDD) depth.num_projections = projections;
  if (kind == DepthKind::HMD) depth.bandwidth_percentile = hmd_percentile;
  switch (method) {
    case Method::DTM: return ClassifierSpec::dtm(depth, alpha);
    case Method::WAD: return ClassifierSpec::wad(depth);
    default: return ClassifierSpec::wmd(depth);
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream is{std::string(text)};
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }

  ExperimentConfig cfg;
  try {
    cfg.title = get<std::string>(tree, "experiment.title", "");
    cfg.replications = get_count(tree, "experiment.replications", 125);
    cfg.master_seed = static_cast<Seed>(get_count(tree, "experiment.seed", 0));
    cfg.cv_folds = get_count(tree, "cv.folds", 5);
    if (auto p = tree.get_optional<std::string>("cv.percentiles"))
      cfg.percentiles = parse_numbers(*p, "cv.percentiles");
    cfg.format = parse_table_format(get<std::string>(tree, "output.format", "markdown"));
    if (auto out = tree.get_optional<std::string>("output.path")) cfg.output = base_dir / *out;

    const auto kind = get<std::string>(tree, "source.kind", "cgp");
    if (kind == "cgp") {
      SimulatedSource sim;
      sim.cgp.model = parse_cgp_model(require<std::string>(tree, "source.model"));
      sim.cgp.contaminated = get_flag(tree, "source.contaminated", false);
      sim.cgp.q = get<double>(tree, "source.q", 0.10);
      sim.cgp.n0 = get_count(tree, "source.n0", 50);
      sim.cgp.n1 = get_count(tree, "source.n1", 50);
      sim.cgp.grid_points = get_count(tree, "source.grid_points", 51);
      sim.train_per_group = {get_count(tree, "source.train0", sim.cgp.n0 / 2),
                             get_count(tree, "source.train1", sim.cgp.n1 / 2)};
      cfg.source = sim;
    } else if (kind == "dataset") {
      DatasetSource ds;
      ds.path = base_dir / require<std::string>(tree, "source.path");
      const auto scheme = get<std::string>(tree, "source.scheme", "T1");
      if (scheme == "T1") {
        ds.scheme.kind = SplitScheme::Kind::T1;
        ds.scheme.train_per_group = {require_count(tree, "source.train0"),
                                     require_count(tree, "source.train1")};
      } else if (scheme == "T2") {
        ds.scheme.kind = SplitScheme::Kind::T2;
      } else {
        throw Error(ErrorKind::ConfigError, "source.scheme must be T1 or T2");
      }
      ds.scheme.replications = cfg.replications;
      if (tree.get_child_optional("source.truncate_to"))
        ds.truncate_to = require_count(tree, "source.truncate_to");
      if (tree.get_child_optional("source.regrid_points"))
        ds.regrid_points = require_count(tree, "source.regrid_points");
      cfg.source = ds;
    } else {
      throw Error(ErrorKind::ConfigError, "source.kind must be cgp or dataset");
    }

    const double alpha = get<double>(tree, "parameters.alpha", 0.2);
    const int k = get<int>(tree, "parameters.k", 5);
    const int projections = get<int>(tree, "parameters.projections", 50);
    const double hmd_pct = get<double>(tree, "parameters.hmd_percentile", 15.0);
    const auto list = get<std::string>(tree, "methods.list", "all");
    if (list == "all") {
      for (const auto& spec : all_methods())
        cfg.methods.push_back(method_from_name(spec.name(), alpha, k, projections, hmd_pct));
    } else {
      for (const auto& name : split_list(list))
        cfg.methods.push_back(method_from_name(name, alpha, k, projections, hmd_pct));
    }
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    throw Error(ErrorKind::ConfigError, e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path());
}

}  // namespace fdepth
