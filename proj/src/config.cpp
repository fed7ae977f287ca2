#include "auxeig/experiment.hpp"

#include "auxeig/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace auxeig
{

namespace pt = boost::property_tree;

void validate_config(const ExperimentConfig& cfg)
{
  if (cfg.p_min < 1) throw ConfigurationError("p_min must be >= 1");
  if (cfg.p_min > cfg.p_max) throw ConfigurationError("p_min must not exceed p_max");
  if (cfg.use_reference && cfg.p_ref <= cfg.p_max) throw ConfigurationError("p_ref must exceed p_max");
  if (cfg.r < 1) throw ConfigurationError("cluster size r must be >= 1");
  if (cfg.modes)
    for (int k : *cfg.modes)
      if (k < 1) throw ConfigurationError("tracked mode indices are 1-based");
  const bool bridge = cfg.domain.domain == DomainType::Bridge;
  if (bridge != (cfg.domain.bc_case != 0) || bridge != cfg.domain.bridge_bc.has_value())
    throw ConfigurationError("bc_case and bridge_bc are required for, and only for, the bridge domain");
  if (bridge && (cfg.domain.bc_case < 1 || cfg.domain.bc_case > 10))
    throw ConfigurationError("bc_case must be in 1..10");
  if (cfg.domain.grading_layers < 0) throw ConfigurationError("grading_layers must be >= 0");
  if (!(cfg.domain.grading_factor > 0 && cfg.domain.grading_factor < 1))
    throw ConfigurationError("grading_factor must be in (0, 1)");
  if (cfg.solver.tol <= 0 || cfg.solver.max_iterations < 1) throw ConfigurationError("invalid solver options");
  if (cfg.assembly.quad_increment < 0) throw ConfigurationError("quad_increment must be >= 0");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigurationError("format must be csv or json");
}

std::vector<int> tracked_modes(const ExperimentConfig& cfg)
{
  if (cfg.modes) return *cfg.modes;
  std::vector<int> m(cfg.r);
  for (int k = 0; k < cfg.r; ++k) m[k] = k + 1;
  return m;
}

namespace
{

const std::set<std::string> known_keys = {
    "domain.domain",         "domain.bc_case",         "domain.bridge_bc",      "domain.grading_layers",
    "domain.grading_factor", "domain.square_divisions", "space.family",         "space.p_min",
    "space.p_max",           "space.p_ref",            "space.ref_family",      "space.reference",
    "space.quad_increment",  "cluster.r",              "cluster.modes",         "cluster.constant",
    "cluster.detect_modes",  "solver.tol",             "solver.max_iterations", "solver.block_size",
    "solver.dense_threshold", "solver.shift",          "solver.seed",           "output.dir",
    "output.format"};

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback)
{
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  std::istringstream is(*v);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof()) throw ConfigurationError("invalid value for " + key + ": '" + *v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v)
{
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigurationError("invalid boolean for " + key + ": '" + v + "'");
}

BoundaryCondition parse_bc(const std::string& v)
{
  if (v == "d" || v == "D" || v == "dirichlet" || v == "Dirichlet") return BoundaryCondition::Dirichlet;
  if (v == "n" || v == "N" || v == "neumann" || v == "Neumann") return BoundaryCondition::Neumann;
  throw ConfigurationError("invalid bridge_bc '" + v + "' (expected d or n)");
}

std::vector<int> parse_modes(const std::string& v)
{
  std::vector<int> out;
  std::string s = v;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream is(s);
  std::string tok;
  while (is >> tok)
  {
    const auto dash = tok.find('-');
    try
    {
      if (dash != std::string::npos && dash > 0)
      {
        const int a = std::stoi(tok.substr(0, dash)), b = std::stoi(tok.substr(dash + 1));
        if (a > b) throw ConfigurationError("empty mode range " + tok);
        for (int k = a; k <= b; ++k) out.push_back(k);
      }
      else
        out.push_back(std::stoi(tok));
    }
    catch (const std::logic_error&)
    {
      throw ConfigurationError("invalid mode list entry '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text)
{
  pt::ptree tree;
  std::istringstream is(text);
  try
  {
    pt::read_ini(is, tree);
  }
  catch (const pt::ini_parser_error& e)
  {
    throw ConfigurationError(std::string("config syntax error: ") + e.what());
  }
  for (const auto& [section, sub] : tree)
  {
    if (sub.empty()) throw ConfigurationError("key '" + section + "' outside of a section");
    for (const auto& kv : sub)
      if (!known_keys.count(section + "." + kv.first))
        throw ConfigurationError("unknown config key " + section + "." + kv.first);
  }

  ExperimentConfig cfg;
  const auto dom = tree.get_optional<std::string>("domain.domain");
  if (!dom) throw ConfigurationError("config must set [domain] domain");
  cfg.domain.domain = domain_from_string(*dom);
  cfg.domain.bc_case = get<int>(tree, "domain.bc_case", 0);
  if (auto b = tree.get_optional<std::string>("domain.bridge_bc")) cfg.domain.bridge_bc = parse_bc(*b);
  cfg.domain.grading_layers = get<int>(tree, "domain.grading_layers", cfg.domain.grading_layers);
  cfg.domain.grading_factor = get<double>(tree, "domain.grading_factor", cfg.domain.grading_factor);
  cfg.domain.square_divisions = get<int>(tree, "domain.square_divisions", cfg.domain.square_divisions);

  cfg.family = family_from_string(tree.get<std::string>("space.family", "P"));
  cfg.p_min = get<int>(tree, "space.p_min", cfg.p_min);
  cfg.p_max = get<int>(tree, "space.p_max", cfg.p_max);
  cfg.p_ref = get<int>(tree, "space.p_ref", cfg.p_ref);
  if (auto f = tree.get_optional<std::string>("space.ref_family")) cfg.ref_family = family_from_string(*f);
  if (auto v = tree.get_optional<std::string>("space.reference")) cfg.use_reference = parse_bool("space.reference", *v);
  cfg.assembly.quad_increment = get<int>(tree, "space.quad_increment", cfg.assembly.quad_increment);

  cfg.r = get<int>(tree, "cluster.r", cfg.r);
  if (auto m = tree.get_optional<std::string>("cluster.modes")) cfg.modes = parse_modes(*m);
  const std::string cf = tree.get<std::string>("cluster.constant", "interval");
  if (cf == "interval")
    cfg.constant = ConstantForm::Interval;
  else if (cf == "full")
    cfg.constant = ConstantForm::Full;
  else
    throw ConfigurationError("cluster.constant must be interval or full");

  if (auto v = tree.get_optional<std::string>("cluster.detect_modes"))
    cfg.detect_modes = parse_bool("cluster.detect_modes", *v);

  cfg.solver.tol = get<double>(tree, "solver.tol", cfg.solver.tol);
  cfg.solver.max_iterations = get<int>(tree, "solver.max_iterations", cfg.solver.max_iterations);
  cfg.solver.block_size = get<int>(tree, "solver.block_size", cfg.solver.block_size);
  cfg.solver.dense_threshold = get<int>(tree, "solver.dense_threshold", cfg.solver.dense_threshold);
  cfg.solver.shift = get<double>(tree, "solver.shift", cfg.solver.shift);
  cfg.solver.seed = get<std::uint64_t>(tree, "solver.seed", cfg.solver.seed);

  cfg.output_dir = tree.get<std::string>("output.dir", cfg.output_dir);
  cfg.format = tree.get<std::string>("output.format", cfg.format);

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

}  // namespace auxeig
