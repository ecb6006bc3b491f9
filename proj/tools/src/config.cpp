#include "bracketlab/cli/config.hpp"

#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run", {"seed", "workers"}},
      {"counts", {"BROAD", "NARROW", "LOW", "PARTIAL", "BEFORE", "AFTER"}},
      {"alpha", {"log_mean", "log_sd", "tedium_slope"}},
      {"gamma", {"mean", "sd", "lower", "upper", "female_shift"}},
      {"money", {"rho"}},
      {"composition", {"type", "narrow_weight", "partial_weight", "kappa"}},
      {"behavior", {"framing_shift", "tremble"}},
      {"covariates", {"p_female", "age_min", "age_max", "tedium_min", "tedium_max"}},
      {"draws", {"paired"}},
      {"estimate", {"censor_limit", "continuity", "are", "keep_inconsistent"}},
  };
  return keys;
}

void check_schema(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(fmt::format("unknown section [{}]", section));
    if (!body.data().empty() && body.empty()) {
      throw ConfigError(fmt::format("key '{}' must belong to a section", section));
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError(fmt::format("unknown key {}.{}", section, key));
      }
    }
  }
}

template <class T>
void read(const pt::ptree& tree, const std::string& path, T& target) {
  const auto node = tree.get_child_optional(pt::ptree::path_type(path, '.'));
  if (!node) return;
  const auto value = node->get_value_optional<T>();
  if (!value) {
    throw ConfigError(fmt::format("{}: cannot parse '{}'", path, node->data()));
  }
  target = *value;
}

bool read_bool(const pt::ptree& tree, const std::string& path, bool fallback) {
  std::string text;
  read(tree, path, text);
  if (text.empty()) return fallback;
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("{}: expected a boolean, got '{}'", path, text));
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  check_schema(tree);

  RunConfig cfg;
  PopulationSpec& p = cfg.population;
  if (tree.get_child_optional("run.seed")) {
    std::uint64_t seed = 0;
    read(tree, "run.seed", seed);
    cfg.seed = seed;
    p.seed = seed;
  }
  read(tree, "run.workers", cfg.workers);

  for (auto t : kAllTreatments) read(tree, fmt::format("counts.{}", to_string(t)), p.count(t));

  read(tree, "alpha.log_mean", p.alpha.log_mean);
  read(tree, "alpha.log_sd", p.alpha.log_sd);
  read(tree, "alpha.tedium_slope", p.alpha_tedium_slope);
  read(tree, "gamma.mean", p.gamma.mean);
  read(tree, "gamma.sd", p.gamma.sd);
  read(tree, "gamma.lower", p.gamma.lower);
  read(tree, "gamma.upper", p.gamma.upper);
  read(tree, "gamma.female_shift", p.gamma_female_shift);
  if (tree.get_child_optional("money.rho")) {
    double rho = 0.0;
    read(tree, "money.rho", rho);
    p.rho = rho;
  }

  std::string type = "mixture";
  read(tree, "composition.type", type);
  if (type == "mixture") {
    MixtureComposition mix;
    read(tree, "composition.narrow_weight", mix.narrow_weight);
    read(tree, "composition.partial_weight", mix.partial_weight);
    if (tree.get_child_optional("composition.kappa")) {
      throw ConfigError("composition.kappa requires composition.type = kappa");
    }
    p.composition = mix;
  } else if (type == "kappa") {
    KappaComposition k;
    read(tree, "composition.kappa", k.kappa);
    if (tree.get_child_optional("composition.narrow_weight") ||
        tree.get_child_optional("composition.partial_weight")) {
      throw ConfigError("composition weights require composition.type = mixture");
    }
    p.composition = k;
  } else {
    throw ConfigError(fmt::format("composition.type: expected mixture or kappa, got '{}'", type));
  }

  read(tree, "behavior.framing_shift", p.framing_shift);
  read(tree, "behavior.tremble", p.tremble);
  read(tree, "covariates.p_female", p.p_female);
  read(tree, "covariates.age_min", p.age_min);
  read(tree, "covariates.age_max", p.age_max);
  read(tree, "covariates.tedium_min", p.tedium_min);
  read(tree, "covariates.tedium_max", p.tedium_max);
  p.paired_draws = read_bool(tree, "draws.paired", p.paired_draws);

  read(tree, "estimate.censor_limit", cfg.estimator.censor_limit);
  cfg.estimator.continuity = read_bool(tree, "estimate.continuity", false);
  cfg.estimator.are = read_bool(tree, "estimate.are", false);
  cfg.estimator.keep_inconsistent = read_bool(tree, "estimate.keep_inconsistent", false);

  try {
    validate(p);
  } catch (const InvalidPopulation& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config '{}'", path));
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace bracketlab::cli
