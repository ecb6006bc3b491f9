#include "bracketlab/cli/commands.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bracketlab/cli/config.hpp"
#include "bracketlab/dataset_csv.hpp"
#include "bracketlab/errors.hpp"
#include "bracketlab/power.hpp"
#include "bracketlab/report.hpp"
#include "bracketlab/theory.hpp"

namespace bracketlab::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(fmt::format("cannot write '{}'", path));
  file << text;
  if (!file.flush()) throw Error(fmt::format("failed writing '{}'", path));
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(fmt::format("cannot read data '{}'", path));
  try {
    return read_csv(in);
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", path, e.what()));
  }
}

// Config and schema problems are the caller's to fix; everything else that
// escapes a command is a failed run.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const SchemaError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const InvalidParams& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load_config(opt.config);
    if (opt.seed) cfg.seed = opt.seed;
    if (!cfg.seed) {
      throw ConfigError(
          fmt::format("{}: missing required field run.seed (or pass --seed)", opt.config));
    }
    cfg.population.seed = *cfg.seed;
    const unsigned workers = opt.workers.value_or(cfg.workers);
    const Dataset d = simulate_dataset(cfg.population, workers);
    const std::string csv = to_csv(d);
    if (opt.out.empty() || opt.out == "-") {
      out << csv;
    } else {
      write_file(opt.out, csv);
      fmt::print(out, "wrote {} subjects ({} rows) to {}\n", d.records.size(),
                 2 * d.records.size(), opt.out);
    }
    return kExitOk;
  });
}

int cmd_estimate(const EstimateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    EstimatorOptions est;
    if (opt.config) est = load_config(*opt.config).estimator;
    if (opt.censor_limit) est.censor_limit = *opt.censor_limit;
    if (opt.continuity) est.continuity = *opt.continuity;
    if (opt.keep_inconsistent) est.keep_inconsistent = *opt.keep_inconsistent;

    const Dataset d = load_dataset(opt.data);
    const auto obs = observations(d, !est.keep_inconsistent);

    std::string md;
    std::string csv;
    if (opt.what == "means") {
      const auto cells = summarize_means(obs);
      md = render_means_markdown(cells);
      csv = render_means_csv(cells);
    } else if (opt.what == "mwu") {
      const auto tables = mwu_tables(obs, est.continuity);
      md = render_mwu_markdown(tables);
      csv = render_mwu_csv(tables);
    } else if (opt.what == "kappa") {
      const auto fits = kappa_columns(obs);
      md = render_kappa_markdown(fits);
      csv = render_kappa_csv(fits);
    } else if (opt.what == "tobit") {
      const auto columns = tobit_columns(obs, est.censor_limit);
      md = render_tobit_markdown(columns);
      csv = render_tobit_csv(columns);
    } else {
      throw InvalidParams(
          fmt::format("unknown estimate '{}'; expected means, mwu, kappa or tobit", opt.what));
    }

    if (opt.out.empty()) {
      out << md;
    } else {
      write_file(opt.out + ".md", md);
      write_file(opt.out + ".csv", csv);
      fmt::print(out, "wrote {0}.md and {0}.csv\n", opt.out);
    }
    return kExitOk;
  });
}

int cmd_power(const PowerOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SampleSizes n = power_two_sample(opt.d, opt.alpha, opt.power, opt.ratio, opt.are);
    fmt::print(out, "n_large={}\nn_small={}\n", n.n_large, n.n_small);
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerificationReport report = run_verification(opt.suite, opt.seed);
    out << render_text(report);
    return report.passed() ? kExitOk : kExitFailure;
  });
}

}  // namespace bracketlab::cli
