#include "bracketlab/report.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

std::string num(double x) { return fmt::format("{:.4f}", x); }

std::string join(const std::vector<std::string>& cells, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += sep;
    out += cells[i];
  }
  return out;
}

std::string md_row(const std::vector<std::string>& cells) {
  return "| " + join(cells, " | ") + " |\n";
}

std::string md_rule(std::size_t columns) {
  std::vector<std::string> dashes(columns, "---");
  return md_row(dashes);
}

std::vector<Treatment> present(std::span<const Observation> obs, Scenario s) {
  std::vector<Treatment> out;
  for (auto t : kAllTreatments) {
    const bool any = std::any_of(obs.begin(), obs.end(), [&](const Observation& o) {
      return o.treatment == t && o.scenario == s;
    });
    if (any) out.push_back(t);
  }
  return out;
}

}  // namespace

std::string render_means_markdown(std::span<const CellSummary> cells) {
  std::string out = md_row({"Scenario", "Treatment", "N", "Mean", "SD", "Share at 4.25"});
  out += md_rule(6);
  for (const auto& c : cells) {
    out += md_row({std::string(to_string(c.scenario)), std::string(to_string(c.treatment)),
                   std::to_string(c.n), num(c.mean), num(c.sd), num(c.share_upper)});
  }
  return out;
}

std::string render_means_csv(std::span<const CellSummary> cells) {
  std::string out = "scenario,treatment,n,mean,sd,share_upper\n";
  for (const auto& c : cells) {
    out += fmt::format("{},{},{},{},{},{}\n", to_string(c.scenario), to_string(c.treatment), c.n,
                       num(c.mean), num(c.sd), num(c.share_upper));
  }
  return out;
}

std::vector<MwuTable> mwu_tables(std::span<const Observation> obs, bool continuity) {
  std::vector<MwuTable> tables;
  for (auto s : kAllScenarios) {
    MwuTable table;
    table.scenario = s;
    table.treatments = present(obs, s);
    if (table.treatments.empty()) continue;
    for (std::size_t i = 1; i < table.treatments.size(); ++i) {
      const auto x = wages(obs, table.treatments[i], s);
      for (std::size_t j = 0; j < i; ++j) {
        const auto y = wages(obs, table.treatments[j], s);
        table.cells.push_back({table.treatments[i], table.treatments[j],
                               static_cast<int>(x.size()), static_cast<int>(y.size()),
                               mwu_test(x, y, continuity)});
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

std::string render_mwu_markdown(std::span<const MwuTable> tables) {
  std::string out;
  for (const auto& table : tables) {
    if (!out.empty()) out += '\n';
    out += fmt::format("Scenario {}: two-sided p-values\n\n", to_string(table.scenario));
    std::vector<std::string> header = {""};
    for (std::size_t j = 0; j + 1 < table.treatments.size(); ++j) {
      header.emplace_back(to_string(table.treatments[j]));
    }
    if (header.size() == 1) {
      out += "(single treatment, no comparisons)\n";
      continue;
    }
    out += md_row(header);
    out += md_rule(header.size());
    std::size_t k = 0;
    for (std::size_t i = 1; i < table.treatments.size(); ++i) {
      std::vector<std::string> row = {std::string(to_string(table.treatments[i]))};
      for (std::size_t j = 0; j + 1 < table.treatments.size(); ++j) {
        row.push_back(j < i ? num(table.cells[k++].result.p) : "");
      }
      out += md_row(row);
    }
  }
  return out;
}

std::string render_mwu_csv(std::span<const MwuTable> tables) {
  std::string out = "scenario,treatment_a,treatment_b,n_a,n_b,w,z,p\n";
  for (const auto& table : tables) {
    for (const auto& c : table.cells) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(table.scenario),
                         to_string(c.row), to_string(c.column), c.n_row, c.n_column,
                         num(c.result.w), num(c.result.z), num(c.result.p));
    }
  }
  return out;
}

std::vector<KappaFit> kappa_columns(std::span<const Observation> obs) {
  std::vector<KappaFit> fits;
  std::string reasons;
  for (auto anchor : {Treatment::Broad, Treatment::Partial}) {
    KappaLabels labels;
    labels.broad = anchor;
    try {
      fits.push_back(nls_kappa(obs, labels));
    } catch (const Degenerate& e) {
      reasons += fmt::format("\n  {}: {}", to_string(anchor), e.what());
    }
  }
  if (fits.empty()) throw Degenerate("no kappa column could be fitted:" + reasons);
  return fits;
}

std::string render_kappa_markdown(std::span<const KappaFit> fits) {
  std::vector<std::string> header = {""};
  for (const auto& f : fits) header.emplace_back(to_string(f.labels.broad));
  std::string out = md_row(header);
  out += md_rule(header.size());
  auto term = [&](const std::string& name, auto pick) {
    std::vector<std::string> values = {name};
    std::vector<std::string> errors = {""};
    for (const auto& f : fits) {
      const Estimate& e = pick(f);
      values.push_back(num(e.value));
      errors.push_back("(" + num(e.robust_se) + ")");
    }
    out += md_row(values);
    out += md_row(errors);
  };
  term("B1", [](const KappaFit& f) -> const Estimate& { return f.broad[0]; });
  term("B2", [](const KappaFit& f) -> const Estimate& { return f.broad[1]; });
  term("N1", [](const KappaFit& f) -> const Estimate& { return f.narrow[0]; });
  term("N2", [](const KappaFit& f) -> const Estimate& { return f.narrow[1]; });
  term("kappa", [](const KappaFit& f) -> const Estimate& { return f.kappa; });
  std::vector<std::string> n_row = {"Observations"};
  for (const auto& f : fits) n_row.push_back(std::to_string(f.n));
  out += md_row(n_row);
  out += "\nRobust (HC0) standard errors in parentheses.\n";
  return out;
}

std::string render_kappa_csv(std::span<const KappaFit> fits) {
  std::string out = "column,term,estimate,robust_se,model_se\n";
  for (const auto& f : fits) {
    const auto col = to_string(f.labels.broad);
    auto row = [&](std::string_view name, const Estimate& e) {
      out += fmt::format("{},{},{},{},{}\n", col, name, num(e.value), num(e.robust_se),
                         num(e.model_se));
    };
    row("B1", f.broad[0]);
    row("B2", f.broad[1]);
    row("N1", f.narrow[0]);
    row("N2", f.narrow[1]);
    row("kappa", f.kappa);
  }
  return out;
}

TobitDesign tobit_design(std::span<const Observation> obs, Treatment t) {
  TobitDesign d;
  std::vector<const Observation*> rows;
  for (const auto& o : obs) {
    if (o.treatment == t) rows.push_back(&o);
  }
  d.y.reserve(rows.size());
  d.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kTobitTerms.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Observation& o = *rows[i];
    const auto r = static_cast<Eigen::Index>(i);
    d.y.push_back(o.wage);
    d.x(r, 0) = o.scenario == Scenario::S2 ? 1.0 : 0.0;
    d.x(r, 1) = o.covariates.gender == Gender::Male ? 1.0 : 0.0;
    d.x(r, 2) = o.covariates.age;
    d.x(r, 3) = o.covariates.tediousness;
    d.x(r, 4) = 1.0;
  }
  return d;
}

std::vector<TobitColumn> tobit_columns(std::span<const Observation> obs, double limit) {
  std::vector<TobitColumn> columns;
  for (auto t : kAllTreatments) {
    const TobitDesign d = tobit_design(obs, t);
    if (d.y.empty()) continue;
    try {
      columns.push_back({t, static_cast<int>(d.y.size()), tobit_right(d.y, d.x, limit)});
    } catch (const Error& e) {
      throw std::runtime_error(fmt::format("tobit for {}: {}", to_string(t), e.what()));
    }
  }
  if (columns.empty()) throw EmptySample("no observations for the tobit");
  return columns;
}

std::string render_tobit_markdown(std::span<const TobitColumn> columns) {
  std::vector<std::string> header = {""};
  for (const auto& c : columns) header.emplace_back(to_string(c.treatment));
  std::string out = md_row(header);
  out += md_rule(header.size());
  for (std::size_t k = 0; k < kTobitTerms.size(); ++k) {
    std::vector<std::string> row = {kTobitTerms[k]};
    const auto i = static_cast<Eigen::Index>(k);
    for (const auto& c : columns) {
      row.push_back(fmt::format("{} ({})", num(c.fit.beta(i)), num(c.fit.beta_se(i))));
    }
    out += md_row(row);
  }
  std::vector<std::string> sigma = {"Sigma"};
  std::vector<std::string> loglik = {"Log-likelihood"};
  std::vector<std::string> n = {"Observations"};
  std::vector<std::string> censored = {"Censored"};
  for (const auto& c : columns) {
    sigma.push_back(fmt::format("{} ({})", num(c.fit.sigma), num(c.fit.sigma_se)));
    loglik.push_back(num(c.fit.log_likelihood));
    n.push_back(std::to_string(c.n));
    censored.push_back(std::to_string(c.fit.n_censored));
  }
  out += md_row(sigma);
  out += md_row(loglik);
  out += md_row(n);
  out += md_row(censored);
  return out;
}

std::string render_tobit_csv(std::span<const TobitColumn> columns) {
  std::string out = "treatment,term,coef,se\n";
  for (const auto& c : columns) {
    for (std::size_t k = 0; k < kTobitTerms.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      out += fmt::format("{},{},{},{}\n", to_string(c.treatment), kTobitTerms[k],
                         num(c.fit.beta(i)), num(c.fit.beta_se(i)));
    }
    out += fmt::format("{},sigma,{},{}\n", to_string(c.treatment), num(c.fit.sigma),
                       num(c.fit.sigma_se));
  }
  return out;
}

}  // namespace bracketlab
