#pragma once

/**
 * @file report.hpp
 * @brief Table builders and renderers (markdown, CSV) for the estimators.
 *
 * Every number is printed with four decimals so output is byte-stable
 * across runs.
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bracketlab/kappa.hpp"
#include "bracketlab/mwu.hpp"
#include "bracketlab/observations.hpp"
#include "bracketlab/summary.hpp"
#include "bracketlab/tobit.hpp"

namespace bracketlab {

std::string render_means_markdown(std::span<const CellSummary> cells);
std::string render_means_csv(std::span<const CellSummary> cells);

// ---------------------------------------------------------------------------
// Pairwise rank-sum tests.

struct MwuCell {
  Treatment row = Treatment::Broad;
  Treatment column = Treatment::Broad;
  int n_row = 0;
  int n_column = 0;
  MwuResult result;
};

struct MwuTable {
  Scenario scenario = Scenario::S1;
  std::vector<Treatment> treatments;  // non-empty cells in canonical order
  std::vector<MwuCell> cells;         // lower triangle, row-major
};

std::vector<MwuTable> mwu_tables(std::span<const Observation> obs, bool continuity = false);

std::string render_mwu_markdown(std::span<const MwuTable> tables);
std::string render_mwu_csv(std::span<const MwuTable> tables);

// ---------------------------------------------------------------------------
// Kappa columns: BROAD and PARTIAL as the broad anchor, LOW as narrow.

/// Fits every default column whose cells are present. Throws Degenerate when
/// none can be fitted.
std::vector<KappaFit> kappa_columns(std::span<const Observation> obs);

std::string render_kappa_markdown(std::span<const KappaFit> fits);
std::string render_kappa_csv(std::span<const KappaFit> fits);

// ---------------------------------------------------------------------------
// Tobit columns, one per treatment.

inline constexpr std::array<const char*, 5> kTobitTerms = {"Scenario 2", "Male", "Age",
                                                           "Tediousness", "Constant"};

struct TobitDesign {
  std::vector<double> y;
  Eigen::MatrixXd x;
};

TobitDesign tobit_design(std::span<const Observation> obs, Treatment t);

struct TobitColumn {
  Treatment treatment = Treatment::Broad;
  int n = 0;
  TobitFit fit;
};

std::vector<TobitColumn> tobit_columns(std::span<const Observation> obs, double limit);

std::string render_tobit_markdown(std::span<const TobitColumn> columns);
std::string render_tobit_csv(std::span<const TobitColumn> columns);

}  // namespace bracketlab
