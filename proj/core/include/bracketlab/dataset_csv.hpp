#pragma once

/**
 * @file dataset_csv.hpp
 * @brief Dataset <-> CSV, one row per subject x scenario.
 *
 *   subject_id,treatment,scenario,c01..c16,res_wage,censored,consistent,gender,age,tediousness
 *
 * Money is written with two decimals; res_wage is "NA" for inconsistent
 * scenarios. An optional first line "# bracketlab dataset seed=<n>
 * digest=<hex>" carries provenance. Readers verify that res_wage, censored
 * and consistent agree with the c01..c16 flags.
 */

#include <iosfwd>
#include <string>
#include <string_view>

#include "bracketlab/simulate.hpp"

namespace bracketlab {

std::string dataset_header();

void write_csv(std::ostream& out, const Dataset& d);
std::string to_csv(const Dataset& d);

/// Throws SchemaError with the 1-based line number of the first problem.
Dataset read_csv(std::istream& in);
Dataset parse_csv(std::string_view text);

}  // namespace bracketlab
