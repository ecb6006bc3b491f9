#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "bracketlab/dataset_csv.hpp"
#include "bracketlab/errors.hpp"
#include "bracketlab/observations.hpp"
#include "bracketlab/simulate.hpp"
#include "support/generators.hpp"

using namespace bracketlab;
using namespace bracketlab::testing;

namespace {

ChoiceFlags flags_from(std::string_view pattern) {
  ChoiceFlags f{};
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = pattern[i] == '1';
  return f;
}

PopulationSpec small_population(std::uint64_t seed) {
  PopulationSpec p;
  for (auto t : kAllTreatments) p.count(t) = 12;
  p.alpha = {-2.9, 0.6};
  p.alpha_tedium_slope = 0.05;
  p.gamma = {1.4, 0.3, 1.0, 4.0};
  p.gamma_female_shift = 0.1;
  p.composition = MixtureComposition{0.6, 0.2};
  p.framing_shift = 0.1;
  p.tremble = 0.03;
  p.seed = seed;
  return p;
}

}  // namespace

TEST(ClassifyConsistency, Examples) {
  const auto all_reject = classify_consistency(flags_from("0000000000000000"));
  EXPECT_TRUE(all_reject.consistent);
  EXPECT_TRUE(all_reject.censored);
  EXPECT_EQ(all_reject.switch_wage, 4.25);

  const auto switch8 = classify_consistency(flags_from("0000000111111111"));
  EXPECT_TRUE(switch8.consistent);
  EXPECT_FALSE(switch8.censored);
  EXPECT_EQ(switch8.switch_wage, 2.0);

  const auto wobble = classify_consistency(flags_from("1011111111111111"));
  EXPECT_FALSE(wobble.consistent);
  EXPECT_FALSE(wobble.switch_wage.has_value());
}

TEST(ClassifyConsistency, SevenRejectionsSwitchAtRowEight) {
  // Rows are numbered from 1, so the first acceptance after seven
  // rejections sits on row 8.
  const auto r = classify_consistency(flags_from("0000000111111111"));
  EXPECT_EQ(r.switch_wage, 0.25 * 8);
}

TEST(ClassifyConsistency, AllAcceptIsLowestWage) {
  const auto r = classify_consistency(flags_from("1111111111111111"));
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.switch_wage, 0.25);
}

TEST(SimulateSubject, BroadQuadraticExample) {
  auto stream = derive_stream(1, StreamPurpose::Tremble, 1);
  const Agent agent{QuasiLinearPowerCost{0.004, 2.0}, BroadMode{}};
  const SubjectRecord r = simulate_subject(stream, agent, Treatment::Broad, {}, 0.0, 7);
  EXPECT_EQ(r.subject_id, 7);
  EXPECT_EQ(r.response(Scenario::S1).res_wage, 2.75);
  EXPECT_FALSE(r.response(Scenario::S1).censored);
  EXPECT_EQ(r.response(Scenario::S2).res_wage, 4.25);
  EXPECT_TRUE(r.response(Scenario::S2).censored);
}

TEST(SimulateSubject, NoTrembleMatchesSnappedWageProperty) {
  auto g = property_stream(20);
  const PriceList list = price_list();
  for (int i = 0; i < kPropertyCases; ++i) {
    const Agent agent{any_model(g), NarrowMode{}};
    const auto t = kAllTreatments[static_cast<std::size_t>(uniform_int(g, 0, 5))];
    auto stream = derive_stream(2, StreamPurpose::Tremble, static_cast<std::uint64_t>(i));
    const SubjectRecord r = simulate_subject(stream, agent, t, {}, 0.0);
    for (auto s : kAllScenarios) {
      const auto& resp = r.response(s);
      EXPECT_TRUE(resp.consistent);
      const double exact = reservation_wage_or_bound(agent, treatment_spec(t, s));
      const SnappedWage snapped = snap_to_list(exact, list);
      EXPECT_EQ(resp.res_wage, snapped.recorded);
      EXPECT_EQ(resp.censored, snapped.censored);
    }
  }
}

TEST(SimulateSubject, FullTrembleProducesInconsistency) {
  const Agent agent{QuasiLinearPowerCost{0.004, 2.0}, NarrowMode{}};
  int inconsistent = 0;
  for (int i = 0; i < 200; ++i) {
    auto stream = derive_stream(3, StreamPurpose::Tremble, static_cast<std::uint64_t>(i));
    const auto r = simulate_subject(stream, agent, Treatment::Narrow, {}, 1.0);
    for (const auto& resp : r.scenarios) inconsistent += resp.consistent ? 0 : 1;
  }
  EXPECT_GT(inconsistent, 0);
}

TEST(PopulationSpec, ValidateNamesField) {
  PopulationSpec p;
  p.tremble = 1.5;
  try {
    validate(p);
    FAIL() << "expected InvalidPopulation";
  } catch (const InvalidPopulation& e) {
    EXPECT_NE(std::string(e.what()).find("tremble"), std::string::npos);
  }
  p = {};
  p.gamma.lower = 0.5;
  EXPECT_THROW(validate(p), InvalidPopulation);
  p = {};
  p.composition = MixtureComposition{0.8, 0.4};
  EXPECT_THROW(validate(p), InvalidPopulation);
}

TEST(SimulateDataset, DeterministicAndWorkerInvariant) {
  const PopulationSpec p = small_population(99);
  const Dataset one = simulate_dataset(p, 1);
  EXPECT_EQ(one, simulate_dataset(p, 1));
  EXPECT_EQ(one, simulate_dataset(p, 3));
  EXPECT_EQ(one, simulate_dataset(p, 8));
  EXPECT_EQ(one.records.size(), 72u);
  EXPECT_NE(one, simulate_dataset(small_population(100), 1));
}

TEST(SimulateDataset, EmptyCounts) {
  PopulationSpec p;
  p.seed = 5;
  EXPECT_TRUE(simulate_dataset(p).records.empty());
}

TEST(SimulateDataset, SequentialIdsInTreatmentOrder) {
  const Dataset d = simulate_dataset(small_population(1));
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    EXPECT_EQ(d.records[i].subject_id, static_cast<int>(i) + 1);
    EXPECT_EQ(d.records[i].treatment, kAllTreatments[i / 12]);
  }
}

TEST(SimulateDataset, PairedDrawsShareCovariates) {
  const Dataset d = simulate_dataset(small_population(2));
  for (std::size_t k = 0; k < 12; ++k) {
    for (std::size_t t = 1; t < kAllTreatments.size(); ++t) {
      EXPECT_EQ(d.records[t * 12 + k].covariates, d.records[k].covariates);
    }
  }
}

TEST(SimulateDataset, PureNarrowMakesNarrowEqualLow) {
  PopulationSpec p = small_population(3);
  p.tremble = 0.0;
  p.framing_shift = 0.0;
  p.composition = MixtureComposition{1.0, 0.0};
  const Dataset d = simulate_dataset(p);
  const auto obs = observations(d);
  for (auto s : kAllScenarios) {
    EXPECT_EQ(wages(obs, Treatment::Narrow, s), wages(obs, Treatment::Low, s));
  }
}

TEST(SimulateDataset, SpecDigestTracksEveryField) {
  const PopulationSpec a = small_population(4);
  PopulationSpec b = a;
  b.tremble = 0.031;
  EXPECT_NE(spec_digest(a), spec_digest(b));
  EXPECT_EQ(spec_digest(a), spec_digest(small_population(4)));
  EXPECT_EQ(spec_digest(a).size(), 16u);
}

TEST(Observations, DropOrKeepInconsistent) {
  SubjectRecord r;
  r.subject_id = 1;
  r.treatment = Treatment::Low;
  r.scenarios[0].accept = flags_from("0000000111111111");
  r.scenarios[0].res_wage = 2.0;
  r.scenarios[1].accept = flags_from("1011111111111111");
  r.scenarios[1].consistent = false;
  r.scenarios[1].res_wage = std::nan("");
  const Dataset d{{r}, 0, ""};
  EXPECT_EQ(observations(d, true).size(), 1u);
  const auto kept = observations(d, false);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[1].wage, 0.25 * 2);  // one rejection
}

TEST(DatasetCsv, RoundTrip) {
  const Dataset d = simulate_dataset(small_population(7));
  const std::string text = to_csv(d);
  const Dataset back = parse_csv(text);
  EXPECT_EQ(back, d);
  EXPECT_EQ(to_csv(back), text);
}

TEST(DatasetCsv, HeaderAndRowCount) {
  const Dataset d = simulate_dataset(small_population(8));
  std::istringstream in(to_csv(d));
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_TRUE(line.starts_with("# bracketlab dataset seed=8"));
  std::getline(in, line);
  EXPECT_EQ(line, dataset_header());
  EXPECT_TRUE(line.starts_with("subject_id,treatment,scenario,c01,"));
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 2 * static_cast<int>(d.records.size()));
}

TEST(DatasetCsv, ProvenanceLineIsOptional) {
  const Dataset d = simulate_dataset(small_population(9));
  std::string text = to_csv(d);
  text.erase(0, text.find('\n') + 1);
  const Dataset back = parse_csv(text);
  EXPECT_EQ(back.records, d.records);
  EXPECT_EQ(back.seed, 0u);
}

namespace {

std::string row(std::string_view id, std::string_view scenario, std::string_view flags,
                std::string_view wage, std::string_view censored, std::string_view consistent) {
  std::string out = std::string(id) + ",LOW," + std::string(scenario);
  for (char c : flags) out += std::string(",") + c;
  out += "," + std::string(wage) + "," + std::string(censored) + "," + std::string(consistent) +
         ",F,34,6\n";
  return out;
}

void expect_schema_error_at(const std::string& text, int line) {
  try {
    (void)parse_csv(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos)
        << e.what();
  }
}

}  // namespace

TEST(DatasetCsv, SchemaErrorsCarryLineNumbers) {
  const std::string header = dataset_header() + "\n";
  const std::string s1 = row("1", "S1", "0000000111111111", "2.00", "0", "1");
  const std::string s2 = row("1", "S2", "0000000000000000", "4.25", "1", "1");
  EXPECT_NO_THROW((void)parse_csv(header + s1 + s2));

  expect_schema_error_at("subject_id,treatment\n", 1);
  expect_schema_error_at(header + s1 + row("1", "S2", "0000000000000000", "4.00", "1", "1"), 3);
  expect_schema_error_at(header + s1 + row("1", "S2", "0000000000000000", "4.25", "0", "1"), 3);
  expect_schema_error_at(header + row("1", "S1", "1011111111111111", "NA", "0", "1") + s2, 2);
  expect_schema_error_at(header + s1 + s1, 3);
  expect_schema_error_at(header + s1, 2);
  expect_schema_error_at(header + "x" + s1.substr(1) + s2, 2);
  expect_schema_error_at(header + "1,WIDE" + s1.substr(5) + s2, 2);
  expect_schema_error_at(header + s1 + "1,LOW,S2,0\n", 3);
}
