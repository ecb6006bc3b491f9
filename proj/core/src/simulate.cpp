#include "bracketlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"
#include "bracketlab/rng.hpp"

namespace bracketlab {

namespace {

constexpr int kTruncationAttempts = 1000;

double draw_truncated_normal(const TruncatedNormalDist& dist, double shift,
                             std::mt19937_64& stream) {
  const double mean = dist.mean + shift;
  if (dist.sd == 0.0) return std::clamp(mean, dist.lower, dist.upper);
  std::normal_distribution<double> normal(mean, dist.sd);
  for (int i = 0; i < kTruncationAttempts; ++i) {
    const double x = normal(stream);
    if (x >= dist.lower && x <= dist.upper) return x;
  }
  return std::clamp(mean, dist.lower, dist.upper);
}

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

bool operator==(const ScenarioResponse& a, const ScenarioResponse& b) {
  const bool wages_equal =
      (std::isnan(a.res_wage) && std::isnan(b.res_wage)) || a.res_wage == b.res_wage;
  return a.accept == b.accept && wages_equal && a.censored == b.censored &&
         a.consistent == b.consistent;
}

ConsistencyResult classify_consistency(const ChoiceFlags& flags) {
  const auto first_accept = std::find(flags.begin(), flags.end(), true);
  const bool monotone = std::all_of(first_accept, flags.end(), [](bool f) { return f; });
  if (!monotone) return {false, std::nullopt, false};
  if (first_accept == flags.end()) return {true, kCensorCode, true};
  const auto row = static_cast<int>(first_accept - flags.begin());
  return {true, price_list().extra_wages[static_cast<std::size_t>(row)], false};
}

void validate(const PopulationSpec& spec) {
  for (auto t : kAllTreatments) {
    if (spec.count(t) < 0) {
      throw InvalidPopulation(fmt::format("count for {} must be >= 0", to_string(t)));
    }
  }
  auto finite = [](double x, const char* field) {
    if (!std::isfinite(x)) throw InvalidPopulation(fmt::format("{} must be finite", field));
  };
  finite(spec.alpha.log_mean, "alpha.log_mean");
  finite(spec.alpha.log_sd, "alpha.log_sd");
  finite(spec.alpha_tedium_slope, "alpha.tedium_slope");
  finite(spec.gamma.mean, "gamma.mean");
  finite(spec.gamma.sd, "gamma.sd");
  finite(spec.gamma_female_shift, "gamma.female_shift");
  finite(spec.framing_shift, "framing_shift");
  if (spec.alpha.log_sd < 0.0) throw InvalidPopulation("alpha.log_sd must be >= 0");
  if (spec.gamma.sd < 0.0) throw InvalidPopulation("gamma.sd must be >= 0");
  if (!(spec.gamma.lower >= 1.0 && spec.gamma.lower <= spec.gamma.upper)) {
    throw InvalidPopulation("gamma bounds must satisfy 1 <= lower <= upper");
  }
  if (spec.rho && (*spec.rho == 0.0 || !std::isfinite(*spec.rho))) {
    throw InvalidPopulation("rho must be finite and nonzero");
  }
  if (!valid_probability(spec.tremble)) throw InvalidPopulation("tremble must be in [0, 1]");
  if (!valid_probability(spec.p_female)) throw InvalidPopulation("p_female must be in [0, 1]");
  if (spec.age_min > spec.age_max) throw InvalidPopulation("age_min must be <= age_max");
  if (spec.tedium_min > spec.tedium_max) {
    throw InvalidPopulation("tedium_min must be <= tedium_max");
  }
  if (const auto* mix = std::get_if<MixtureComposition>(&spec.composition)) {
    if (!valid_probability(mix->narrow_weight) || !valid_probability(mix->partial_weight) ||
        mix->narrow_weight + mix->partial_weight > 1.0 + 1e-12) {
      throw InvalidPopulation("mixture weights must be probabilities summing to at most 1");
    }
  } else {
    finite(std::get<KappaComposition>(spec.composition).kappa, "kappa");
  }
}

std::string canonical_string(const PopulationSpec& spec) {
  std::string out;
  for (auto t : kAllTreatments) out += fmt::format("count.{}={};", to_string(t), spec.count(t));
  out += fmt::format("alpha={:.17g},{:.17g},{:.17g};", spec.alpha.log_mean, spec.alpha.log_sd,
                     spec.alpha_tedium_slope);
  out += fmt::format("gamma={:.17g},{:.17g},{:.17g},{:.17g},{:.17g};", spec.gamma.mean,
                     spec.gamma.sd, spec.gamma.lower, spec.gamma.upper, spec.gamma_female_shift);
  out += spec.rho ? fmt::format("rho={:.17g};", *spec.rho) : std::string("rho=none;");
  if (const auto* mix = std::get_if<MixtureComposition>(&spec.composition)) {
    out += fmt::format("mixture={:.17g},{:.17g};", mix->narrow_weight, mix->partial_weight);
  } else {
    out += fmt::format("kappa={:.17g};", std::get<KappaComposition>(spec.composition).kappa);
  }
  out += fmt::format("framing={:.17g};tremble={:.17g};female={:.17g};", spec.framing_shift,
                     spec.tremble, spec.p_female);
  out += fmt::format("age={},{};tedium={},{};paired={};seed={}", spec.age_min, spec.age_max,
                     spec.tedium_min, spec.tedium_max, spec.paired_draws ? 1 : 0, spec.seed);
  return out;
}

std::string spec_digest(const PopulationSpec& spec) {
  return fmt::format("{:016x}", fnv1a(canonical_string(spec)));
}

DrawnSubject draw_subject(const PopulationSpec& spec, std::mt19937_64& stream) {
  // Draw order is part of the determinism contract; append, never reorder.
  Covariates cov;
  cov.gender = std::bernoulli_distribution(spec.p_female)(stream) ? Gender::Female : Gender::Male;
  cov.age = std::uniform_int_distribution<int>(spec.age_min, spec.age_max)(stream);
  cov.tediousness = std::uniform_int_distribution<int>(spec.tedium_min, spec.tedium_max)(stream);

  const double z_alpha = std::normal_distribution<double>(0.0, 1.0)(stream);
  const double log_alpha = spec.alpha.log_mean + spec.alpha.log_sd * z_alpha +
                           spec.alpha_tedium_slope * (cov.tediousness - 5.5);
  const double alpha = std::exp(log_alpha);

  const double gamma_shift = cov.gender == Gender::Female ? spec.gamma_female_shift : 0.0;
  const double gamma = draw_truncated_normal(spec.gamma, gamma_shift, stream);

  const double u_mode = std::uniform_real_distribution<double>(0.0, 1.0)(stream);

  UtilityModel model = spec.rho ? UtilityModel{CaraMoneyPowerCost{*spec.rho, alpha, gamma}}
                                : UtilityModel{QuasiLinearPowerCost{alpha, gamma}};

  BracketingMode mode;
  if (const auto* mix = std::get_if<MixtureComposition>(&spec.composition)) {
    if (u_mode < mix->narrow_weight) {
      mode = NarrowMode{};
    } else if (u_mode < mix->narrow_weight + mix->partial_weight) {
      mode = PartialMode{};
    } else {
      mode = BroadMode{};
    }
  } else {
    mode = ConvexKappa{std::get<KappaComposition>(spec.composition).kappa};
  }
  return {Agent{std::move(model), mode, spec.framing_shift}, cov};
}

SubjectRecord simulate_subject(std::mt19937_64& stream, const Agent& agent, Treatment t,
                               const Covariates& covariates, double tremble, int subject_id) {
  const PriceList list = price_list();
  std::bernoulli_distribution flip(tremble);

  SubjectRecord record;
  record.subject_id = subject_id;
  record.treatment = t;
  record.covariates = covariates;

  for (std::size_t si = 0; si < kAllScenarios.size(); ++si) {
    const TreatmentSpec spec = treatment_spec(t, kAllScenarios[si]);
    double r = reservation_wage_or_bound(agent, spec);
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();

    ScenarioResponse& resp = record.scenarios[si];
    for (std::size_t row = 0; row < list.extra_wages.size(); ++row) {
      resp.accept[row] = list.extra_wages[row] >= r - kSnapTolerance;
    }
    if (tremble > 0.0) {
      for (auto&& flag : resp.accept) {
        if (flip(stream)) flag = !flag;
      }
    }
    const ConsistencyResult cls = classify_consistency(resp.accept);
    resp.consistent = cls.consistent;
    resp.censored = cls.censored;
    resp.res_wage = cls.switch_wage.value_or(std::numeric_limits<double>::quiet_NaN());
  }
  return record;
}

Dataset simulate_dataset(const PopulationSpec& spec, unsigned workers) {
  validate(spec);

  struct Job {
    Treatment treatment;
    int index_in_treatment;
    int subject_id;
  };
  std::vector<Job> jobs;
  int next_id = 1;
  for (auto t : kAllTreatments) {
    for (int k = 0; k < spec.count(t); ++k) jobs.push_back({t, k, next_id++});
  }

  Dataset dataset;
  dataset.seed = spec.seed;
  dataset.spec_digest = spec_digest(spec);
  dataset.records.resize(jobs.size());

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Job& job = jobs[i];
      const auto pref_key = static_cast<std::uint64_t>(
          spec.paired_draws ? job.index_in_treatment : job.subject_id);
      auto pref_stream = derive_stream(spec.seed, StreamPurpose::Preferences, pref_key);
      const DrawnSubject drawn = draw_subject(spec, pref_stream);
      auto tremble_stream = derive_stream(spec.seed, StreamPurpose::Tremble,
                                          static_cast<std::uint64_t>(job.subject_id));
      dataset.records[i] = simulate_subject(tremble_stream, drawn.agent, job.treatment,
                                            drawn.covariates, spec.tremble, job.subject_id);
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, jobs.size())));
  if (workers <= 1) {
    run(0, jobs.size());
    return dataset;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (jobs.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(jobs.size(), w * chunk);
    const std::size_t end = std::min(jobs.size(), begin + chunk);
    if (begin < end) pool.emplace_back(run, begin, end);
  }
  pool.clear();
  return dataset;
}

}  // namespace bracketlab
