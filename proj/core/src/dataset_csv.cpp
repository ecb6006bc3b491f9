#include "bracketlab/dataset_csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "bracketlab/errors.hpp"

namespace bracketlab {

namespace {

constexpr std::size_t kColumns = 3 + kPriceListRows + 3 + 3;
constexpr std::string_view kProvenancePrefix = "# bracketlab dataset";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw SchemaError(fmt::format("line {}: {}", line, what));
}

template <class T>
T parse_number(std::string_view field, std::size_t line, std::string_view column) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(line, fmt::format("column {}: cannot parse '{}'", column, field));
  }
  return value;
}

bool parse_flag(std::string_view field, std::size_t line, std::string_view column) {
  if (field == "0") return false;
  if (field == "1") return true;
  fail(line, fmt::format("column {}: expected 0 or 1, got '{}'", column, field));
}

}  // namespace

std::string dataset_header() {
  std::string h = "subject_id,treatment,scenario";
  for (int i = 1; i <= kPriceListRows; ++i) h += fmt::format(",c{:02d}", i);
  h += ",res_wage,censored,consistent,gender,age,tediousness";
  return h;
}

void write_csv(std::ostream& out, const Dataset& d) {
  out << to_csv(d);
}

std::string to_csv(const Dataset& d) {
  std::string out = fmt::format("{} seed={} digest={}\n", kProvenancePrefix, d.seed,
                                d.spec_digest.empty() ? "-" : d.spec_digest);
  out += dataset_header();
  out += '\n';
  for (const auto& rec : d.records) {
    for (auto s : kAllScenarios) {
      const ScenarioResponse& resp = rec.response(s);
      out += fmt::format("{},{},{}", rec.subject_id, to_string(rec.treatment), to_string(s));
      for (bool f : resp.accept) out += f ? ",1" : ",0";
      out += resp.consistent ? fmt::format(",{:.2f}", resp.res_wage) : std::string(",NA");
      out += fmt::format(",{},{},{},{},{}\n", resp.censored ? 1 : 0, resp.consistent ? 1 : 0,
                         rec.covariates.gender == Gender::Female ? "F" : "M",
                         rec.covariates.age, rec.covariates.tediousness);
    }
  }
  return out;
}

Dataset read_csv(std::istream& in) {
  Dataset d;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  struct Pending {
    SubjectRecord record;
    std::array<bool, 2> seen{};
    std::size_t first_line = 0;
  };
  std::vector<Pending> pending;
  std::map<int, std::size_t> index;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with('#')) {
      if (line.starts_with(kProvenancePrefix)) {
        std::istringstream fields(line.substr(kProvenancePrefix.size()));
        std::string kv;
        while (fields >> kv) {
          if (kv.starts_with("seed=")) {
            d.seed = parse_number<std::uint64_t>(std::string_view(kv).substr(5), line_no, "seed");
          } else if (kv.starts_with("digest=")) {
            d.spec_digest = kv.substr(7);
            if (d.spec_digest == "-") d.spec_digest.clear();
          }
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != dataset_header()) {
        fail(line_no, "header does not match the dataset schema: " + dataset_header());
      }
      header_seen = true;
      continue;
    }

    const auto f = split(line);
    if (f.size() != kColumns) {
      fail(line_no, fmt::format("expected {} columns, found {}", kColumns, f.size()));
    }
    const int id = parse_number<int>(f[0], line_no, "subject_id");
    const auto treatment = parse_treatment(f[1]);
    if (!treatment) fail(line_no, fmt::format("unknown treatment '{}'", f[1]));
    const auto scenario = parse_scenario(f[2]);
    if (!scenario) fail(line_no, fmt::format("unknown scenario '{}'", f[2]));

    ScenarioResponse resp;
    for (int r = 0; r < kPriceListRows; ++r) {
      resp.accept[static_cast<std::size_t>(r)] =
          parse_flag(f[3 + static_cast<std::size_t>(r)], line_no, fmt::format("c{:02d}", r + 1));
    }
    const std::size_t base = 3 + kPriceListRows;
    resp.censored = parse_flag(f[base + 1], line_no, "censored");
    resp.consistent = parse_flag(f[base + 2], line_no, "consistent");
    resp.res_wage = f[base] == "NA" ? std::numeric_limits<double>::quiet_NaN()
                                    : parse_number<double>(f[base], line_no, "res_wage");

    Covariates cov;
    if (f[base + 3] == "M") {
      cov.gender = Gender::Male;
    } else if (f[base + 3] == "F") {
      cov.gender = Gender::Female;
    } else {
      fail(line_no, fmt::format("column gender: expected M or F, got '{}'", f[base + 3]));
    }
    cov.age = parse_number<int>(f[base + 4], line_no, "age");
    cov.tediousness = parse_number<int>(f[base + 5], line_no, "tediousness");

    const ConsistencyResult cls = classify_consistency(resp.accept);
    if (cls.consistent != resp.consistent) {
      fail(line_no, "consistent flag disagrees with the choice columns");
    }
    if (cls.censored != resp.censored) {
      fail(line_no, "censored flag disagrees with the choice columns");
    }
    if (cls.switch_wage.has_value() != !std::isnan(resp.res_wage) ||
        (cls.switch_wage && std::abs(*cls.switch_wage - resp.res_wage) > 1e-9)) {
      fail(line_no, "res_wage disagrees with the choice columns");
    }

    auto [it, inserted] = index.try_emplace(id, pending.size());
    if (inserted) {
      Pending p;
      p.record.subject_id = id;
      p.record.treatment = *treatment;
      p.record.covariates = cov;
      p.first_line = line_no;
      pending.push_back(p);
    }
    Pending& p = pending[it->second];
    if (p.record.treatment != *treatment || !(p.record.covariates == cov)) {
      fail(line_no, fmt::format("subject {} changes treatment or covariates between rows", id));
    }
    const std::size_t si = *scenario == Scenario::S1 ? 0 : 1;
    if (p.seen[si]) fail(line_no, fmt::format("duplicate row for subject {} {}", id, f[2]));
    p.seen[si] = true;
    p.record.scenarios[si] = resp;
  }
  if (!header_seen) fail(line_no + 1, "missing header row");
  for (const auto& p : pending) {
    if (!p.seen[0] || !p.seen[1]) {
      fail(p.first_line,
           fmt::format("subject {} needs one row for each of S1 and S2", p.record.subject_id));
    }
    d.records.push_back(p.record);
  }
  return d;
}

Dataset parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

}  // namespace bracketlab
