#pragma once

// Output formats: per-year detail CSVs, the summary JSON, sweep comparison
// and plot-data CSVs. Numbers are written as the shortest decimal that
// round-trips, so identical inputs give byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include <nlohmann/json.hpp>

#include "pension_mc/engine.hpp"
#include "pension_mc/scenario.hpp"
#include "pension_mc/stats.hpp"

namespace pension_mc {

inline constexpr std::string_view kCareerCsvHeader =
    "year,inflation_pct,basic,da,salary,contribution,log_return,corpus";
inline constexpr std::string_view kRetirementCsvHeader =
    "year,inflation_pct,requirement,pension,sufficient,top_up";
inline constexpr std::string_view kComparisonCsvHeader = "variant,metric,mean,sd,p5,p95";

inline std::string career_csv(std::span<const CareerYear> rows) {
  using detail::format_double;
  std::ostringstream out;
  out << kCareerCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.year << ',' << format_double(r.inflation_pct) << ',' << format_double(r.basic) << ','
        << format_double(r.da) << ',' << format_double(r.salary) << ','
        << format_double(r.contribution) << ',' << format_double(r.log_return) << ','
        << format_double(r.corpus) << '\n';
  return out.str();
}

inline std::string retirement_csv(std::span<const RetirementYear> rows) {
  using detail::format_double;
  std::ostringstream out;
  out << kRetirementCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.year << ',' << format_double(r.inflation_pct) << ',' << format_double(r.requirement)
        << ',' << format_double(r.pension) << ',' << (r.sufficient ? "true" : "false") << ','
        << format_double(r.top_up) << '\n';
  return out.str();
}

inline std::string outcomes_csv(std::span<const PathOutcome> outcomes) {
  using detail::format_double;
  std::ostringstream out;
  out << "path_index,final_corpus,pension,shortfall_years,pv_support\n";
  for (const auto& o : outcomes)
    out << o.path_index << ',' << format_double(o.final_corpus) << ',' << format_double(o.pension)
        << ',' << o.shortfall_years << ',' << format_double(o.pv_support) << '\n';
  return out.str();
}

inline std::string histogram_csv(const Histogram& h) {
  using detail::format_double;
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i]
        << '\n';
  return out.str();
}

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const SummaryStats& s) {
  ordered_json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["min"] = s.min;
  j["max"] = s.max;
  j["quantiles"] = {{"p5", s.quantiles.p5},
                    {"p25", s.quantiles.p25},
                    {"p50", s.quantiles.p50},
                    {"p75", s.quantiles.p75},
                    {"p95", s.quantiles.p95}};
  j["histogram"] = {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}};
  return j;
}

// Resolved parameters in config-key order, then the modelling conventions
// needed to reproduce the numbers.
inline ordered_json scenario_json(const Scenario& s) {
  ordered_json j;
  j["service_years"] = s.career.service_years;
  j["retirement_years"] = s.retirement.retirement_years;
  j["basic_start"] = s.career.basic_start;
  j["increment_rate"] = s.career.increment_rate;
  j["employee_rate"] = s.career.employee_rate;
  j["employer_rate"] = s.career.employer_rate;
  j["inflation_mean_pct"] = s.inflation.mean_pct;
  j["inflation_sd_pct"] = s.inflation.sd_pct;
  j["gbm_mu"] = s.gbm.mu;
  j["gbm_sigma"] = s.gbm.sigma;
  j["annuity_rate"] = s.retirement.annuity_rate;
  j["risk_free_rate"] = s.retirement.risk_free_rate;
  j["guarantee_fraction"] = s.retirement.guarantee_fraction;
  j["compounding"] = to_string(s.compounding);
  j["num_paths"] = s.num_paths;
  j["seed"] = s.master_seed;
  j["conventions"] = {
      {"rng", "philox4x32-10; key=seed, counter=(block, path_index)"},
      {"normal", "inverse-cdf AS241, one 53-bit uniform per variate"},
      {"draw_order", "inflation[1..n+m], then log_return[1..n-1]"},
      {"growth", s.compounding == Compounding::exponential ? "exp(r)" : "1+r"},
      {"contribution_timing", "end-of-year"},
      {"dearness_allowance", "basic[t-1]*inflation[t-1]/100"},
      {"requirement", "fraction*salary[n]*(1+inflation[n]/100), then prior-year inflation"},
      {"tie", "pension >= requirement is sufficient"},
      {"discounting", "top_up[t]/(1+risk_free_rate)^(t-1)"},
      {"sd", "sample (n-1); 0 for one value"},
      {"quantiles", "linear interpolation, h=(n-1)p"},
  };
  return j;
}

inline std::string summary_json(const Scenario& scenario, const ScenarioResult& result) {
  ordered_json j;
  j["scenario"] = scenario_json(scenario);
  j["metrics"] = {{"final_corpus", to_json(result.final_corpus)},
                  {"shortfall_years", to_json(result.shortfall_years)},
                  {"pv_support", to_json(result.pv_support)}};
  return j.dump(2) + "\n";
}

inline std::string comparison_csv(std::span<const SweepVariant> variants) {
  using detail::format_double;
  std::ostringstream out;
  out << kComparisonCsvHeader << '\n';
  for (const auto& v : variants) {
    const std::pair<const char*, const SummaryStats*> metrics[] = {
        {"final_corpus", &v.result.final_corpus},
        {"shortfall_years", &v.result.shortfall_years},
        {"pv_support", &v.result.pv_support}};
    for (const auto& [name, s] : metrics)
      out << v.label << ',' << name << ',' << format_double(s->mean) << ',' << format_double(s->sd)
          << ',' << format_double(s->quantiles.p5) << ',' << format_double(s->quantiles.p95)
          << '\n';
  }
  return out.str();
}

// Whole-file write through a temporary sibling and rename.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

}  // namespace pension_mc
