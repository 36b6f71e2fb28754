#pragma once

// Scenario orchestration. Path k draws from RandomStream(master_seed, k):
// first n + m inflation values (calendar years 1..n+m), then n - 1
// log-returns (growth into years 2..n). This draw order is part of the
// output contract; changing it changes every result for a given seed.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pension_mc/accumulation.hpp"
#include "pension_mc/retirement.hpp"
#include "pension_mc/scenario.hpp"
#include "pension_mc/stats.hpp"
#include "pension_mc/stochastic.hpp"

namespace pension_mc {

struct PathOutcome {
  std::int64_t path_index = 0;
  double final_corpus = 0.0;
  double pension = 0.0;
  int shortfall_years = 0;
  double pv_support = 0.0;

  bool operator==(const PathOutcome&) const = default;
};

struct PathDetail {
  std::vector<CareerYear> career;
  std::vector<RetirementYear> retirement;
};

struct PathResult {
  PathOutcome outcome;
  std::optional<PathDetail> detail;
};

inline PathResult run_path(const Scenario& scenario, std::int64_t path_index,
                           bool with_detail = false) {
  validate(scenario);
  if (path_index < 0 || path_index >= scenario.num_paths)
    throw ConfigError("path index " + std::to_string(path_index) + " outside [0, " +
                      std::to_string(scenario.num_paths) + ")");
  const auto n = static_cast<std::size_t>(scenario.career.service_years);
  const auto m = static_cast<std::size_t>(scenario.retirement.retirement_years);

  RandomStream stream(scenario.master_seed, static_cast<std::uint64_t>(path_index));
  const auto inflation = inflation_series(stream, scenario.inflation, n + m);
  const auto returns = gbm_log_returns(stream, scenario.gbm, n - 1);

  const std::span<const double> all_inflation(inflation);
  auto career = career_table(scenario.career, all_inflation.first(n), returns, scenario.compounding);
  const CareerYear& last = career.back();

  const auto& rp = scenario.retirement;
  const double pension = annual_pension(last.corpus, rp.annuity_rate);
  const auto retirement_inflation = all_inflation.subspan(n, m);
  const auto requirements = requirement_series(last.salary, last.inflation_pct, retirement_inflation,
                                               rp.guarantee_fraction);
  auto rows = evaluate_retirement(pension, requirements, retirement_inflation,
                                  scenario.career.service_years + 1);

  PathResult result;
  result.outcome = {path_index, last.corpus, pension, shortfall_years(rows),
                    pv_support(rows, rp.risk_free_rate, scenario.career.service_years)};
  if (with_detail) result.detail = PathDetail{std::move(career), std::move(rows)};
  return result;
}

struct ScenarioResult {
  std::vector<PathOutcome> outcomes;  // indexed by path
  SummaryStats final_corpus;
  SummaryStats shortfall_years;
  SummaryStats pv_support;
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::size_t bin_count = kDefaultBinCount;
};

// Paths are independent; each worker writes into its own slots, and the
// summaries are computed afterwards in path-index order.
inline ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {}) {
  validate(scenario);
  const auto count = static_cast<std::size_t>(scenario.num_paths);
  ScenarioResult result;
  result.outcomes.resize(count);

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(count, 256)));

  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i)
      result.outcomes[i] = run_path(scenario, static_cast<std::int64_t>(i)).outcome;
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            result.outcomes[i] = run_path(scenario, static_cast<std::int64_t>(i)).outcome;
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<double> corpus(count), shortfall(count), pv(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus[i] = result.outcomes[i].final_corpus;
    shortfall[i] = static_cast<double>(result.outcomes[i].shortfall_years);
    pv[i] = result.outcomes[i].pv_support;
  }
  result.final_corpus = summarize(corpus, options.bin_count);
  result.shortfall_years = summarize(shortfall, options.bin_count);
  result.pv_support = summarize(pv, options.bin_count);
  return result;
}

struct Override {
  std::string key;
  std::string value;
};

struct SweepVariant {
  std::string label;  // "key=value"
  Scenario scenario;
  ScenarioResult result;
};

// Each variant is the base scenario with one field replaced. All variants
// share the base master seed, so path k sees the same stream everywhere.
// Changing service_years leaves retirement_years as it is.
inline std::vector<SweepVariant> sweep(const Scenario& base, std::span<const Override> overrides,
                                       const RunOptions& options = {}) {
  validate(base);
  std::vector<SweepVariant> variants;
  variants.reserve(overrides.size());
  // Resolve every variant before running any, so a bad override fails fast.
  for (const auto& o : overrides) {
    if (o.key == "seed") throw ConfigError("seed cannot be swept: variants share the base seed");
    Scenario s = base;
    set_scenario_field(s, o.key, o.value);
    validate(s);
    variants.push_back({o.key + "=" + std::string(detail::trim(o.value)), s, {}});
  }
  for (auto& v : variants) v.result = run_scenario(v.scenario, options);
  return variants;
}

}  // namespace pension_mc
