#pragma once

// Career-phase arithmetic: basic pay, dearness allowance, salary,
// contributions and the corpus recursion. Everything here is exact double
// arithmetic; rounding only happens when a caller presents the numbers.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pension_mc/error.hpp"

namespace pension_mc {

// How a one-year log-return r turns into a growth factor on the corpus.
enum class Compounding {
  simple,       // 1 + r
  exponential,  // exp(r), the exact GBM ratio S_t / S_{t-1}
};

inline double growth_factor(double log_return, Compounding compounding) {
  return compounding == Compounding::exponential ? std::exp(log_return) : 1.0 + log_return;
}

inline const char* to_string(Compounding c) {
  return c == Compounding::exponential ? "exponential" : "simple";
}

struct CareerParams {
  int service_years = 30;
  double basic_start = 100.0;
  double increment_rate = 0.03;
  double employee_rate = 0.10;
  double employer_rate = 0.14;

  double contribution_rate() const { return employee_rate + employer_rate; }

  bool valid() const {
    return service_years >= 1 && std::isfinite(basic_start) && basic_start > 0.0 &&
           std::isfinite(increment_rate) && increment_rate >= 0.0 &&
           std::isfinite(employee_rate) && employee_rate >= 0.0 &&
           std::isfinite(employer_rate) && employer_rate >= 0.0 &&
           employee_rate + employer_rate <= 1.0;
  }

  bool operator==(const CareerParams&) const = default;
};

// One row of the career table. log_return is the return that carried the
// previous corpus into this year (0 in year 1).
struct CareerYear {
  int year = 0;
  double inflation_pct = 0.0;
  double basic = 0.0;
  double da = 0.0;
  double salary = 0.0;
  double contribution = 0.0;
  double log_return = 0.0;
  double growth_factor = 1.0;
  double corpus = 0.0;
};

inline std::vector<double> project_basic(const CareerParams& params) {
  std::vector<double> basic(static_cast<std::size_t>(params.service_years));
  for (std::size_t t = 0; t < basic.size(); ++t)
    basic[t] = params.basic_start * std::pow(1.0 + params.increment_rate, static_cast<double>(t));
  return basic;
}

// da_1 = 0, da_t = basic_{t-1} * inflation_{t-1} / 100.
inline std::vector<double> dearness_allowance(std::span<const double> basic,
                                              std::span<const double> inflation_pct) {
  if (basic.size() != inflation_pct.size())
    throw ShapeError("dearness_allowance: basic has " + std::to_string(basic.size()) +
                     " entries, inflation has " + std::to_string(inflation_pct.size()));
  std::vector<double> da(basic.size(), 0.0);
  for (std::size_t t = 1; t < da.size(); ++t) da[t] = basic[t - 1] * inflation_pct[t - 1] / 100.0;
  return da;
}

inline double yearly_contribution(double salary, const CareerParams& params) {
  return params.contribution_rate() * salary;
}

// corpus_1 = c_1; corpus_t = corpus_{t-1} * g(r_{t-1}) + c_t. Contributions
// land at year end and earn nothing in the year they are paid.
inline std::vector<double> accumulate_corpus(std::span<const double> contributions,
                                             std::span<const double> log_returns,
                                             Compounding compounding) {
  if (contributions.empty()) throw ShapeError("accumulate_corpus: no contributions");
  if (log_returns.size() + 1 != contributions.size())
    throw ShapeError("accumulate_corpus: expected " + std::to_string(contributions.size() - 1) +
                     " log-returns, got " + std::to_string(log_returns.size()));
  std::vector<double> corpus(contributions.size());
  corpus[0] = contributions[0];
  for (std::size_t t = 1; t < corpus.size(); ++t)
    corpus[t] = corpus[t - 1] * growth_factor(log_returns[t - 1], compounding) + contributions[t];
  return corpus;
}

// Full career table from the first n inflation values and n-1 log-returns.
inline std::vector<CareerYear> career_table(const CareerParams& params,
                                            std::span<const double> inflation_pct,
                                            std::span<const double> log_returns,
                                            Compounding compounding) {
  const auto n = static_cast<std::size_t>(params.service_years);
  if (inflation_pct.size() != n)
    throw ShapeError("career_table: expected " + std::to_string(n) + " inflation values, got " +
                     std::to_string(inflation_pct.size()));
  const auto basic = project_basic(params);
  const auto da = dearness_allowance(basic, inflation_pct);
  std::vector<double> contributions(n);
  for (std::size_t t = 0; t < n; ++t) contributions[t] = yearly_contribution(basic[t] + da[t], params);
  const auto corpus = accumulate_corpus(contributions, log_returns, compounding);

  std::vector<CareerYear> rows(n);
  for (std::size_t t = 0; t < n; ++t) {
    auto& row = rows[t];
    row.year = static_cast<int>(t) + 1;
    row.inflation_pct = inflation_pct[t];
    row.basic = basic[t];
    row.da = da[t];
    row.salary = basic[t] + da[t];
    row.contribution = contributions[t];
    if (t > 0) {
      row.log_return = log_returns[t - 1];
      row.growth_factor = growth_factor(row.log_return, compounding);
    }
    row.corpus = corpus[t];
  }
  return rows;
}

}  // namespace pension_mc
