#pragma once

// Payout phase: annuity conversion, the inflation-indexed requirement, the
// per-year sufficiency test and the discounted cost of topping up shortfalls.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pension_mc/error.hpp"

namespace pension_mc {

struct RetirementParams {
  int retirement_years = 20;
  double annuity_rate = 0.07;
  double guarantee_fraction = 0.5;
  double risk_free_rate = 0.07;

  bool valid() const {
    return retirement_years >= 1 && std::isfinite(annuity_rate) && annuity_rate >= 0.0 &&
           std::isfinite(guarantee_fraction) && guarantee_fraction >= 0.0 &&
           guarantee_fraction <= 1.0 && std::isfinite(risk_free_rate) && risk_free_rate >= 0.0;
  }

  bool operator==(const RetirementParams&) const = default;
};

struct RetirementYear {
  int year = 0;
  double inflation_pct = 0.0;
  double requirement = 0.0;
  double pension = 0.0;
  bool sufficient = true;
  double top_up = 0.0;
};

inline double annual_pension(double final_corpus, double annuity_rate) {
  return final_corpus * annuity_rate;
}

// req_1 = fraction * final_salary * (1 + final_year_inflation / 100);
// req_k = req_{k-1} * (1 + inflation_{k-1} / 100).
inline std::vector<double> requirement_series(double final_salary, double final_year_inflation_pct,
                                              std::span<const double> retirement_inflation_pct,
                                              double fraction) {
  std::vector<double> req(retirement_inflation_pct.size());
  if (req.empty()) return req;
  req[0] = fraction * final_salary * (1.0 + final_year_inflation_pct / 100.0);
  for (std::size_t k = 1; k < req.size(); ++k)
    req[k] = req[k - 1] * (1.0 + retirement_inflation_pct[k - 1] / 100.0);
  return req;
}

// Rows carry years 1..m; callers offset them to calendar years. A tie
// (pension == requirement) is sufficient.
inline std::vector<RetirementYear> evaluate_retirement(double pension,
                                                       std::span<const double> requirements,
                                                       std::span<const double> inflation_pct,
                                                       int first_year = 1) {
  if (requirements.size() != inflation_pct.size())
    throw ShapeError("evaluate_retirement: " + std::to_string(requirements.size()) +
                     " requirements vs " + std::to_string(inflation_pct.size()) +
                     " inflation values");
  std::vector<RetirementYear> rows(requirements.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& row = rows[k];
    row.year = first_year + static_cast<int>(k);
    row.inflation_pct = inflation_pct[k];
    row.requirement = requirements[k];
    row.pension = pension;
    row.sufficient = pension >= requirements[k];
    row.top_up = row.sufficient ? 0.0 : requirements[k] - pension;
  }
  return rows;
}

inline int shortfall_years(std::span<const RetirementYear> rows) {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const RetirementYear& r) { return !r.sufficient; }));
}

// Sum of top_up_k / (1 + rf)^((n + k) - 1): each top-up is paid at the end
// of calendar year n + k and valued in year 1.
inline double pv_support(std::span<const RetirementYear> rows, double risk_free_rate,
                         int service_years) {
  double pv = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].top_up == 0.0) continue;
    const double periods = static_cast<double>(service_years) + static_cast<double>(k);
    pv += rows[k].top_up / std::pow(1.0 + risk_free_rate, periods);
  }
  return pv;
}

}  // namespace pension_mc
