#pragma once

// The flat parameter set of one experiment, plus by-name field access shared
// by the config parser and parameter sweeps.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pension_mc/accumulation.hpp"
#include "pension_mc/error.hpp"
#include "pension_mc/retirement.hpp"
#include "pension_mc/stochastic.hpp"

namespace pension_mc {

struct Scenario {
  CareerParams career;
  RetirementParams retirement;
  GbmParams gbm;
  InflationParams inflation;
  Compounding compounding = Compounding::simple;
  std::int64_t num_paths = 1000;
  std::uint64_t master_seed = 42;

  bool operator==(const Scenario&) const = default;
};

struct Violation {
  std::vector<std::string> keys;  // fields involved in the broken invariant
  std::string message;
};

// First invariant violation, if any, attributed to the key that breaks it.
inline std::optional<Violation> find_violation(const Scenario& s) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (s.career.service_years < 1) return Violation{{"service_years"}, "service_years must be >= 1"};
  if (s.retirement.retirement_years < 1)
    return Violation{{"retirement_years"}, "retirement_years must be >= 1"};
  if (!finite(s.career.basic_start) || s.career.basic_start <= 0.0)
    return Violation{{"basic_start"}, "basic_start must be > 0"};
  if (!finite(s.career.increment_rate) || s.career.increment_rate < 0.0)
    return Violation{{"increment_rate"}, "increment_rate must be >= 0"};
  if (!finite(s.career.employee_rate) || s.career.employee_rate < 0.0)
    return Violation{{"employee_rate"}, "employee_rate must be >= 0"};
  if (!finite(s.career.employer_rate) || s.career.employer_rate < 0.0)
    return Violation{{"employer_rate"}, "employer_rate must be >= 0"};
  if (s.career.employee_rate + s.career.employer_rate > 1.0)
    return Violation{{"employee_rate", "employer_rate"},
                     "employee_rate + employer_rate must be <= 1"};
  if (!finite(s.inflation.mean_pct))
    return Violation{{"inflation_mean_pct"}, "inflation_mean_pct must be finite"};
  if (!finite(s.inflation.sd_pct) || s.inflation.sd_pct < 0.0)
    return Violation{{"inflation_sd_pct"}, "inflation_sd_pct must be >= 0"};
  if (!finite(s.gbm.mu)) return Violation{{"gbm_mu"}, "gbm_mu must be finite"};
  if (!finite(s.gbm.sigma) || s.gbm.sigma < 0.0)
    return Violation{{"gbm_sigma"}, "gbm_sigma must be >= 0"};
  if (!finite(s.retirement.annuity_rate) || s.retirement.annuity_rate < 0.0)
    return Violation{{"annuity_rate"}, "annuity_rate must be >= 0"};
  if (!finite(s.retirement.risk_free_rate) || s.retirement.risk_free_rate < 0.0)
    return Violation{{"risk_free_rate"}, "risk_free_rate must be >= 0"};
  if (!finite(s.retirement.guarantee_fraction) || s.retirement.guarantee_fraction < 0.0 ||
      s.retirement.guarantee_fraction > 1.0)
    return Violation{{"guarantee_fraction"}, "guarantee_fraction must be in [0, 1]"};
  if (s.num_paths < 1) return Violation{{"num_paths"}, "num_paths must be >= 1"};
  return std::nullopt;
}

inline void validate(const Scenario& s) {
  if (const auto v = find_violation(s)) throw ConfigError(v->message);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
    throw ConfigError("cannot parse value '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
  return value;
}

// Shortest decimal that round-trips.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "service_years",    "retirement_years", "basic_start",        "increment_rate",
      "employee_rate",    "employer_rate",    "inflation_mean_pct", "inflation_sd_pct",
      "gbm_mu",           "gbm_sigma",        "annuity_rate",       "risk_free_rate",
      "guarantee_fraction", "compounding",    "num_paths",          "seed"};
  return keys;
}

// Assigns one field from its textual value. Does not validate the result.
inline void set_scenario_field(Scenario& s, std::string_view key, std::string_view raw) {
  const std::string_view value = detail::trim(raw);
  using detail::parse_number;
  if (key == "service_years") s.career.service_years = parse_number<int>(key, value);
  else if (key == "retirement_years") s.retirement.retirement_years = parse_number<int>(key, value);
  else if (key == "basic_start") s.career.basic_start = parse_number<double>(key, value);
  else if (key == "increment_rate") s.career.increment_rate = parse_number<double>(key, value);
  else if (key == "employee_rate") s.career.employee_rate = parse_number<double>(key, value);
  else if (key == "employer_rate") s.career.employer_rate = parse_number<double>(key, value);
  else if (key == "inflation_mean_pct") s.inflation.mean_pct = parse_number<double>(key, value);
  else if (key == "inflation_sd_pct") s.inflation.sd_pct = parse_number<double>(key, value);
  else if (key == "gbm_mu") s.gbm.mu = parse_number<double>(key, value);
  else if (key == "gbm_sigma") s.gbm.sigma = parse_number<double>(key, value);
  else if (key == "annuity_rate") s.retirement.annuity_rate = parse_number<double>(key, value);
  else if (key == "risk_free_rate") s.retirement.risk_free_rate = parse_number<double>(key, value);
  else if (key == "guarantee_fraction") s.retirement.guarantee_fraction = parse_number<double>(key, value);
  else if (key == "num_paths") s.num_paths = parse_number<std::int64_t>(key, value);
  else if (key == "seed") s.master_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "compounding") {
    if (value == "simple") s.compounding = Compounding::simple;
    else if (value == "exponential") s.compounding = Compounding::exponential;
    else
      throw ConfigError("compounding must be 'simple' or 'exponential', got '" +
                        std::string(value) + "'");
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

inline std::string get_scenario_field(const Scenario& s, std::string_view key) {
  using detail::format_double;
  if (key == "service_years") return std::to_string(s.career.service_years);
  if (key == "retirement_years") return std::to_string(s.retirement.retirement_years);
  if (key == "basic_start") return format_double(s.career.basic_start);
  if (key == "increment_rate") return format_double(s.career.increment_rate);
  if (key == "employee_rate") return format_double(s.career.employee_rate);
  if (key == "employer_rate") return format_double(s.career.employer_rate);
  if (key == "inflation_mean_pct") return format_double(s.inflation.mean_pct);
  if (key == "inflation_sd_pct") return format_double(s.inflation.sd_pct);
  if (key == "gbm_mu") return format_double(s.gbm.mu);
  if (key == "gbm_sigma") return format_double(s.gbm.sigma);
  if (key == "annuity_rate") return format_double(s.retirement.annuity_rate);
  if (key == "risk_free_rate") return format_double(s.retirement.risk_free_rate);
  if (key == "guarantee_fraction") return format_double(s.retirement.guarantee_fraction);
  if (key == "compounding") return to_string(s.compounding);
  if (key == "num_paths") return std::to_string(s.num_paths);
  if (key == "seed") return std::to_string(s.master_seed);
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

// Config-file text for a scenario; parse_scenario reads it back unchanged.
inline std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  for (const auto& key : scenario_keys()) out << key << " = " << get_scenario_field(s, key) << '\n';
  return out.str();
}

// Line-oriented `key = value`; `#` starts a comment; omitted keys keep the
// baseline defaults.
inline Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::map<std::string, int, std::less<>> key_line;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    try {
      set_scenario_field(s, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
    key_line[std::string(key)] = line_no;
  }
  if (const auto v = find_violation(s)) {
    // Blame the last line that touched any of the involved keys.
    int blamed = 0;
    for (const auto& k : v->keys)
      if (const auto it = key_line.find(k); it != key_line.end()) blamed = std::max(blamed, it->second);
    if (blamed > 0) throw ConfigError("line " + std::to_string(blamed) + ": " + v->message);
    throw ConfigError(v->message);
  }
  return s;
}

}  // namespace pension_mc
