// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pension_mc.hpp"

using namespace pension_mc;

namespace {

struct Check {
  bool ok = true;
  std::string notes;

  void expect(bool cond, const std::string& what) {
    if (!notes.empty()) notes += "; ";
    notes += (cond ? "" : "FAILED ") + what;
    ok = ok && cond;
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6g (want %.6g +/- %.3g)", what.c_str(), got, want, tol);
    expect(std::fabs(got - want) <= tol, buf);
  }
  void within(double got, double lo, double hi, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.6g in [%.6g, %.6g]", what.c_str(), got, lo, hi);
    expect(got >= lo && got <= hi, buf);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Check table1_replay() {
  Check c;
  CareerParams p;
  p.service_years = 4;
  const std::vector<double> infl = {1.97, 2.92, 3.61, 4.69};
  const std::vector<double> returns(3, 0.0);
  const auto rows = career_table(p, infl, returns, Compounding::simple);
  const double expected[3][4] = {
      {103.00, 1.97, 104.97, 25.19}, {106.09, 3.01, 109.10, 26.18}, {109.27, 3.83, 113.10, 27.14}};
  const char* cols[4] = {"basic", "da", "salary", "contribution"};
  for (int t = 0; t < 3; ++t) {
    const auto& r = rows[t + 1];
    const double got[4] = {r.basic, r.da, r.salary, r.contribution};
    for (int j = 0; j < 4; ++j)
      c.near(got[j], expected[t][j], 0.005, std::string(cols[j]) + "[" + std::to_string(t + 2) + "]");
  }
  c.near(project_basic(CareerParams{})[29], 235.66, 0.005, "basic[30]");
  return c;
}

Check table2_replay() {
  Check c;
  const double pension = annual_pension(3807.78, 0.07);
  c.near(pension, 266.54, 0.01, "pension");
  const std::vector<double> infl = {5.26, 3.88, 5.12};
  const auto req = requirement_series(239.93, 5.46, infl, 0.5);
  c.near(req[0], 126.52, 0.01, "req[31]");
  c.near(req[1], 133.17, 0.01, "req[32]");
  c.near(req[2], 138.34, 0.01, "req[33]");
  return c;
}

Check closed_form() {
  Check c;
  for (auto mode : {Compounding::simple, Compounding::exponential}) {
    for (double rate : {0.07, 0.05}) {
      Scenario s;
      s.gbm.sigma = 0.0;
      s.inflation.sd_pct = 0.0;
      s.retirement.annuity_rate = rate;
      s.compounding = mode;
      s.num_paths = 1;
      oracle::DeterministicInputs in;
      in.annuity_rate = rate;
      in.growth = mode == Compounding::simple ? 1.09 : std::exp(0.09);
      const auto want = oracle::deterministic_path(in);
      const auto got = run_path(s, 0).outcome;
      const std::string tag = std::string(to_string(mode)) + "@" + fmt(rate);
      c.expect(std::fabs(got.final_corpus / want.final_corpus - 1.0) <= 1e-9,
               tag + " corpus rel.err " + fmt(std::fabs(got.final_corpus / want.final_corpus - 1.0)));
      c.expect(got.shortfall_years == want.shortfall_years,
               tag + " shortfall " + std::to_string(got.shortfall_years) + " vs " +
                   std::to_string(want.shortfall_years));
      const double pv_err = want.pv_support == 0.0
                                ? std::fabs(got.pv_support)
                                : std::fabs(got.pv_support / want.pv_support - 1.0);
      c.expect(pv_err <= 1e-9, tag + " pv " + fmt(got.pv_support) + " vs " + fmt(want.pv_support));
    }
  }
  return c;
}

Check baseline_corpus() {
  Check c;
  Scenario s;  // 1000 paths, mu 9%, sigma 5%
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_scenario(s);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.within(r.final_corpus.mean, 3950.0, 4820.0, "mean");
  c.within(r.final_corpus.sd, 590.0, 990.0, "sd");
  c.expect(secs < 1.0, "runtime " + fmt(secs) + "s < 1s");
  return c;
}

Check guarantee_cost() {
  Check c;
  Scenario base;
  base.num_paths = 20000;
  const auto mean_pv = [&](const std::vector<Override>& o) {
    Scenario s = base;
    for (const auto& x : o) set_scenario_field(s, x.key, x.value);
    return run_scenario(s).pv_support.mean;
  };
  c.within(mean_pv({{"annuity_rate", "0.07"}}), 0.15, 1.20, "annuity 7%");
  c.within(mean_pv({{"annuity_rate", "0.05"}}), 5.7, 11.8, "annuity 5%");
  c.within(mean_pv({{"annuity_rate", "0.05"}, {"service_years", "25"}}), 32.0, 54.0,
           "n=25 @5%");
  c.within(mean_pv({{"annuity_rate", "0.05"}, {"service_years", "35"}}), 0.05, 1.50,
           "n=35 @5%");
  return c;
}

Check ordering() {
  Check c;
  Scenario base;
  base.num_paths = 10000;
  const std::vector<Override> mu = {{"gbm_mu", "0.07"}, {"gbm_mu", "0.09"}, {"gbm_mu", "0.11"}};
  const auto vm = sweep(base, mu);
  c.expect(vm[0].result.final_corpus.mean < vm[1].result.final_corpus.mean &&
               vm[1].result.final_corpus.mean < vm[2].result.final_corpus.mean,
           "corpus mean " + fmt(vm[0].result.final_corpus.mean) + " < " +
               fmt(vm[1].result.final_corpus.mean) + " < " + fmt(vm[2].result.final_corpus.mean));

  const std::vector<Override> annuity = {{"annuity_rate", "0.05"}, {"annuity_rate", "0.07"}};
  const auto va = sweep(base, annuity);
  c.expect(va[0].result.shortfall_years.mean > va[1].result.shortfall_years.mean,
           "shortfall 5% " + fmt(va[0].result.shortfall_years.mean) + " > 7% " +
               fmt(va[1].result.shortfall_years.mean));
  c.expect(va[0].result.pv_support.mean > va[1].result.pv_support.mean,
           "pv 5% " + fmt(va[0].result.pv_support.mean) + " > 7% " +
               fmt(va[1].result.pv_support.mean));

  for (const char* rate : {"0.07", "0.05"}) {
    Scenario s = base;
    set_scenario_field(s, "annuity_rate", rate);
    const std::vector<Override> years = {
        {"service_years", "25"}, {"service_years", "30"}, {"service_years", "35"}};
    const auto vy = sweep(s, years);
    c.expect(vy[0].result.pv_support.mean > vy[1].result.pv_support.mean &&
                 vy[1].result.pv_support.mean > vy[2].result.pv_support.mean,
             std::string("pv by service @") + rate + " " + fmt(vy[0].result.pv_support.mean) +
                 " > " + fmt(vy[1].result.pv_support.mean) + " > " +
                 fmt(vy[2].result.pv_support.mean));
  }
  return c;
}

Check stochastic_stats() {
  Check c;
  constexpr std::size_t n = 1'000'000;
  const GbmParams gbm{0.09, 0.05};
  RandomStream returns_stream(42, 0);
  const auto r = gbm_log_returns(returns_stream, gbm, n);
  double sum = 0.0;
  for (double x : r) sum += x;
  c.near(sum / n, gbm.mu - 0.5 * gbm.sigma * gbm.sigma, 3.0 * gbm.sigma / std::sqrt(double(n)),
         "log-return mean");
  RandomStream infl_stream(42, 1);
  const auto infl = inflation_series(infl_stream, {4.0, 1.0}, n);
  std::size_t in_band = 0;
  for (double x : infl) in_band += (x >= 2.0 && x <= 6.0);
  c.near(double(in_band) / n, 0.9545, 0.001, "inflation mass in [2,6]");
  return c;
}

Check determinism() {
  Check c;
  Scenario s;
  s.num_paths = 5000;
  const auto a = summary_json(s, run_scenario(s, {1}));
  const auto b = summary_json(s, run_scenario(s, {1}));
  const auto many = summary_json(s, run_scenario(s, {8}));
  const auto all = summary_json(s, run_scenario(s, {0}));
  c.expect(a == b, "two 1-thread runs byte-identical");
  c.expect(a == many, "1 vs 8 threads byte-identical");
  c.expect(a == all, "1 vs hardware threads byte-identical");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"1 Table 1 replay", table1_replay},
      {"2 Table 2 replay", table2_replay},
      {"3 closed-form oracle", closed_form},
      {"4 baseline corpus distribution", baseline_corpus},
      {"5 guarantee cost", guarantee_cost},
      {"6 ordering properties", ordering},
      {"7 stochastic statistics", stochastic_stats},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    failed += !c.ok;
    std::printf("[%s] %s: %s\n", c.ok ? "PASS" : "FAIL", name, c.notes.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
