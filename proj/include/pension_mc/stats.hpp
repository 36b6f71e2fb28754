#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pension_mc/error.hpp"

namespace pension_mc {

struct Quantiles {
  double p5 = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
};

// Equal-width bins over [min, max]; bins are right-open except the last.
struct Histogram {
  std::vector<double> edges;  // bin_count + 1
  std::vector<std::size_t> counts;
};

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  // n-1 divisor, 0 for a single value
  double min = 0.0;
  double max = 0.0;
  Quantiles quantiles;
  Histogram histogram;
};

inline constexpr std::size_t kDefaultBinCount = 30;

// Linear interpolation between order statistics at h = (n - 1) * p.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline SummaryStats summarize(std::span<const double> values,
                              std::size_t bin_count = kDefaultBinCount) {
  if (values.empty()) throw ShapeError("summarize: empty input");
  if (bin_count == 0) throw ShapeError("summarize: bin_count must be positive");

  SummaryStats s;
  s.count = values.size();
  const double n = static_cast<double>(values.size());

  // Two-pass mean/variance in input order keeps the result independent of
  // how the values were produced.
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.quantiles = {quantile_sorted(sorted, 0.05), quantile_sorted(sorted, 0.25),
                 quantile_sorted(sorted, 0.50), quantile_sorted(sorted, 0.75),
                 quantile_sorted(sorted, 0.95)};

  auto& h = s.histogram;
  const double width = (s.max - s.min) / static_cast<double>(bin_count);
  h.edges.resize(bin_count + 1);
  for (std::size_t i = 0; i <= bin_count; ++i)
    h.edges[i] = s.min + width * static_cast<double>(i);
  h.edges.back() = s.max;
  h.counts.assign(bin_count, 0);
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = static_cast<std::size_t>((v - s.min) / width);
      // Edge rounding can put a value one bin off; fix against the edges.
      bin = std::min(bin, bin_count - 1);
      while (bin > 0 && v < h.edges[bin]) --bin;
      while (bin + 1 < bin_count && v >= h.edges[bin + 1]) ++bin;
    }
    ++h.counts[bin];
  }
  return s;
}

}  // namespace pension_mc
