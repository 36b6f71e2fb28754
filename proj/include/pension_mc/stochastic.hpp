#pragma once

// Counter-based random streams and the two stochastic drivers of the model:
// GBM log-returns and Gaussian inflation.
//
// Generator: Philox4x32-10 (Salmon et al., Random123). The 64-bit master seed
// is the key; the 128-bit counter is (block index lo, block index hi,
// stream id lo, stream id hi). A stream therefore owns a disjoint slice of
// the counter space and its output does not depend on any other stream.
//
// Each Philox block yields four 32-bit words = two uniforms. A uniform takes
// the top 53 bits of (w0 << 32 | w1) and maps k to (k + 0.5) / 2^53, which is
// strictly inside (0, 1). Normals are one uniform each through the AS241
// inverse CDF, so every variate consumes exactly one uniform.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pension_mc/error.hpp"

namespace pension_mc {

namespace detail {

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace detail

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds.
inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    detail::mulhilo32(kM0, ctr[0], hi0, lo0);
    detail::mulhilo32(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// Standard normal quantile, Wichura's AS241 (PPND16). Relative accuracy
// about 1e-16 over (0, 1).
inline double normal_quantile(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545925 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                  0.24178072517745061177) * r + 1.27045825245236838258) * r +
                3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                  0.0151986665636164571966) * r + 0.14810397642748007459) * r +
                0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  0.0012426609473880784386) * r + 0.026532189526576123093) * r +
                0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                  1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
                0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

// One path's private random sequence. Single owner; copy to fork.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform in the open interval (0, 1).
  double next_uniform() {
    if (lane_ == 2) refill();
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(block_[2 * lane_]) << 32) |
        block_[2 * lane_ + 1];
    ++lane_;
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(bits >> 11) + 0.5) * kScale;
  }

  double next_standard_normal() { return normal_quantile(next_uniform()); }

 private:
  void refill() {
    const PhiloxCounter ctr = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(stream_id_),
        static_cast<std::uint32_t>(stream_id_ >> 32)};
    const PhiloxKey key = {static_cast<std::uint32_t>(master_seed_),
                           static_cast<std::uint32_t>(master_seed_ >> 32)};
    block_ = philox4x32_10(ctr, key);
    ++block_index_;
    lane_ = 0;
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  PhiloxCounter block_{};
  int lane_ = 2;
};

inline double draw_standard_normal(RandomStream& stream) {
  return stream.next_standard_normal();
}

struct GbmParams {
  double mu = 0.09;     // annual drift
  double sigma = 0.05;  // annual volatility

  bool valid() const { return std::isfinite(mu) && std::isfinite(sigma) && sigma >= 0.0; }

  bool operator==(const GbmParams&) const = default;
};

struct InflationParams {
  double mean_pct = 4.0;
  double sd_pct = 1.0;

  bool valid() const {
    return std::isfinite(mean_pct) && std::isfinite(sd_pct) && sd_pct >= 0.0;
  }

  bool operator==(const InflationParams&) const = default;
};

// Annual (dt = 1) GBM log-returns: (mu - sigma^2/2) + sigma * z.
inline std::vector<double> gbm_log_returns(RandomStream& stream, const GbmParams& params,
                                           std::size_t count) {
  if (!params.valid()) throw ConfigError("invalid GBM parameters");
  const double drift = params.mu - 0.5 * params.sigma * params.sigma;
  std::vector<double> out(count);
  for (auto& r : out) r = drift + params.sigma * stream.next_standard_normal();
  return out;
}

// Untruncated Gaussian inflation in percent; negative values are kept.
inline std::vector<double> inflation_series(RandomStream& stream, const InflationParams& params,
                                            std::size_t count) {
  if (!params.valid()) throw ConfigError("invalid inflation parameters");
  std::vector<double> out(count);
  for (auto& x : out) x = params.mean_pct + params.sd_pct * stream.next_standard_normal();
  return out;
}

}  // namespace pension_mc
