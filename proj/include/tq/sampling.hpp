#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "tq/quad.hpp"
#include "tq/tournament.hpp"

namespace tq {

struct WilsonInterval {
  double low = 0.0, high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                      double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

/// Union bound on the probability that a random n-tournament is not
/// quadrangular: the outset-event count, doubled for the inset event.
inline double nonquad_bound(int n) {
  return 2.0 * (1.0 / 8.0) * n * (n - 1.0) * (n - 2.0) * std::pow(0.75, n - 3);
}

inline std::vector<std::pair<int, double>> bound_curve(int n_min, int n_max) {
  if (n_min < 4 || n_min > n_max) throw input_error("bound_curve: need 4 <= n_min <= n_max");
  std::vector<std::pair<int, double>> out;
  for (int n = n_min; n <= n_max; ++n) out.emplace_back(n, nonquad_bound(n));
  return out;
}

struct SampleEstimate {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t non_quadrangular = 0;
  double fraction = 0.0;
  WilsonInterval wilson_ci;
  double bound = 0.0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the non-quadrangular fraction over uniform labeled
/// tournaments. Trial i draws from stream (seed, i), so the result is
/// deterministic in (n, trials, seed) regardless of worker count.
inline SampleEstimate estimate_nonquad(int n, std::uint64_t trials, std::uint64_t seed,
                                       int threads = 1) {
  if (n < 4) throw input_error("estimate_nonquad: order must be >= 4");
  if (trials < 1) throw input_error("estimate_nonquad: need at least one trial");
  if (threads < 1) threads = 1;
  std::atomic<std::uint64_t> bad{0};
  std::atomic<std::uint64_t> cursor{0};
  auto worker = [&]() {
    std::uint64_t local = 0;
    while (true) {
      std::uint64_t t = cursor.fetch_add(1);
      if (t >= trials) break;
      Tournament trn = Tournament::random(n, detail::stream_seed(seed, t));
      if (!is_quadrangular(trn)) ++local;
    }
    bad.fetch_add(local);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SampleEstimate est;
  est.n = n;
  est.trials = trials;
  est.non_quadrangular = bad.load();
  est.fraction = static_cast<double>(est.non_quadrangular) / static_cast<double>(trials);
  est.wilson_ci = wilson_interval(est.non_quadrangular, trials);
  est.bound = nonquad_bound(n);
  est.seed = seed;
  return est;
}

}  // namespace tq
