#pragma once

/**
 * Discrete order statistics for N keys drawn i.i.d. uniformly from 1..M.
 *
 *   F(x)    = x / M
 *   G_n(x)  = P(X_(n) <= x) = sum_{j=n}^{N} C(N,j) F^j (1-F)^(N-j)
 *   cross   = P(X_(n-k) > Y_(n)) = sum_x (1 - G_{n-k}(x)) (G_n(x) - G_n(x-1))
 *
 * plus the two closed-form arrangement probabilities used by the old
 * average-case argument (scan length and P length).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "shuffle_merge/errors.hpp"

namespace shuffle_merge {

struct SampleModel {
  std::int64_t N = 1;  // samples per list
  std::int64_t M = 4;  // key universe 1..M

  static SampleModel with_factor(std::int64_t n, std::int64_t factor = 4) {
    return {n, n * factor};
  }

  void validate() const {
    require(N >= 1 && M > N, "SampleModel: requires M > N >= 1");
  }
};

struct ProbCell {
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  double value = 0.0;
};

namespace detail {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double log_binomial(std::int64_t n, std::int64_t j) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(j) + 1) -
         std::lgamma(double(n - j) + 1);
}

// P(Bin(n, p) >= t) for 0 < p < 1. Terms are unimodal in j, so the sum walks
// outward from the mode (or from t when t lies beyond it) and stops once the
// decreasing tail has become negligible.
inline double binomial_upper_tail(std::int64_t n, double p, std::int64_t t) {
  if (t <= 0) return 1.0;
  if (t > n) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  auto term = [&](std::int64_t j) {
    return std::exp(log_binomial(n, j) + double(j) * log_p +
                    double(n - j) * log_q);
  };
  // Tiny relative to any sum we care about, and far below 1e-10 absolute.
  constexpr double kNegligible = 1e-18;

  const auto mode = std::min<std::int64_t>(
      n, static_cast<std::int64_t>(std::floor(double(n + 1) * p)));
  const std::int64_t start = std::max(t, mode);

  CompensatedSum sum;
  for (std::int64_t j = start; j <= n; ++j) {
    const double v = term(j);
    sum.add(v);
    if (j > mode && v <= kNegligible * std::max(sum.value(), 1e-300)) break;
  }
  for (std::int64_t j = start - 1; j >= t; --j) {
    const double v = term(j);
    sum.add(v);
    if (v <= kNegligible * std::max(sum.value(), 1e-300)) break;
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

inline void check_point(const SampleModel& model, std::int64_t x) {
  model.validate();
  require(x >= 0 && x <= model.M, "order statistics: x must lie in [0, M]");
}

}  // namespace detail

/// F(x) = x / M.
inline double uniform_cdf(const SampleModel& model, std::int64_t x) {
  detail::check_point(model, x);
  return double(x) / double(model.M);
}

/// P(X_(1) <= x) = 1 - (1 - x/M)^N, evaluated as -expm1(N log1p(-x/M)).
inline double min_cdf(const SampleModel& model, std::int64_t x) {
  detail::check_point(model, x);
  if (x == model.M) return 1.0;
  const double f = double(x) / double(model.M);
  return -std::expm1(double(model.N) * std::log1p(-f));
}

/// G_n(x) = P(X_(n) <= x), the probability that at least n of the N samples
/// are <= x. G_n(0) = 0.
inline double order_stat_cdf(const SampleModel& model, std::int64_t n,
                             std::int64_t x) {
  detail::check_point(model, x);
  require(n >= 1 && n <= model.N, "order_stat_cdf: rank must lie in [1, N]");
  if (x == 0) return 0.0;
  if (x == model.M) return 1.0;
  return detail::binomial_upper_tail(model.N, double(x) / double(model.M), n);
}

/// G_n(x) for x = 0..M in one vector.
inline std::vector<double> order_stat_cdf_table(const SampleModel& model,
                                                std::int64_t n) {
  model.validate();
  require(n >= 1 && n <= model.N, "order_stat_cdf: rank must lie in [1, N]");
  std::vector<double> g(static_cast<std::size_t>(model.M) + 1);
  for (std::int64_t x = 0; x <= model.M; ++x)
    g[static_cast<std::size_t>(x)] = order_stat_cdf(model, n, x);
  return g;
}

/// P(X_(n-k) > Y_(n)) for two independent samples of size N.
inline double prob_cross(const SampleModel& model, std::int64_t n,
                         std::int64_t k) {
  model.validate();
  require(k >= 0, "prob_cross: offset k must be non-negative");
  require(n - k >= 1, "prob_cross: requires n - k >= 1");
  require(n <= model.N, "prob_cross: requires n <= N");
  const auto lower = order_stat_cdf_table(model, n - k);
  const auto upper = k == 0 ? lower : order_stat_cdf_table(model, n);
  detail::CompensatedSum sum;
  for (std::size_t x = 1; x < upper.size(); ++x)
    sum.add((1.0 - lower[x]) * (upper[x] - upper[x - 1]));
  return std::clamp(sum.value(), 0.0, 1.0);
}

/// Probability that Scan yields |D| = 2r when P plus the remaining
/// same-origin elements number n and the other origin has m left:
///   n m (m-1) ... (m-r+1) / ((n+m)(n+m-1) ... (n+m-r)).
inline double lemma1_prob(std::int64_t n, std::int64_t m, std::int64_t r) {
  require(r >= 1 && m >= r && n >= m, "lemma1_prob: requires n >= m >= r >= 1");
  double v = double(n) / double(n + m - r);
  for (std::int64_t t = 0; t < r; ++t) v *= double(m - t) / double(n + m - t);
  return v;
}

/// Probability that P holds exactly p elements at the bottom of the loop
/// under the i.i.d. arrangement assumption:
///   m (m-1) ... (m-p+1) / ((m+n)(m+n-1) ... (m+n-p+1)).
inline double lemma2_prob(std::int64_t m, std::int64_t n, std::int64_t p) {
  require(n >= 0 && std::abs(m - n) <= 1 && p >= 1 && p <= m,
          "lemma2_prob: requires |m - n| <= 1 and 1 <= p <= m");
  double v = 1.0;
  for (std::int64_t t = 0; t < p; ++t) v *= double(m - t) / double(m + n - t);
  return v;
}

}  // namespace shuffle_merge
