#pragma once

// Oracle-equivalence and invariant sweep run by `shuffle_merge selftest`.
// Each check prints one line; the report is green only if all of them pass.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "shuffle_merge/experiments.hpp"
#include "shuffle_merge/merge_engine.hpp"
#include "shuffle_merge/merge_oracle.hpp"
#include "shuffle_merge/order_stats.hpp"
#include "shuffle_merge/shuffle.hpp"

namespace shuffle_merge {

struct SelftestReport {
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

namespace detail {

inline void report(SelftestReport& r, std::ostream& log, bool ok,
                   const std::string& name, const std::string& detail = {}) {
  (ok ? r.passed : r.failed) += 1;
  log << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) log << " (" << detail << ")";
  log << '\n';
}

inline bool selftest_shuffle() {
  for (std::size_t len = 2; len <= 256; len += 2) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      SplitMix64 rng(mix64(seed * 1000 + len));
      std::vector<std::uint64_t> a(len);
      for (auto& v : a) v = rng.next();
      std::vector<std::uint64_t> expected(len);
      for (std::size_t t = 0; t < len / 2; ++t) {
        expected[2 * t] = a[t];
        expected[2 * t + 1] = a[len / 2 + t];
      }
      auto b = a;
      MoveSink sink;
      in_shuffle(std::span<std::uint64_t>(b), sink);
      if (b != expected || sink.moves > 4 * len) return false;
      MoveSink back;
      un_shuffle(std::span<std::uint64_t>(b), back);
      if (b != a || back.moves > 4 * len) return false;
    }
  }
  return true;
}

inline bool selftest_merge(std::uint64_t seed, int cases) {
  SplitMix64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const auto half = static_cast<std::int64_t>(1 + rng.bounded(128));
    const std::int64_t n = 2 * half;
    const std::int64_t factor = (c % 2 == 0) ? 1 : 4;
    const MergeInput in = gen_input(n, rng.next(), factor);
    std::vector<Element> a = in.concatenated();
    MergeOptions opts;
    opts.check_invariants = true;
    right_going_merge(a, opts);
    if (a != oracle::stable_merge_reference(in.left, in.right)) return false;
  }
  return true;
}

inline bool selftest_lemmas() {
  for (int n = 1; n <= 24; ++n)
    for (int m = 1; m <= n && n + m <= 24; ++m)
      for (int r = 1; r <= m; ++r) {
        const auto exact = oracle::lemma1_exact(n, m, r);
        const double approx = lemma1_prob(n, m, r);
        if (std::abs(approx - exact.to_double()) > 1e-14 * exact.to_double()) return false;
        if (!(exact <= oracle::inverse_power_of_two(unsigned(r)))) return false;
      }
  for (int m = 1; m <= 24; ++m)
    for (int n = std::max(0, m - 1); n <= m + 1 && m + n <= 24; ++n)
      for (int p = 1; p <= m; ++p) {
        const auto exact = oracle::lemma2_exact(m, n, p);
        const double approx = lemma2_prob(m, n, p);
        if (std::abs(approx - exact.to_double()) > 1e-14 * exact.to_double()) return false;
        if (!(exact <= oracle::inverse_power_of_two(unsigned(p - 1)))) return false;
      }
  return true;
}

inline bool selftest_order_stats() {
  for (std::int64_t n_samples : {1, 3, 10, 50}) {
    const auto model = SampleModel::with_factor(n_samples);
    for (std::int64_t x = 0; x <= model.M; ++x)
      if (std::abs(order_stat_cdf(model, 1, x) - min_cdf(model, x)) > 1e-12) return false;
    for (std::int64_t n = 1; n <= n_samples; ++n)
      if (std::abs(order_stat_cdf(model, n, model.M) - 1.0) > 1e-12) return false;
  }
  return std::abs(prob_cross({1, 4}, 1, 0) - 0.375) <= 1e-12;
}

}  // namespace detail

inline SelftestReport run_selftest(std::ostream& log) {
  SelftestReport r;
  auto guarded = [&](const std::string& name, auto&& check) {
    try {
      detail::report(r, log, check(), name);
    } catch (const std::exception& e) {
      detail::report(r, log, false, name, e.what());
    }
  };
  guarded("shuffle matches buffered interleave, inverse round trip, move bound",
          [] { return detail::selftest_shuffle(); });
  guarded("merge matches buffered stable merge (400 cases, invariants checked)",
          [] { return detail::selftest_merge(0x5eed, 400); });
  guarded("lemma products match exact binomial ratios and bounds",
          [] { return detail::selftest_lemmas(); });
  guarded("order statistic identities", [] { return detail::selftest_order_stats(); });
  return r;
}

}  // namespace shuffle_merge
