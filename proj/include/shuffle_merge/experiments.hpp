#pragma once

/**
 * Seeded trial harness around right_going_merge.
 *
 * Random numbers come from SplitMix64 (state += 0x9E3779B97F4A7C15, then the
 * xor-shift-multiply finaliser with 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB).
 * Bounded draws use Lemire's multiply-shift reduction: (x * range) >> 64.
 *
 * Per-trial seed:
 *     h = mix(base_seed); h = mix(h ^ N); h = mix(h ^ trial)
 * where mix(v) is one SplitMix64 step from state v. Seeds depend only on
 * (base_seed, N, trial), so trials can run in any order or in parallel and
 * still produce the same rows.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "shuffle_merge/element.hpp"
#include "shuffle_merge/errors.hpp"
#include "shuffle_merge/merge_engine.hpp"
#include "shuffle_merge/order_stats.hpp"

namespace shuffle_merge {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, range).
  std::uint64_t bounded(std::uint64_t range) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * range) >> 64);
  }

  /// Uniform in [1, m].
  std::int64_t uniform_key(std::int64_t m) {
    return 1 + static_cast<std::int64_t>(bounded(static_cast<std::uint64_t>(m)));
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t v) { return SplitMix64(v).next(); }

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t n,
                                std::uint64_t trial) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ n);
  return mix64(h ^ trial);
}

struct MergeInput {
  std::vector<Element> left;
  std::vector<Element> right;

  /// left followed by right, ready for right_going_merge.
  std::vector<Element> concatenated() const {
    std::vector<Element> a(left);
    a.insert(a.end(), right.begin(), right.end());
    return a;
  }
};

/// Two sorted lists of N/2 keys each, drawn i.i.d. from 1..factor*N.
inline MergeInput gen_input(std::int64_t n, std::uint64_t seed,
                            std::int64_t key_universe_factor = 4) {
  require(n >= 2 && n % 2 == 0, "gen_input: N must be even and at least 2");
  require(key_universe_factor >= 1, "gen_input: key universe factor must be >= 1");
  SplitMix64 rng(seed);
  const std::int64_t m = key_universe_factor * n;
  auto draw = [&](Origin origin) {
    std::vector<std::int64_t> keys(static_cast<std::size_t>(n / 2));
    for (auto& k : keys) k = rng.uniform_key(m);
    std::sort(keys.begin(), keys.end());
    std::vector<Element> list(keys.size());
    for (std::size_t q = 0; q < keys.size(); ++q)
      list[q] = {keys[q], origin, static_cast<std::uint32_t>(q)};
    return list;
  };
  MergeInput in;
  in.left = draw(Origin::left);
  in.right = draw(Origin::right);
  return in;
}

/// Number of worker threads: SHUFFLE_MERGE_THREADS if set and positive,
/// otherwise the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("SHUFFLE_MERGE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(0..count-1) on up to worker_count() threads. The first exception
// thrown by any task is rethrown after all workers finish.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < count && !failed; t = next++) {
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct TrialPlan {
  std::vector<std::int64_t> sizes{500, 1000, 2000, 4000, 8000, 16000, 20000};
  std::int64_t trials_per_size = 10;
  std::uint64_t base_seed = 1;
  std::int64_t key_universe_factor = 4;
  MergeOptions merge_options{};

  void validate() const {
    require(!sizes.empty(), "TrialPlan: at least one size is required");
    for (auto n : sizes) {
      require(n % 2 == 0, "TrialPlan: sizes must be even (got " + std::to_string(n) + ")");
      require(n >= 2 && n <= 1'000'000,
              "TrialPlan: sizes must lie in [2, 1000000] (got " + std::to_string(n) + ")");
    }
    require(trials_per_size >= 1, "TrialPlan: trials_per_size must be >= 1");
    require(key_universe_factor >= 2, "TrialPlan: key_universe_factor must be >= 2");
  }
};

struct TrialRecord {
  std::int64_t n = 0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  MergeStats stats;
};

/// Merges one generated input and checks the result against the sorted
/// input multiset and the stability predicate before returning the counts.
inline MergeStats run_verified_merge(const MergeInput& in,
                                     const MergeOptions& options) {
  std::vector<Element> a = in.concatenated();
  std::vector<Element> expected = a;
  std::sort(expected.begin(), expected.end(), full_less);
  MergeStats stats = right_going_merge(a, options);
  if (!verify_sorted_stable(a))
    throw VerificationError("merge output is not sorted and stable");
  std::vector<Element> got = a;
  std::sort(got.begin(), got.end(), full_less);
  if (got != expected)
    throw VerificationError("merge output is not a permutation of its input");
  return stats;
}

/// Every (N, trial) of the plan, ordered by N (as listed) then trial.
inline std::vector<TrialRecord> run_trials(const TrialPlan& plan) {
  plan.validate();
  std::vector<TrialRecord> records;
  for (auto n : plan.sizes)
    for (std::int64_t t = 0; t < plan.trials_per_size; ++t)
      records.push_back({n, t, trial_seed(plan.base_seed, std::uint64_t(n), std::uint64_t(t)), {}});
  parallel_for(records.size(), [&](std::size_t idx) {
    TrialRecord& rec = records[idx];
    const MergeInput in = gen_input(rec.n, rec.seed, plan.key_universe_factor);
    rec.stats = run_verified_merge(in, plan.merge_options);
  });
  return records;
}

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t moves = 0;
  std::uint64_t comparisons = 0;
  double moves_per_n = 0.0;
  double comparisons_per_n = 0.0;
};

inline std::vector<BenchRow> bench_rows(const std::vector<TrialRecord>& records) {
  std::vector<BenchRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    const double n = double(r.n);
    rows.push_back({r.n, r.trial, r.seed, r.stats.moves, r.stats.comparisons,
                    double(r.stats.moves) / n, double(r.stats.comparisons) / n});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return a.n != b.n ? a.n < b.n : a.trial < b.trial;
  });
  return rows;
}

inline std::vector<BenchRow> run_bench(const TrialPlan& plan) {
  return bench_rows(run_trials(plan));
}

struct SizeSummary {
  std::int64_t n = 0;
  double mean_moves_per_n = 0.0;
  double mean_comparisons_per_n = 0.0;
};

/// Per-N means of the bench rows, ascending in N.
inline std::vector<SizeSummary> summarize(const std::vector<BenchRow>& rows) {
  std::map<std::int64_t, std::pair<SizeSummary, int>> acc;
  for (const auto& r : rows) {
    auto& [s, count] = acc[r.n];
    s.n = r.n;
    s.mean_moves_per_n += r.moves_per_n;
    s.mean_comparisons_per_n += r.comparisons_per_n;
    ++count;
  }
  std::vector<SizeSummary> out;
  for (auto& [n, entry] : acc) {
    auto [s, count] = entry;
    s.mean_moves_per_n /= count;
    s.mean_comparisons_per_n /= count;
    out.push_back(s);
  }
  return out;
}

using PHistogram = std::map<std::size_t, double>;  // |P| -> mean frequency

/// Mean per-trial frequency of each |P| at rotation time, for one N.
inline PHistogram p_histogram(const std::vector<TrialRecord>& records, std::int64_t n) {
  PHistogram hist;
  int trials = 0;
  for (const auto& r : records) {
    if (r.n != n) continue;
    ++trials;
    for (auto [p, f] : r.stats.p_hist) hist[p] += double(f);
  }
  require(trials > 0, "p_histogram: no trials recorded for N=" + std::to_string(n));
  for (auto& [p, f] : hist) f /= trials;
  return hist;
}

inline PHistogram p_histogram(std::int64_t n, std::int64_t trials,
                              std::uint64_t base_seed,
                              std::int64_t key_universe_factor = 4,
                              bool include_tail_rotation = true) {
  TrialPlan plan;
  plan.sizes = {n};
  plan.trials_per_size = trials;
  plan.base_seed = base_seed;
  plan.key_universe_factor = key_universe_factor;
  plan.merge_options.record_tail_rotation = include_tail_rotation;
  return p_histogram(run_trials(plan), n);
}

/// Monte Carlo estimate of P(X_(n-k) > Y_(n)).
inline double mc_prob_cross(const SampleModel& model, std::int64_t n, std::int64_t k,
                            std::int64_t samples, std::uint64_t seed) {
  model.validate();
  require(k >= 0 && n - k >= 1 && n <= model.N,
          "mc_prob_cross: requires 0 <= k, n - k >= 1 and n <= N");
  require(samples >= 1, "mc_prob_cross: samples must be >= 1");
  SplitMix64 rng(seed);
  std::vector<std::int64_t> x(static_cast<std::size_t>(model.N));
  std::vector<std::int64_t> y(x.size());
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = rng.uniform_key(model.M);
    for (auto& v : y) v = rng.uniform_key(model.M);
    auto xk = x.begin() + (n - k - 1);
    auto yn = y.begin() + (n - 1);
    std::nth_element(x.begin(), xk, x.end());
    std::nth_element(y.begin(), yn, y.end());
    if (*xk > *yn) ++hits;
  }
  return double(hits) / double(samples);
}

struct DriftBucket {
  int decile = 1;
  std::size_t p_length = 0;
  std::uint64_t frequency = 0;
  double empirical_prob = 0.0;
  double lemma_bound = 1.0;
};

/// Buckets every recorded rotation by loop progress (its ordinal among the
/// trial's rotations, in tenths) and by |P|, next to the bound 1/2^(p-1)
/// that assumes P and Sh stay i.i.d. throughout the merge.
inline std::vector<DriftBucket> drift_buckets(const std::vector<TrialRecord>& records) {
  std::map<std::pair<int, std::size_t>, std::uint64_t> freq;
  std::map<int, std::uint64_t> per_decile;
  for (const auto& r : records) {
    const auto& trace = r.stats.rotation_trace;
    const std::size_t total = trace.size();
    for (std::size_t o = 0; o < total; ++o) {
      const int decile = static_cast<int>(10 * o / total) + 1;
      ++freq[{decile, trace[o].p_length}];
      ++per_decile[decile];
    }
  }
  std::vector<DriftBucket> out;
  for (const auto& [key, f] : freq) {
    const auto [decile, p] = key;
    out.push_back({decile, p, f, double(f) / double(per_decile[decile]),
                   std::ldexp(1.0, -static_cast<int>(p) + 1)});
  }
  return out;
}

inline std::vector<DriftBucket> drift_experiment(std::int64_t n, std::int64_t trials,
                                                 std::uint64_t base_seed,
                                                 std::int64_t key_universe_factor = 4,
                                                 bool include_tail_rotation = true) {
  TrialPlan plan;
  plan.sizes = {n};
  plan.trials_per_size = trials;
  plan.base_seed = base_seed;
  plan.key_universe_factor = key_universe_factor;
  plan.merge_options.record_tail_rotation = include_tail_rotation;
  return drift_buckets(run_trials(plan));
}

/// Frequency-weighted mean |P| of one decile.
inline double drift_mean_p(const std::vector<DriftBucket>& buckets, int decile) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& b : buckets) {
    if (b.decile != decile) continue;
    weighted += double(b.p_length) * double(b.frequency);
    total += double(b.frequency);
  }
  return total > 0 ? weighted / total : 0.0;
}

/// Which order-statistic rank to evaluate for a given N.
struct RankRule {
  enum class Kind { last, half, fixed };
  Kind kind = Kind::last;
  std::int64_t value = 0;

  std::int64_t resolve(std::int64_t n) const {
    switch (kind) {
      case Kind::last: return n;
      case Kind::half: return std::max<std::int64_t>(1, n / 2);
      case Kind::fixed: return value;
    }
    return n;
  }
};

/// prob_cross over sizes x offsets. Cells with n - k < 1 are skipped.
inline std::vector<ProbCell> prob_table(const std::vector<std::int64_t>& sizes,
                                        std::int64_t key_universe_factor,
                                        const RankRule& rank,
                                        const std::vector<std::int64_t>& offsets) {
  std::vector<ProbCell> cells;
  for (auto n_total : sizes) {
    const SampleModel model = SampleModel::with_factor(n_total, key_universe_factor);
    const std::int64_t n = rank.resolve(n_total);
    for (auto k : offsets) {
      if (n - k < 1) continue;
      cells.push_back({model.N, model.M, n, k, prob_cross(model, n, k)});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const ProbCell& a, const ProbCell& b) {
    return a.N != b.N ? a.N < b.N : a.k < b.k;
  });
  return cells;
}

}  // namespace shuffle_merge
