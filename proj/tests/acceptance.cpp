// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "shuffle_merge/cli.hpp"
#include "shuffle_merge/experiments.hpp"
#include "shuffle_merge/merge_engine.hpp"
#include "shuffle_merge/merge_oracle.hpp"
#include "shuffle_merge/order_stats.hpp"
#include "shuffle_merge/shuffle.hpp"

namespace fs = std::filesystem;
namespace sm = shuffle_merge;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Paper protocol trials, shared by the bench-style criteria.
const std::vector<sm::TrialRecord>& protocol_trials() {
  static const auto records = [] {
    sm::TrialPlan plan;
    plan.sizes = {500, 1000, 2000, 4000, 8000, 16000, 20000};
    plan.trials_per_size = 10;
    plan.base_seed = kSeed;
    return sm::run_trials(plan);
  }();
  return records;
}

std::map<std::int64_t, sm::SizeSummary> protocol_summary() {
  std::map<std::int64_t, sm::SizeSummary> out;
  for (const auto& s : sm::summarize(sm::bench_rows(protocol_trials()))) out[s.n] = s;
  return out;
}

Outcome shuffle_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t len = 2; len <= 256; len += 2) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      sm::SplitMix64 rng(sm::trial_seed(kSeed, len, seed));
      std::vector<std::uint64_t> a(len);
      for (auto& v : a) v = rng.next();
      std::vector<std::uint64_t> expected(len);
      for (std::size_t t = 0; t < len / 2; ++t) {
        expected[2 * t] = a[t];
        expected[2 * t + 1] = a[len / 2 + t];
      }
      auto b = a;
      sm::MoveSink sink;
      sm::in_shuffle(std::span<std::uint64_t>(b), sink);
      if (b != expected) return {false, "in_shuffle differs from oracle at len " + std::to_string(len)};
      if (b.front() != a.front() || b.back() != a.back())
        return {false, "endpoint moved at len " + std::to_string(len)};
      sm::un_shuffle(std::span<std::uint64_t>(b), sink);
      if (b != a) return {false, "round trip failed at len " + std::to_string(len)};
    }
  }
  const double secs = seconds_since(t0);
  return {secs < 5.0, "6400 arrays, " + fmt(secs, 3) + " s (limit 5 s)"};
}

Outcome merge_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  sm::SplitMix64 rng(sm::mix64(kSeed));
  for (int c = 0; c < 1000; ++c) {
    const std::int64_t n = 2 * static_cast<std::int64_t>(1 + rng.bounded(128));
    const std::int64_t factor = c % 2 == 0 ? 1 : 4;
    const auto in = sm::gen_input(n, rng.next(), factor);
    auto a = in.concatenated();
    sm::MergeOptions opts;
    opts.check_invariants = true;
    sm::right_going_merge(a, opts);
    if (a != sm::oracle::stable_merge_reference(in.left, in.right))
      return {false, "mismatch in case " + std::to_string(c) + " (N=" + std::to_string(n) + ")"};
  }
  const double secs = seconds_since(t0);
  return {secs < 30.0, "1000 cases, " + fmt(secs, 3) + " s (limit 30 s)"};
}

Outcome comparisons_per_element() {
  const auto summary = protocol_summary();
  bool ok = true;
  std::string detail;
  for (std::int64_t n : {500, 2000, 8000, 20000}) {
    const double c = summary.at(n).mean_comparisons_per_n;
    ok = ok && c >= 0.75 && c <= 1.25;
    detail += "N=" + std::to_string(n) + ":" + fmt(c) + " ";
  }
  return {ok, detail + "(band [0.75, 1.25])"};
}

Outcome superlinear_moves() {
  const auto summary = protocol_summary();
  const std::vector<std::int64_t> sizes{500, 1000, 2000, 4000, 8000, 16000};
  std::vector<double> xs, ys;
  for (auto n : sizes) {
    xs.push_back(double(n));
    ys.push_back(summary.at(n).mean_moves_per_n);
  }
  bool increasing = true;
  for (std::size_t q = 1; q < ys.size(); ++q) increasing = increasing && ys[q] > ys[q - 1];

  const double k = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    mx += xs[q] / k;
    my += ys[q] / k;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    sxy += (xs[q] - mx) * (ys[q] - my);
    sxx += (xs[q] - mx) * (xs[q] - mx);
    syy += (ys[q] - my) * (ys[q] - my);
  }
  const double r2 = sxy * sxy / (sxx * syy);
  const double ratio = summary.at(16000).mean_moves_per_n / summary.at(2000).mean_moves_per_n;

  bool bounded = true;
  for (const auto& r : protocol_trials())
    bounded = bounded && double(r.stats.moves) <= 10.0 * double(r.n) * double(r.n);

  std::string detail = "moves/N:";
  for (std::size_t q = 0; q < xs.size(); ++q) detail += " " + fmt(ys[q]);
  detail += std::string("; increasing=") + (increasing ? "yes" : "NO") + "; R^2=" + fmt(r2) +
            " (>= 0.9); ratio 16000/2000=" + fmt(ratio) + " (>= 3); moves <= 10 N^2: " +
            (bounded ? "yes" : "NO");
  return {increasing && r2 >= 0.9 && ratio >= 3.0 && bounded, detail};
}

Outcome p_histogram_growth() {
  const auto small = sm::p_histogram(protocol_trials(), 4000);
  const auto large = sm::p_histogram(protocol_trials(), 16000);
  const double f_small = small.count(2) ? small.at(2) : 0.0;
  const double f_large = large.count(2) ? large.at(2) : 0.0;
  return {f_large > f_small,
          "mean count of |P|=2: N=4000 " + fmt(f_small) + ", N=16000 " + fmt(f_large)};
}

Outcome order_statistics() {
  double worst_min = 0, worst_top = 0;
  for (std::int64_t n_samples : {1, 2, 3, 5, 10, 25, 50, 100}) {
    const auto m = sm::SampleModel::with_factor(n_samples);
    for (std::int64_t x = 0; x <= m.M; ++x)
      worst_min = std::max(worst_min, std::abs(sm::order_stat_cdf(m, 1, x) - sm::min_cdf(m, x)));
    for (std::int64_t n = 1; n <= n_samples; ++n)
      worst_top = std::max(worst_top, std::abs(sm::order_stat_cdf(m, n, m.M) - 1.0));
  }
  const double tiny = sm::prob_cross({1, 4}, 1, 0);
  double worst_mc = 0;
  for (std::int64_t n : {50, 200}) {
    const auto m = sm::SampleModel::with_factor(n);
    for (std::int64_t k : {0, 1, 2, 4}) {
      const double exact = sm::prob_cross(m, n, k);
      const double est = sm::mc_prob_cross(m, n, k, 200000, sm::trial_seed(kSeed, n, k));
      worst_mc = std::max(worst_mc, std::abs(exact - est));
    }
  }
  const bool ok = worst_min <= 1e-12 && worst_top <= 1e-12 &&
                  std::abs(tiny - 0.375) <= 1e-12 && worst_mc <= 0.01;
  return {ok, "max|G1-min|=" + fmt(worst_min) + ", max|G_n(M)-1|=" + fmt(worst_top) +
                  ", cross(1,4,1,0)=" + fmt(tiny, 15) + ", max|exact-MC|=" + fmt(worst_mc) +
                  " (<= 0.01)"};
}

Outcome monotonicity() {
  const auto m200 = sm::SampleModel::with_factor(200);
  bool in_k = true;
  double prev = 2.0;
  std::string detail = "N=200 k=0..8:";
  for (std::int64_t k = 0; k <= 8; ++k) {
    const double v = sm::prob_cross(m200, 200, k);
    in_k = in_k && v <= prev;
    prev = v;
    detail += " " + fmt(v);
  }
  bool in_n = true;
  for (std::int64_t k : {1, 2, 4}) {
    detail += "; k=" + std::to_string(k) + " N=50..400:";
    double last = -1.0;
    for (std::int64_t n : {50, 100, 200, 400}) {
      const double v = sm::prob_cross(sm::SampleModel::with_factor(n), n, k);
      in_n = in_n && v > last;
      last = v;
      detail += " " + fmt(v);
    }
  }
  // Reported only: the same N sweep at n = N/2.
  detail += "; n=N/2 k=1 N=50..400:";
  for (std::int64_t n : {50, 100, 200, 400})
    detail += " " + fmt(sm::prob_cross(sm::SampleModel::with_factor(n), n / 2, 1));
  return {in_k && in_n, detail};
}

Outcome lemma_formulas() {
  namespace oracle = sm::oracle;
  int checked = 0;
  double worst = 0;
  bool bounds = true;
  for (int n = 1; n <= 24; ++n)
    for (int m = 1; m <= n && n + m <= 24; ++m)
      for (int r = 1; r <= m; ++r) {
        const auto exact = oracle::lemma1_exact(n, m, r);
        const double e = exact.to_double();
        worst = std::max(worst, std::abs(sm::lemma1_prob(n, m, r) - e) / e);
        bounds = bounds && exact <= oracle::inverse_power_of_two(unsigned(r));
        ++checked;
      }
  for (int m = 1; m <= 24; ++m)
    for (int n = std::max(0, m - 1); n <= m + 1 && m + n <= 24; ++n)
      for (int p = 1; p <= m; ++p) {
        const auto exact = oracle::lemma2_exact(m, n, p);
        const double e = exact.to_double();
        worst = std::max(worst, std::abs(sm::lemma2_prob(m, n, p) - e) / e);
        bounds = bounds && exact <= oracle::inverse_power_of_two(unsigned(p - 1));
        ++checked;
      }
  return {worst <= 1e-14 && bounds, std::to_string(checked) + " parameter sets, max rel err " +
                                        fmt(worst) + ", bounds " + (bounds ? "hold" : "VIOLATED")};
}

Outcome drift_refutation() {
  const auto buckets = sm::drift_experiment(10000, 20, kSeed);
  const double first = sm::drift_mean_p(buckets, 1);
  const double last = sm::drift_mean_p(buckets, 10);
  bool early_near_bound = true;
  std::map<int, int> above;
  for (const auto& b : buckets) {
    if (b.empirical_prob > b.lemma_bound) ++above[b.decile];
    if (b.decile == 1 && b.p_length <= 3)
      early_near_bound = early_near_bound && b.empirical_prob <= 1.5 * b.lemma_bound;
  }
  std::string detail = "mean |P| decile1=" + fmt(first) + " decile10=" + fmt(last) +
                       "; lengths above 1/2^(p-1) per decile:";
  for (int d = 1; d <= 10; ++d) detail += " " + std::to_string(above[d]);
  detail += std::string("; decile-1 p<=3 within 1.5x bound: ") + (early_near_bound ? "yes" : "NO");
  return {last > first && early_near_bound, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome reproduction_run() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / "shuffle_merge_acceptance";
  fs::remove_all(root);
  std::vector<std::string> names{"bench.csv", "bench.svg", "phist.csv", "phist.svg"};
  for (const char* run : {"a", "b"}) {
    const std::string out = (root / run).string();
    for (const char* cmd : {"bench", "phist"}) {
      std::ostringstream sink_out, sink_err;
      std::istringstream no_input;
      const int code = sm::cli::parse_and_dispatch(
          {"shuffle_merge", cmd, "--sizes", "500,1000,2000,4000,8000,16000,20000", "--trials",
           "10", "--seed", std::to_string(kSeed), "--out", out, "--plot", "--check-invariants"},
          sink_out, sink_err, no_input);
      if (code != 0) return {false, std::string(cmd) + " exited " + std::to_string(code) + ": " + sink_err.str()};
    }
  }
  bool identical = true;
  for (const auto& name : names) {
    const auto a = slurp(root / "a" / name);
    identical = identical && !a.empty() && a == slurp(root / "b" / name);
  }
  fs::remove_all(root);
  const double secs = seconds_since(t0);
  return {identical && secs <= 600.0,
          std::string("two full runs with invariant checks, outputs ") +
              (identical ? "byte-identical" : "DIFFER") + ", " + fmt(secs, 4) + " s (limit 600 s)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 shuffle correctness", shuffle_correctness},
      {"AC2 merge correctness and stability", merge_correctness},
      {"AC3 comparisons per element", comparisons_per_element},
      {"AC4 super-linear moves", superlinear_moves},
      {"AC5 P-histogram growth", p_histogram_growth},
      {"AC6 order statistics", order_statistics},
      {"AC7 monotonicity", monotonicity},
      {"AC8 lemma formulas", lemma_formulas},
      {"AC9 drift refutation", drift_refutation},
      {"AC10 reproduction run", reproduction_run},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
