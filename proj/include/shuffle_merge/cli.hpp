#pragma once

// Command-line front end. Exit codes: 0 success, 1 contract or verification
// failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shuffle_merge/csv.hpp"
#include "shuffle_merge/errors.hpp"
#include "shuffle_merge/experiments.hpp"
#include "shuffle_merge/merge_engine.hpp"
#include "shuffle_merge/order_stats.hpp"
#include "shuffle_merge/plot.hpp"
#include "shuffle_merge/selftest.hpp"

namespace shuffle_merge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  std::vector<std::int64_t> sizes;
  std::int64_t trials = 10;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool plot = false;
  bool include_tail_rotation = true;
  bool check_invariants = false;
  std::int64_t factor = 4;
  std::optional<std::int64_t> single_n;
  std::string rank = "last";
  std::vector<std::int64_t> offsets;
  std::int64_t samples = 200000;
  std::vector<std::string> merge_files;
  bool merge_stats = false;
};

namespace detail {

inline std::vector<std::int64_t> parse_key_lines(std::istream& is,
                                                 const std::string& source,
                                                 bool stop_at_blank) {
  std::vector<std::int64_t> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      if (stop_at_blank && !keys.empty()) break;
      continue;
    }
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size())
        throw UsageError(source + ":" + std::to_string(line_no) +
                         ": not an integer: '" + token + "'");
      keys.push_back(v);
    }
  }
  return keys;
}

inline std::vector<Element> tagged(const std::vector<std::int64_t>& keys, Origin o) {
  std::vector<Element> out(keys.size());
  for (std::size_t q = 0; q < keys.size(); ++q)
    out[q] = {keys[q], o, static_cast<std::uint32_t>(q)};
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot write " + path.string());
  f << body;
  if (!f) throw UsageError("failed writing " + path.string());
}

inline std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec || !std::filesystem::is_directory(p))
    throw UsageError("output directory is not usable: " + dir);
  return p;
}

inline void check_sizes(const std::vector<std::int64_t>& sizes) {
  for (auto n : sizes)
    if (n < 2 || n % 2 != 0)
      throw UsageError("--sizes: every size must be even and >= 2 (got " +
                       std::to_string(n) + ")");
}

inline RankRule parse_rank(const std::string& s) {
  if (s == "last") return {RankRule::Kind::last, 0};
  if (s == "half") return {RankRule::Kind::half, 0};
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1)
    throw UsageError("--rank: expected 'last', 'half' or a positive integer, got '" + s + "'");
  return {RankRule::Kind::fixed, v};
}

inline TrialPlan plan_from(const RunConfig& cfg) {
  TrialPlan plan;
  plan.sizes = cfg.sizes;
  plan.trials_per_size = cfg.trials;
  plan.base_seed = cfg.seed;
  plan.key_universe_factor = cfg.factor;
  plan.merge_options.record_tail_rotation = cfg.include_tail_rotation;
  plan.merge_options.check_invariants = cfg.check_invariants;
  return plan;
}

inline int cmd_merge(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                     std::istream& in) {
  std::vector<std::int64_t> left_keys, right_keys;
  if (cfg.merge_files.size() == 2) {
    for (int side = 0; side < 2; ++side) {
      std::ifstream f(cfg.merge_files[side]);
      if (!f) throw UsageError("cannot read " + cfg.merge_files[side]);
      (side == 0 ? left_keys : right_keys) =
          parse_key_lines(f, cfg.merge_files[side], false);
    }
  } else if (cfg.merge_files.empty()) {
    left_keys = parse_key_lines(in, "<stdin>", true);
    right_keys = parse_key_lines(in, "<stdin>", false);
  } else {
    throw UsageError("merge: expected two input files or none (stdin)");
  }
  require(left_keys.size() == right_keys.size(),
          "merge: both lists must have the same length (got " +
              std::to_string(left_keys.size()) + " and " +
              std::to_string(right_keys.size()) + ")");
  auto sorted = [](const std::vector<std::int64_t>& v) {
    return std::is_sorted(v.begin(), v.end());
  };
  require(sorted(left_keys), "merge: first list is not sorted ascending");
  require(sorted(right_keys), "merge: second list is not sorted ascending");

  std::vector<Element> a = tagged(left_keys, Origin::left);
  const auto right = tagged(right_keys, Origin::right);
  a.insert(a.end(), right.begin(), right.end());
  const MergeStats stats = right_going_merge(a, {cfg.include_tail_rotation, cfg.check_invariants});
  if (!verify_sorted_stable(a)) throw VerificationError("merge output failed verification");
  std::ostringstream body;
  for (const auto& e : a) body << e.key << '\n';
  out << body.str();
  if (cfg.merge_stats)
    err << "moves=" << stats.moves << " setup_moves=" << stats.setup_moves
        << " comparisons=" << stats.comparisons << " rotations=" << stats.rotations
        << '\n';
  return kExitOk;
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_out_dir(cfg.out_dir);
  const auto rows = run_bench(plan_from(cfg));
  std::ostringstream csv_body;
  csv::write_bench(csv_body, rows);
  write_file(dir / "bench.csv", csv_body.str());
  if (cfg.plot) write_file(dir / "bench.svg", plot::plot_bench(rows));
  out << "N,mean_moves_per_n,mean_comparisons_per_n\n";
  for (const auto& s : summarize(rows))
    out << s.n << ',' << csv::format_number(s.mean_moves_per_n) << ','
        << csv::format_number(s.mean_comparisons_per_n) << '\n';
  return kExitOk;
}

inline int cmd_phist(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_out_dir(cfg.out_dir);
  const auto records = run_trials(plan_from(cfg));
  std::map<std::int64_t, PHistogram> by_size;
  for (auto n : cfg.sizes) by_size[n] = p_histogram(records, n);
  std::ostringstream body;
  csv::write_phist(body, by_size);
  write_file(dir / "phist.csv", body.str());
  if (cfg.plot) write_file(dir / "phist.svg", plot::plot_phist(by_size));
  out << "wrote " << (dir / "phist.csv").string() << '\n';
  return kExitOk;
}

inline int cmd_prob(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_out_dir(cfg.out_dir);
  const auto cells = prob_table(cfg.sizes, cfg.factor, parse_rank(cfg.rank), cfg.offsets);
  std::ostringstream body;
  csv::write_prob(body, cells);
  write_file(dir / "prob.csv", body.str());
  if (cfg.plot) write_file(dir / "prob.svg", plot::plot_prob(cells));
  out << body.str();
  return kExitOk;
}

inline int cmd_mc_check(const RunConfig& cfg, std::ostream& out) {
  const RankRule rank = parse_rank(cfg.rank);
  if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
  bool all_ok = true;
  out << "N,n,k,exact,estimate,tolerance,ok\n";
  for (auto n_total : cfg.sizes) {
    const auto model = SampleModel::with_factor(n_total, cfg.factor);
    const std::int64_t n = rank.resolve(n_total);
    for (auto k : cfg.offsets) {
      if (n - k < 1) continue;
      const double exact = prob_cross(model, n, k);
      const std::uint64_t seed = trial_seed(cfg.seed, std::uint64_t(n_total), std::uint64_t(k));
      const double est = mc_prob_cross(model, n, k, cfg.samples, seed);
      const double tol = 4.0 * std::sqrt(est * (1 - est) / double(cfg.samples)) + 0.001;
      const bool ok = std::abs(est - exact) <= tol;
      all_ok = all_ok && ok;
      out << n_total << ',' << n << ',' << k << ',' << csv::format_number(exact) << ','
          << csv::format_number(est) << ',' << csv::format_number(tol) << ','
          << (ok ? "yes" : "NO") << '\n';
    }
  }
  return all_ok ? kExitOk : kExitFailure;
}

inline int cmd_drift(const RunConfig& cfg, std::ostream& out) {
  const auto dir = prepare_out_dir(cfg.out_dir);
  const std::int64_t n = cfg.single_n.value_or(cfg.sizes.empty() ? 10000 : cfg.sizes.front());
  TrialPlan plan = plan_from(cfg);
  plan.sizes = {n};
  const auto buckets = drift_buckets(run_trials(plan));
  std::ostringstream body;
  csv::write_drift(body, n, buckets);
  write_file(dir / "drift.csv", body.str());

  out << "decile,mean_p,lengths_above_bound\n";
  for (int d = 1; d <= 10; ++d) {
    std::string above;
    for (const auto& b : buckets) {
      if (b.decile != d || b.empirical_prob <= b.lemma_bound) continue;
      if (!above.empty()) above += ' ';
      above += std::to_string(b.p_length);
    }
    out << d << ',' << csv::format_number(drift_mean_p(buckets, d)) << ','
        << (above.empty() ? "-" : above) << '\n';
  }
  return kExitOk;
}

inline int cmd_selftest(std::ostream& out) {
  const SelftestReport r = run_selftest(out);
  out << r.passed << " passed, " << r.failed << " failed\n";
  return r.ok() ? kExitOk : kExitFailure;
}

}  // namespace detail

/// Parses `args` (program name first) and runs the selected subcommand.
inline int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err, std::istream& in) {
  RunConfig cfg;
  CLI::App app{"Instrumented perfect-shuffle in-place stable merge", "shuffle_merge"};
  app.require_subcommand(1);

  auto add_sizes = [&](CLI::App* sub, std::vector<std::int64_t> defaults) {
    cfg.sizes = defaults;
    sub->add_option("--sizes", cfg.sizes, "comma-separated list of N values")
        ->delimiter(',');
  };
  auto add_trial_opts = [&](CLI::App* sub) {
    sub->add_option("--trials", cfg.trials, "trials per size")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--factor", cfg.factor, "key universe is 1..factor*N")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
    sub->add_flag("--check-invariants", cfg.check_invariants,
                  "validate the merge state on every loop iteration");
    sub->add_flag("!--exclude-tail", cfg.include_tail_rotation,
                  "leave the final |Sh| = 1 rotation out of P statistics");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_flag("--plot", cfg.plot, "also write an SVG plot");
  };

  const std::vector<std::int64_t> paper_sizes{500, 1000, 2000, 4000, 8000, 16000, 20000};
  std::vector<std::pair<CLI::App*, std::string>> subs;

  auto* merge = app.add_subcommand("merge", "merge two sorted integer lists");
  merge->add_option("files", cfg.merge_files, "two files with one integer per line");
  merge->add_flag("--stats", cfg.merge_stats, "print operation counts to stderr");
  subs.emplace_back(merge, "merge");

  auto* bench = app.add_subcommand("bench", "moves and comparisons per element");
  subs.emplace_back(bench, "bench");
  auto* phist = app.add_subcommand("phist", "histogram of |P| at rotation time");
  subs.emplace_back(phist, "phist");
  auto* prob = app.add_subcommand("prob", "table of P(X_(n-k) > Y_(n))");
  subs.emplace_back(prob, "prob");
  auto* mc = app.add_subcommand("mc-check", "compare the exact table against Monte Carlo");
  subs.emplace_back(mc, "mc-check");
  auto* drift = app.add_subcommand("drift", "|P| distribution by loop progress");
  subs.emplace_back(drift, "drift");
  auto* self = app.add_subcommand("selftest", "oracle-equivalence and invariant sweep");
  subs.emplace_back(self, "selftest");

  // Options are bound per subcommand; defaults are installed once the
  // subcommand is known, so only one set is registered at a time.
  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  const std::string chosen = argv_tail.empty() ? "" : argv_tail.front();
  if (chosen == "bench") {
    add_sizes(bench, paper_sizes);
    add_trial_opts(bench);
    add_out(bench);
  } else if (chosen == "phist") {
    add_sizes(phist, paper_sizes);
    phist->add_option("--n", cfg.single_n, "single N (overrides --sizes)");
    add_trial_opts(phist);
    add_out(phist);
  } else if (chosen == "prob" || chosen == "mc-check") {
    CLI::App* sub = chosen == "prob" ? prob : mc;
    add_sizes(sub, chosen == "prob" ? std::vector<std::int64_t>{50, 100, 200, 400}
                                    : std::vector<std::int64_t>{50, 200});
    cfg.offsets = chosen == "prob" ? std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8}
                                   : std::vector<std::int64_t>{0, 1, 2, 4};
    sub->add_option("--n", cfg.single_n, "single N (overrides --sizes)");
    sub->add_option("--rank", cfg.rank, "order-statistic rank: last, half or an integer");
    sub->add_option("--k", cfg.offsets, "comma-separated rank offsets")->delimiter(',');
    sub->add_option("--factor", cfg.factor, "key universe is 1..factor*N")
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 20));
    if (chosen == "prob") {
      add_out(prob);
    } else {
      mc->add_option("--samples", cfg.samples, "Monte Carlo sample pairs");
      mc->add_option("--seed", cfg.seed, "base seed");
    }
  } else if (chosen == "drift") {
    cfg.trials = 20;
    drift->add_option("--n", cfg.single_n, "N (default 10000)");
    add_sizes(drift, {});
    add_trial_opts(drift);
    drift->add_option("--out", cfg.out_dir, "output directory");
  }

  try {
    std::vector<std::string> reversed(argv_tail.rbegin(), argv_tail.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& [sub, name] : subs)
    if (sub->parsed()) cfg.subcommand = name;

  try {
    if (cfg.single_n) cfg.sizes = {*cfg.single_n};
    if (cfg.subcommand != "merge" && cfg.subcommand != "selftest") detail::check_sizes(cfg.sizes);
    if (cfg.subcommand == "merge") return detail::cmd_merge(cfg, out, err, in);
    if (cfg.subcommand == "bench") return detail::cmd_bench(cfg, out);
    if (cfg.subcommand == "phist") return detail::cmd_phist(cfg, out);
    if (cfg.subcommand == "prob") return detail::cmd_prob(cfg, out);
    if (cfg.subcommand == "mc-check") return detail::cmd_mc_check(cfg, out);
    if (cfg.subcommand == "drift") return detail::cmd_drift(cfg, out);
    if (cfg.subcommand == "selftest") return detail::cmd_selftest(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return kExitFailure;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "error: unknown subcommand\n";
  return kExitUsage;
}

inline int parse_and_dispatch(int argc, const char* const* argv) {
  return parse_and_dispatch(std::vector<std::string>(argv, argv + argc), std::cout,
                            std::cerr, std::cin);
}

}  // namespace shuffle_merge::cli
