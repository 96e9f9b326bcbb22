#pragma once

// CSV serialisation of experiment results. Headers are fixed; floating-point
// values carry at most 12 significant digits.

#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "shuffle_merge/experiments.hpp"
#include "shuffle_merge/order_stats.hpp"

namespace shuffle_merge::csv {

inline constexpr const char* kBenchHeader =
    "N,trial,seed,moves,comparisons,moves_per_n,comparisons_per_n";
inline constexpr const char* kPHistHeader = "N,p_length,mean_frequency";
inline constexpr const char* kProbHeader = "N,M,n,k,probability";
inline constexpr const char* kDriftHeader =
    "N,decile,p_length,frequency,empirical_prob,lemma_bound";

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_bench(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.trial << ',' << r.seed << ',' << r.moves << ','
       << r.comparisons << ',' << format_number(r.moves_per_n) << ','
       << format_number(r.comparisons_per_n) << '\n';
  }
}

inline void write_phist(std::ostream& os,
                        const std::map<std::int64_t, PHistogram>& by_size) {
  os << kPHistHeader << '\n';
  for (const auto& [n, hist] : by_size)
    for (const auto& [p, f] : hist)
      os << n << ',' << p << ',' << format_number(f) << '\n';
}

inline void write_prob(std::ostream& os, const std::vector<ProbCell>& cells) {
  os << kProbHeader << '\n';
  for (const auto& c : cells)
    os << c.N << ',' << c.M << ',' << c.n << ',' << c.k << ','
       << format_number(c.value) << '\n';
}

inline void write_drift(std::ostream& os, std::int64_t n,
                        const std::vector<DriftBucket>& buckets) {
  os << kDriftHeader << '\n';
  for (const auto& b : buckets)
    os << n << ',' << b.decile << ',' << b.p_length << ',' << b.frequency << ','
       << format_number(b.empirical_prob) << ',' << format_number(b.lemma_bound)
       << '\n';
}

}  // namespace shuffle_merge::csv
