#pragma once

// Ground-truth implementations used by the test suites and `selftest`:
// a buffered two-finger stable merge and exact rational combinatorics.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shuffle_merge/element.hpp"
#include "shuffle_merge/errors.hpp"

namespace shuffle_merge::oracle {

using BigInt = boost::multiprecision::cpp_int;

/// Stable merge into a fresh buffer. On equal keys the left element wins.
inline std::vector<Element> stable_merge_reference(
    std::span<const Element> left, std::span<const Element> right) {
  auto sorted = [](std::span<const Element> s) {
    for (std::size_t q = 1; q < s.size(); ++q) {
      if (s[q].key < s[q - 1].key) return false;
      if (s[q].key == s[q - 1].key && s[q].origin_index <= s[q - 1].origin_index)
        return false;
    }
    return true;
  };
  require(sorted(left) && sorted(right),
          "stable_merge_reference: inputs must be sorted by key, then origin_index");

  std::vector<Element> out;
  out.reserve(left.size() + right.size());
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < left.size() && b < right.size()) {
    if (right[b].key < left[a].key)
      out.push_back(right[b++]);
    else
      out.push_back(left[a++]);
  }
  out.insert(out.end(), left.begin() + a, left.end());
  out.insert(out.end(), right.begin() + b, right.end());
  return out;
}

inline constexpr int kMaxBinomial = 64;

/// C(a, b) exactly, from a memoised Pascal triangle. 0 <= b <= a <= 64.
inline const BigInt& binomial_exact(int a, int b) {
  require(a >= 0 && a <= kMaxBinomial && b >= 0 && b <= a,
          "binomial_exact: requires 0 <= b <= a <= 64");
  static const auto triangle = [] {
    std::vector<std::vector<BigInt>> rows(kMaxBinomial + 1);
    for (int r = 0; r <= kMaxBinomial; ++r) {
      rows[r].assign(r + 1, BigInt(1));
      for (int c = 1; c < r; ++c) rows[r][c] = rows[r - 1][c - 1] + rows[r - 1][c];
    }
    return rows;
  }();
  return triangle[a][b];
}

/// Non-negative rational in lowest terms.
class ExactRatio {
 public:
  ExactRatio(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    require(den_ > 0, "ExactRatio: denominator must be positive");
    require(num_ >= 0, "ExactRatio: numerator must be non-negative");
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<=(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }
  friend bool operator<(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  std::string str() const { return num_.str() + "/" + den_.str(); }

 private:
  BigInt num_;
  BigInt den_;
};

/// 1 / 2^e.
inline ExactRatio inverse_power_of_two(unsigned e) {
  return ExactRatio(BigInt(1), BigInt(1) << e);
}

/// Scan-length probability: C(n+m-r-1, n-1) / C(n+m, n), n >= m >= r >= 1.
inline ExactRatio lemma1_exact(int n, int m, int r) {
  require(r >= 1 && m >= r && n >= m, "lemma1_exact: requires n >= m >= r >= 1");
  return ExactRatio(binomial_exact(n + m - r - 1, n - 1), binomial_exact(n + m, n));
}

/// P-length probability: C(m+n-p, n) / C(m+n, n), |m-n| <= 1, 1 <= p <= m.
inline ExactRatio lemma2_exact(int m, int n, int p) {
  require(n >= 0 && m - n <= 1 && n - m <= 1 && p >= 1 && p <= m,
          "lemma2_exact: requires |m - n| <= 1 and 1 <= p <= m");
  return ExactRatio(binomial_exact(m + n - p, n), binomial_exact(m + n, n));
}

enum class LemmaKind { lemma1, lemma2 };

/// lemma1: (a, b, c) = (n, m, r); lemma2: (a, b, c) = (m, n, p).
inline ExactRatio lemma_ratio_exact(LemmaKind kind, int a, int b, int c) {
  return kind == LemmaKind::lemma1 ? lemma1_exact(a, b, c) : lemma2_exact(a, b, c);
}

}  // namespace shuffle_merge::oracle
