#pragma once

// Helpers shared by the unit suites.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "shuffle_merge/element.hpp"

namespace shuffle_merge::testing {

// Left list keys followed by right list keys, tagged with provenance.
inline std::vector<Element> make_input(const std::vector<std::int64_t>& left,
                                       const std::vector<std::int64_t>& right) {
  std::vector<Element> a;
  for (std::size_t q = 0; q < left.size(); ++q)
    a.push_back({left[q], Origin::left, static_cast<std::uint32_t>(q)});
  for (std::size_t q = 0; q < right.size(); ++q)
    a.push_back({right[q], Origin::right, static_cast<std::uint32_t>(q)});
  return a;
}

inline std::vector<std::int64_t> keys_of(const std::vector<Element>& a) {
  std::vector<std::int64_t> k(a.size());
  std::transform(a.begin(), a.end(), k.begin(), [](const Element& e) { return e.key; });
  return k;
}

// Buffer-based interleave: out[2t] = in[t], out[2t+1] = in[n+t].
template <class T>
std::vector<T> interleave_oracle(const std::vector<T>& in) {
  const std::size_t n = in.size() / 2;
  std::vector<T> out(in.size());
  for (std::size_t t = 0; t < n; ++t) {
    out[2 * t] = in[t];
    out[2 * t + 1] = in[n + t];
  }
  return out;
}

// Buffer-based de-interleave: even offsets first, then odd offsets.
template <class T>
std::vector<T> deinterleave_oracle(const std::vector<T>& in) {
  std::vector<T> out;
  for (std::size_t q = 0; q < in.size(); q += 2) out.push_back(in[q]);
  for (std::size_t q = 1; q < in.size(); q += 2) out.push_back(in[q]);
  return out;
}

}  // namespace shuffle_merge::testing
