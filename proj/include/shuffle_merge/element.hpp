#pragma once

#include <cstdint>
#include <ostream>

namespace shuffle_merge {

enum class Origin : std::uint8_t { left = 0, right = 1 };

constexpr Origin complement(Origin o) {
  return o == Origin::left ? Origin::right : Origin::left;
}

// A mergeable item. The provenance tag is carried along so stability can be
// checked after the fact; it takes no part in ordering beyond the origin
// tie-break.
struct Element {
  std::int64_t key = 0;
  Origin origin = Origin::left;
  std::uint32_t origin_index = 0;

  friend constexpr bool operator==(const Element&, const Element&) = default;
};

// Merge order: (key, origin) with left < right. Elements from different
// lists never compare equal under this order.
constexpr bool merge_less(const Element& a, const Element& b) {
  if (a.key != b.key) return a.key < b.key;
  return a.origin < b.origin;
}

// Total order including origin_index; used for multiset comparisons.
constexpr bool full_less(const Element& a, const Element& b) {
  if (a.key != b.key) return a.key < b.key;
  if (a.origin != b.origin) return a.origin < b.origin;
  return a.origin_index < b.origin_index;
}

inline std::ostream& operator<<(std::ostream& os, const Element& e) {
  return os << e.key << (e.origin == Origin::left ? 'L' : 'R')
            << e.origin_index;
}

}  // namespace shuffle_merge
