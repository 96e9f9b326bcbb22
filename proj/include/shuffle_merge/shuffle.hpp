#pragma once

/**
 * In-place data-movement primitives used by the shuffle merge:
 *
 *  - in_shuffle:  [L1..Ln R1..Rn] -> [L1 R1 L2 R2 .. Ln Rn]
 *  - un_shuffle:  the inverse permutation (odd positions first)
 *  - rotate_right: circular shift by triple reversal
 *
 * All three use O(1) auxiliary space and report every assignment into the
 * array to a MoveSink. Holding one element in a local while following a
 * cycle is not a move; a swap is two moves.
 *
 * The shuffle is the cycle-leader construction: the largest prefix of size
 * 3^k - 1 is a union of cycles that start at 1, 3, 9, ..., 3^(k-1), so it can
 * be permuted directly. The remainder is rotated out of the way and handled
 * the same way.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "shuffle_merge/errors.hpp"

namespace shuffle_merge {

struct MoveSink {
  std::uint64_t moves = 0;

  void add(std::uint64_t n = 1) { moves += n; }
};

namespace detail {

// h such that 2h = 3^k - 1 is the largest such value with 2h <= 2m.
inline std::size_t cycle_block_half(std::size_t m) {
  std::size_t power = 1;
  while (power * 3 <= 2 * m + 1) power *= 3;
  return (power - 1) / 2;
}

template <class T>
void reverse(std::span<T> s, MoveSink& sink) {
  if (s.size() < 2) return;
  std::size_t lo = 0;
  std::size_t hi = s.size() - 1;
  while (lo < hi) {
    using std::swap;
    swap(s[lo], s[hi]);
    sink.add(2);
    ++lo;
    --hi;
  }
}

// Moves the first `shift` elements to the back.
template <class T>
void rotate_left(std::span<T> s, std::size_t shift, MoveSink& sink) {
  if (s.empty()) return;
  shift %= s.size();
  if (shift == 0) return;
  reverse(s.first(shift), sink);
  reverse(s.subspan(shift), sink);
  reverse(s, sink);
}

// Classic in-shuffle (second half first) of a block whose length is 3^k - 1:
// 1-indexed position p moves to 2p mod 3^k.
template <class T>
void shuffle_cycles(std::span<T> s, MoveSink& sink) {
  const std::size_t modulus = s.size() + 1;
  for (std::size_t leader = 1; leader < modulus; leader *= 3) {
    T held = std::move(s[leader - 1]);
    std::size_t p = leader;
    do {
      p = (2 * p) % modulus;
      using std::swap;
      swap(held, s[p - 1]);
      sink.add();
    } while (p != leader);
  }
}

// Inverse of shuffle_cycles: position p moves to p * 2^-1 mod 3^k.
template <class T>
void unshuffle_cycles(std::span<T> s, MoveSink& sink) {
  const std::size_t modulus = s.size() + 1;
  const std::size_t half_inverse = (modulus + 1) / 2;
  for (std::size_t leader = 1; leader < modulus; leader *= 3) {
    T held = std::move(s[leader - 1]);
    std::size_t p = leader;
    do {
      p = (p * half_inverse) % modulus;
      using std::swap;
      swap(held, s[p - 1]);
      sink.add();
    } while (p != leader);
  }
}

struct ShuffleLevel {
  std::size_t offset;
  std::size_t half;        // m: half-length of the remaining suffix
  std::size_t block_half;  // h: half-length of the cycle block
};

// The level-th step of the iterative decomposition of a length-2m array.
inline ShuffleLevel shuffle_level(std::size_t m, std::size_t level) {
  std::size_t offset = 0;
  for (std::size_t l = 0;; ++l) {
    const std::size_t h = cycle_block_half(m);
    if (l == level) return {offset, m, h};
    offset += 2 * h;
    m -= h;
  }
}

inline std::size_t shuffle_level_count(std::size_t m) {
  std::size_t count = 0;
  while (m > 0) {
    m -= cycle_block_half(m);
    ++count;
  }
  return count;
}

// [A1..Am B1..Bm] -> [B1 A1 B2 A2 .. Bm Am]
template <class T>
void classic_in_shuffle(std::span<T> s, MoveSink& sink) {
  while (s.size() >= 2) {
    const std::size_t m = s.size() / 2;
    const std::size_t h = cycle_block_half(m);
    // Bring B1..Bh next to A1..Ah.
    rotate_left(s.subspan(h, m), m - h, sink);
    shuffle_cycles(s.first(2 * h), sink);
    s = s.subspan(2 * h);
  }
}

template <class T>
void classic_un_shuffle(std::span<T> s, MoveSink& sink) {
  const std::size_t m = s.size() / 2;
  // Undo the levels of classic_in_shuffle last-to-first; the level table is
  // recomputed rather than stored to keep the space constant.
  for (std::size_t level = shuffle_level_count(m); level-- > 0;) {
    const ShuffleLevel lv = shuffle_level(m, level);
    std::span<T> rest = s.subspan(lv.offset);
    unshuffle_cycles(rest.first(2 * lv.block_half), sink);
    rotate_left(rest.subspan(lv.block_half, lv.half), lv.block_half, sink);
  }
}

}  // namespace detail

/// Interleaves the two halves of `seq` in place so that, 1-indexed,
/// new[2t-1] = L[t] and new[2t] = R[t]. The first and last elements are
/// never moved.
template <class T>
void in_shuffle(std::span<T> seq, MoveSink& sink) {
  require(seq.size() % 2 == 0, "in_shuffle: sequence length must be even");
  if (seq.size() <= 2) return;
  detail::classic_in_shuffle(seq.subspan(1, seq.size() - 2), sink);
}

/// Inverse of in_shuffle: odd positions are gathered into the first half,
/// even positions into the second, each keeping its relative order.
template <class T>
void un_shuffle(std::span<T> seq, MoveSink& sink) {
  require(seq.size() % 2 == 0, "un_shuffle: sequence length must be even");
  if (seq.size() <= 2) return;
  detail::classic_un_shuffle(seq.subspan(1, seq.size() - 2), sink);
}

/// Circular right shift by `r`: new[(q + r) mod len] = old[q].
template <class T>
void rotate_right(std::span<T> seq, std::size_t r, MoveSink& sink) {
  require(r <= seq.size(), "rotate_right: shift exceeds sequence length");
  if (r == 0 || r == seq.size()) return;
  detail::reverse(seq, sink);
  detail::reverse(seq.first(r), sink);
  detail::reverse(seq.subspan(r), sink);
}

}  // namespace shuffle_merge
