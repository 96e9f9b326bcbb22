#pragma once

/**
 * Right-going shuffle merge of two equal-length sorted lists stored
 * back to back in one array.
 *
 * The array is first perfectly shuffled, making it 2-ordered. The loop then
 * maintains three adjacent segments (0-indexed here):
 *
 *     S = a[0, i)    sorted, every element <= everything after it
 *     P = a[i, j)    non-empty, sorted, all from one origin (p_type)
 *     Sh = a[j, N)   2-ordered remainder, Sh[0] from the other origin
 *
 * and each iteration either retires P's head into S, rotates the final
 * element of Sh in front of P, or scans a prefix D of Sh whose odd-position
 * elements all precede P's head, un-shuffles D into O|E, and rotates O in
 * front of P.
 *
 * Everything is counted: element moves (via MoveSink), key comparisons, the
 * length of P at every rotation and of D at every scan.
 */

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shuffle_merge/element.hpp"
#include "shuffle_merge/errors.hpp"
#include "shuffle_merge/shuffle.hpp"

#ifndef SHUFFLE_MERGE_CHECK_INVARIANTS
#ifdef NDEBUG
#define SHUFFLE_MERGE_CHECK_INVARIANTS 0
#else
#define SHUFFLE_MERGE_CHECK_INVARIANTS 1
#endif
#endif

namespace shuffle_merge {

/// True iff keys are non-decreasing and, within every run of equal keys, all
/// left-origin elements precede all right-origin ones with origin_index
/// strictly increasing inside each origin group.
inline bool verify_sorted_stable(std::span<const Element> a) {
  for (std::size_t q = 1; q < a.size(); ++q) {
    const Element& prev = a[q - 1];
    const Element& cur = a[q];
    if (cur.key < prev.key) return false;
    if (cur.key != prev.key) continue;
    if (cur.origin < prev.origin) return false;
    if (cur.origin == prev.origin && cur.origin_index <= prev.origin_index)
      return false;
  }
  return true;
}

struct RotationRecord {
  std::uint64_t loop_iteration = 0;
  std::size_t p_length = 0;
  std::size_t d_length = 0;  // 2r; zero for the single-element tail rotation
  std::uint64_t moves = 0;   // un-shuffle + rotate moves of this iteration
  bool tail = false;
};

struct MergeStats {
  std::uint64_t moves = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t setup_moves = 0;  // the initial full-array shuffle, included in moves
  std::uint64_t loop_iterations = 0;
  std::uint64_t rotations = 0;  // rotations recorded in p_hist
  std::map<std::size_t, std::uint64_t> p_hist;
  std::map<std::size_t, std::uint64_t> d_hist;
  std::vector<RotationRecord> rotation_trace;
};

struct MergeOptions {
  // Whether the |Sh| = 1 rotation at the very end enters p_hist and the trace.
  bool record_tail_rotation = true;
  // Full state validation at the top of every loop iteration. O(N) per
  // iteration; does not touch the counters.
  bool check_invariants = SHUFFLE_MERGE_CHECK_INVARIANTS != 0;
};

struct MergeState {
  std::span<Element> a;
  std::size_t i = 0;  // start of P
  std::size_t j = 0;  // start of Sh
  Origin p_type = Origin::left;

  std::size_t p_size() const { return j - i; }
  std::size_t sh_size() const { return a.size() - j; }
};

/// Largest r with 2r <= |Sh| such that Sh[0], Sh[2], ..., Sh[2r-2] all
/// precede P's head. Each odd-position test is one comparison; the first
/// `known` odd positions are taken as already established and not retested.
inline std::size_t scan(const MergeState& state, MergeStats& stats,
                        std::size_t known = 0) {
  require(state.sh_size() >= 2, "scan: Sh must hold at least two elements");
  require(state.i < state.j, "scan: P must be non-empty");
  require(2 * known <= state.sh_size(), "scan: known prefix exceeds Sh");
  const Element& head = state.a[state.i];
  std::size_t r = known;
  while (2 * (r + 1) <= state.sh_size()) {
    ++stats.comparisons;
    if (!merge_less(state.a[state.j + 2 * r], head)) break;
    ++r;
  }
  return r;
}

namespace detail {

inline void fail_invariant(const MergeState& s, const char* what) {
  throw VerificationError("merge invariant violated (i=" + std::to_string(s.i) +
                          ", j=" + std::to_string(s.j) + "): " + what);
}

inline void check_merge_state(const MergeState& s) {
  const auto a = s.a;
  const std::size_t n = a.size();
  if (!(s.i < s.j && s.j <= n)) fail_invariant(s, "segment bounds");
  for (std::size_t q = 1; q < s.i; ++q)
    if (merge_less(a[q], a[q - 1])) fail_invariant(s, "S not sorted");
  if (s.i > 0) {
    for (std::size_t q = s.i; q < n; ++q)
      if (merge_less(a[q], a[s.i - 1])) fail_invariant(s, "S exceeds the rest");
  }
  for (std::size_t q = s.i; q < s.j; ++q) {
    if (a[q].origin != s.p_type) fail_invariant(s, "P mixes origins");
    if (q > s.i && merge_less(a[q], a[q - 1])) fail_invariant(s, "P not sorted");
  }
  for (std::size_t q = s.j; q < n; ++q) {
    const bool even_offset = (q - s.j) % 2 == 0;
    const Origin expected = even_offset ? complement(s.p_type) : s.p_type;
    if (a[q].origin != expected) fail_invariant(s, "Sh origins not alternating");
    if (q >= s.j + 2 && merge_less(a[q], a[q - 2]))
      fail_invariant(s, "Sh not 2-ordered");
  }
}

inline void check_merge_input(std::span<const Element> a) {
  require(a.size() % 2 == 0, "right_going_merge: total length must be even");
  const std::size_t half = a.size() / 2;
  for (std::size_t q = 0; q < a.size(); ++q) {
    const Origin expected = q < half ? Origin::left : Origin::right;
    require(a[q].origin == expected,
            "right_going_merge: left half must be tagged left and right half "
            "tagged right");
    if (q != 0 && q != half)
      require(a[q - 1].key <= a[q].key,
              "right_going_merge: each half must be sorted");
  }
}

}  // namespace detail

/// Merges the sorted halves a[0, N/2) and a[N/2, N) in place, stably, and
/// returns the operation counts. Left elements must carry Origin::left and
/// right elements Origin::right.
inline MergeStats right_going_merge(std::span<Element> a,
                                    const MergeOptions& options = {}) {
  detail::check_merge_input(a);
  MergeStats stats;
  const std::size_t n = a.size();
  if (n == 0) return stats;

  MoveSink sink;
  in_shuffle(a, sink);
  stats.setup_moves = sink.moves;

  MergeState st{a, 0, 1, a[0].origin};
  while (st.j < n) {
    ++stats.loop_iterations;
    if (options.check_invariants) detail::check_merge_state(st);

    ++stats.comparisons;
    if (merge_less(a[st.i], a[st.j])) {
      ++st.i;
      if (st.i == st.j) {
        ++st.j;
        st.p_type = complement(st.p_type);
      }
    } else if (st.sh_size() == 1) {
      const std::uint64_t before = sink.moves;
      const std::size_t p = st.p_size();
      rotate_right(a.subspan(st.i, p + 1), 1, sink);
      if (options.record_tail_rotation) {
        ++stats.rotations;
        ++stats.p_hist[p];
        stats.rotation_trace.push_back(
            {stats.loop_iterations, p, 0, sink.moves - before, true});
      }
      ++st.i;
      ++st.j;
    } else {
      // The branch test above already showed Sh[0] precedes P's head.
      const std::size_t r = scan(st, stats, 1);
      const std::uint64_t before = sink.moves;
      const std::size_t p = st.p_size();
      ++stats.d_hist[2 * r];
      un_shuffle(a.subspan(st.j, 2 * r), sink);
      rotate_right(a.subspan(st.i, p + r), r, sink);
      ++stats.rotations;
      ++stats.p_hist[p];
      stats.rotation_trace.push_back(
          {stats.loop_iterations, p, 2 * r, sink.moves - before, false});
      // P's head joins S only when some Sh element was shown to follow it.
      // If D swallowed all of Sh but one trailing element, that element was
      // never compared and P's head has to stay for the next iteration.
      const bool head_settled = st.sh_size() != 2 * r + 1;
      st.i += head_settled ? r + 1 : r;
      st.j += 2 * r;
    }
  }
  stats.moves = sink.moves;
  return stats;
}

}  // namespace shuffle_merge
