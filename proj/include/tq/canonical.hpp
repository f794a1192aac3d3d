#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include "tq/tournament.hpp"

namespace tq {

/// Exhaustive-relabeling canonicalization with partial-prefix pruning.
/// Supported up to order 11 (the packed arc string must fit one word);
/// enumeration needs no more.
inline constexpr int kCanonicalCap = 11;

struct CanonicalResult {
  std::uint64_t key = 0;       // colex-ordered arc bits of the extremal relabeling, MSB first
  std::uint64_t aut = 1;       // |Aut|: number of relabelings achieving the key
  Tournament representative;   // the relabeled tournament itself
};

namespace detail {

struct CanonSearch {
  const Tournament* t;
  int n;
  std::uint64_t best = 0;
  std::uint64_t count = 0;
  std::array<int, kCanonicalCap> perm{};
  std::array<int, kCanonicalCap> best_perm{};
  bool have_best = false;

  // Bits are packed MSB-first in colex pair order: placing the vertex at
  // position d appends bits (perm[0]->v, ..., perm[d-1]->v), so every prefix
  // is determined by the already-placed vertices and word comparison is
  // lexicographic comparison of the arc strings.
  void dfs(int depth, int offset, std::uint64_t used, std::uint64_t cur) {
    if (depth == n) {
      if (!have_best || cur > best) {
        best = cur;
        count = 1;
        best_perm = perm;
        have_best = true;
      } else if (cur == best) {
        ++count;
      }
      return;
    }
    // order candidates by the bits they would append, best first
    std::array<std::pair<std::uint64_t, int>, kCanonicalCap> cand;
    int m = 0;
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1) continue;
      std::uint64_t add = 0;
      for (int i = 0; i < depth; ++i)
        if (t->arc(perm[i], v)) add |= 1ULL << (63 - (offset + i));
      cand[m++] = {add, v};
    }
    std::sort(cand.begin(), cand.begin() + m,
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int len = offset + depth;
    for (int c = 0; c < m; ++c) {
      std::uint64_t next = cur | cand[c].first;
      if (have_best && len > 0) {
        int shift = 64 - len;
        if ((next >> shift) < (best >> shift)) continue;  // strictly worse prefix
      }
      perm[depth] = cand[c].second;
      dfs(depth + 1, offset + depth, used | (1ULL << cand[c].second), next);
    }
  }
};

}  // namespace detail

inline CanonicalResult canonicalize(const Tournament& t) {
  int n = t.order();
  if (n > kCanonicalCap)
    throw cap_error("canonicalize: exhaustive relabeling capped at order " +
                    std::to_string(kCanonicalCap));
  detail::CanonSearch s;
  s.t = &t;
  s.n = n;
  s.dfs(0, 0, 0, 0);
  CanonicalResult r;
  r.key = s.best;
  r.aut = s.count;
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && t.arc(s.best_perm[i], s.best_perm[j])) rows[i] |= 1ULL << j;
  r.representative = Tournament(n, std::move(rows));
  return r;
}

/// Packed canonical key alone (cheapest form, for dedup sets).
inline std::uint64_t canonical_key64(const Tournament& t) {
  int n = t.order();
  if (n > kCanonicalCap)
    throw cap_error("canonical_key64: exhaustive relabeling capped at order " +
                    std::to_string(kCanonicalCap));
  detail::CanonSearch s;
  s.t = &t;
  s.n = n;
  s.dfs(0, 0, 0, 0);
  return s.best;
}

/// Row-major arc-bit string of the canonical representative. Equal strings
/// iff isomorphic.
inline std::string canonical_form(const Tournament& t) {
  return canonicalize(t).representative.upper_bits();
}

inline bool is_isomorphic(const Tournament& a, const Tournament& b) {
  if (a.order() != b.order()) return false;
  return canonical_key64(a) == canonical_key64(b);
}

}  // namespace tq
