#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tq/tournament.hpp"

namespace tq {

struct PairWitness {
  int u = -1, v = -1;   // lexicographically least violating pair
  int shared = -1;      // the unique common neighbor
};

struct QuadReport {
  bool out_quadrangular = true;
  bool in_quadrangular = true;
  std::optional<PairWitness> out_witness;
  std::optional<PairWitness> in_witness;

  bool quadrangular() const { return out_quadrangular && in_quadrangular; }
};

/// No two distinct vertices may share exactly one out-neighbor (nor one
/// in-neighbor). Witnesses are the lexicographically least violating pairs.
inline QuadReport quadrangularity(const Tournament& t) {
  int n = t.order();
  QuadReport rep;
  std::vector<std::uint64_t> in(n);
  for (int v = 0; v < n; ++v) in[v] = t.in_bits(v);
  for (int u = 0; u < n && (rep.out_quadrangular || rep.in_quadrangular); ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rep.out_quadrangular) {
        std::uint64_t o = t.out_bits(u) & t.out_bits(v);
        if (std::popcount(o) == 1) {
          rep.out_quadrangular = false;
          rep.out_witness = PairWitness{u, v, std::countr_zero(o)};
        }
      }
      if (rep.in_quadrangular) {
        std::uint64_t i = in[u] & in[v];
        if (std::popcount(i) == 1) {
          rep.in_quadrangular = false;
          rep.in_witness = PairWitness{u, v, std::countr_zero(i)};
        }
      }
      if (!rep.out_quadrangular && !rep.in_quadrangular) break;
    }
  }
  return rep;
}

inline bool is_out_quadrangular(const Tournament& t) {
  return quadrangularity(t).out_quadrangular;
}
inline bool is_in_quadrangular(const Tournament& t) {
  return quadrangularity(t).in_quadrangular;
}
inline bool is_quadrangular(const Tournament& t) {
  return quadrangularity(t).quadrangular();
}

// ---------------------------------------------------------------------------
// Strong quadrangularity

enum class Side { OUT, IN };

struct StrongQuadWitness {
  Side side = Side::OUT;
  VertexSet set_s;          // minimum-size violating set, least in sorted-sequence order
  VertexSet shared_union;   // union of pairwise shared outsets (resp. insets)
  int union_size() const { return shared_union.size(); }
};

inline constexpr int kStrongQuadCap = 24;

namespace detail {

/// Pairwise shared neighborhoods for one side; pair_mask[u][v] and the
/// qualification mask q[u] = { v != u : shared(u,v) nonempty }.
struct SharedTable {
  int n;
  std::array<std::array<std::uint64_t, kStrongQuadCap>, kStrongQuadCap> pair_mask{};
  std::array<std::uint64_t, kStrongQuadCap> q{};

  SharedTable(const Tournament& t, Side side) : n(t.order()) {
    std::vector<std::uint64_t> nb(n);
    for (int v = 0; v < n; ++v) nb[v] = side == Side::OUT ? t.out_bits(v) : t.in_bits(v);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        pair_mask[u][v] = nb[u] & nb[v];
        if (pair_mask[u][v]) q[u] |= 1ULL << v;
      }
  }

  bool qualifies(std::uint64_t s) const {
    for (std::uint64_t b = s; b;) {
      int u = std::countr_zero(b);
      b &= b - 1;
      if (!(q[u] & s & ~(1ULL << u))) return false;
    }
    return true;
  }

  std::uint64_t pair_union(const std::vector<int>& verts) const {
    std::uint64_t acc = 0;
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b)
        acc |= pair_mask[verts[a]][verts[b]];
    return acc;
  }
};

/// Visit all size-s subsets of {0..n-1} in sorted-sequence lexicographic
/// order; stop when f returns true.
template <typename F>
bool for_each_combination(int n, int s, F&& f) {
  std::vector<int> c(s);
  for (int i = 0; i < s; ++i) c[i] = i;
  while (true) {
    if (f(c)) return true;
    int i = s - 1;
    while (i >= 0 && c[i] == n - s + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace detail

/// Evaluate one subset directly: does S qualify, and what is the union of its
/// pairwise shared outsets (resp. insets)?
inline std::pair<bool, VertexSet> strong_quad_subset(const Tournament& t, Side side,
                                                     const VertexSet& s) {
  detail::SharedTable tab(t, side);
  bool q = tab.qualifies(s.bits);
  return {q, VertexSet(tab.pair_union(s.members()), t.order())};
}

/// Returns no witness iff strongly quadrangular. Otherwise the minimum-size
/// violating set, OUT side scanned before IN per size, subsets in
/// sorted-sequence lexicographic order.
inline std::optional<StrongQuadWitness> is_strongly_quadrangular(const Tournament& t) {
  int n = t.order();
  if (n > kStrongQuadCap)
    throw cap_error("strong quadrangularity: subset search capped at order " +
                    std::to_string(kStrongQuadCap));
  detail::SharedTable out_tab(t, Side::OUT);
  detail::SharedTable in_tab(t, Side::IN);
  std::optional<StrongQuadWitness> found;
  for (int s = 2; s <= n && !found; ++s) {
    for (Side side : {Side::OUT, Side::IN}) {
      const auto& tab = side == Side::OUT ? out_tab : in_tab;
      detail::for_each_combination(n, s, [&](const std::vector<int>& c) {
        std::uint64_t mask = 0;
        for (int v : c) mask |= 1ULL << v;
        if (!tab.qualifies(mask)) return false;
        std::uint64_t uni = tab.pair_union(c);
        if (std::popcount(uni) < s) {
          found = StrongQuadWitness{side, VertexSet(mask, n), VertexSet(uni, n)};
          return true;
        }
        return false;
      });
      if (found) break;
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Domination

struct DominationResult {
  int gamma = 0;
  VertexSet witness;
};

namespace detail {

inline std::uint64_t closed_out(const Tournament& t, int v) {
  return t.out_bits(v) | (1ULL << v);
}

}  // namespace detail

/// True iff some set of at most k vertices dominates (every vertex in the set
/// or beaten by a member).
inline bool has_dominating_set(const Tournament& t, int k, VertexSet* witness = nullptr) {
  int n = t.order();
  std::uint64_t all = VertexSet::full(n).bits;
  bool ok = false;
  for (int s = 1; s <= k && !ok; ++s) {
    detail::for_each_combination(n, s, [&](const std::vector<int>& c) {
      std::uint64_t cov = 0;
      for (int v : c) cov |= detail::closed_out(t, v);
      if (cov == all) {
        if (witness) {
          witness->bits = 0;
          witness->n = n;
          for (int v : c) witness->add(v);
        }
        ok = true;
        return true;
      }
      return false;
    });
  }
  return ok;
}

/// Exact domination number by increasing-cardinality search, with a greedy
/// upper bound to cap the search depth.
inline DominationResult domination_number(const Tournament& t) {
  int n = t.order();
  std::uint64_t all = VertexSet::full(n).bits;
  // greedy bound
  std::uint64_t covered = 0;
  int greedy = 0;
  while (covered != all) {
    int best = -1, gain = -1;
    for (int v = 0; v < n; ++v) {
      int g = std::popcount(detail::closed_out(t, v) & ~covered);
      if (g > gain) {
        gain = g;
        best = v;
      }
    }
    covered |= detail::closed_out(t, best);
    ++greedy;
  }
  // has_dominating_set scans cardinalities in increasing order, so the first
  // witness it records is minimum; greedy guarantees it finds one
  DominationResult res;
  VertexSet w;
  has_dominating_set(t, greedy, &w);
  res.gamma = w.size();
  res.witness = w;
  return res;
}

// ---------------------------------------------------------------------------
// Rotational symbol criterion

struct RotationalQuadResult {
  bool quadrangular = false;
  // witnesses[m-1] lists ordered pairs (i,j) from the symbol with
  // i - j = m (mod n); the criterion needs at least two per m.
  std::vector<std::vector<std::pair<int, int>>> witnesses;
};

/// Difference criterion for rotational tournaments on n >= 5 vertices:
/// quadrangular iff every m in [1,(n-1)/2] is realized as i-j (mod n) by at
/// least two distinct subsets {i,j} of the symbol.
inline RotationalQuadResult rotational_quadrangular(const RotationalSymbol& sym) {
  sym.validate();
  int n = sym.modulus;
  if (n < 5) throw input_error("rotational criterion requires modulus >= 5");
  RotationalQuadResult res;
  res.quadrangular = true;
  int half = (n - 1) / 2;
  res.witnesses.resize(half);
  for (int m = 1; m <= half; ++m) {
    auto& rows = res.witnesses[m - 1];
    for (int i : sym.residues)
      for (int j : sym.residues)
        if (i != j && ((i - j) % n + n) % n == m) rows.emplace_back(i, j);
    if (rows.size() < 2) res.quadrangular = false;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Structural characterization checkers (biconditional only under their
// hypotheses; callers get an error when the hypothesis is absent).

namespace detail {

inline bool gamma_gt2(const Tournament& t) { return !has_dominating_set(t, 2); }

}  // namespace detail

/// Hypothesis: n >= 4 and a vertex x of out-degree 1, x -> y. Conditions:
/// O(y) = V - {x,y}, gamma(T - {x,y}) > 2, gamma((T - {x,y})^r) > 2.
inline bool check_tourn7(const Tournament& t) {
  int n = t.order();
  if (n < 4) throw hypothesis_error("tourn7: needs at least 4 vertices");
  int x = -1;
  for (int v = 0; v < n; ++v)
    if (t.out_degree(v) == 1) {
      x = v;
      break;
    }
  if (x < 0) throw hypothesis_error("tourn7: no vertex of out-degree 1");
  int y = t.out_set(x).members()[0];
  std::uint64_t rest = VertexSet::full(n).bits & ~(1ULL << x) & ~(1ULL << y);
  if (t.out_bits(y) != rest) return false;
  Tournament sub = t.removed(VertexSet((1ULL << x) | (1ULL << y), n));
  return detail::gamma_gt2(sub) && detail::gamma_gt2(sub.dual());
}

/// Hypothesis: n >= 3, transmitter s and receiver t. Conditions:
/// gamma(T - {s,t}) > 2 and gamma((T - {s,t})^r) > 2.
inline bool check_tourn2(const Tournament& t) {
  if (t.order() < 3) throw hypothesis_error("tourn2: needs at least 3 vertices");
  int s = t.find_transmitter(), r = t.find_receiver();
  if (s < 0 || r < 0) throw hypothesis_error("tourn2: needs a transmitter and a receiver");
  Tournament sub = t.removed(VertexSet((1ULL << s) | (1ULL << r), t.order()));
  return detail::gamma_gt2(sub) && detail::gamma_gt2(sub.dual());
}

/// Hypothesis: transmitter s and no receiver. Conditions: gamma(T-s) > 2,
/// T-s out-quadrangular, min out-degree of T-s >= 2.
inline bool check_tourn3(const Tournament& t) {
  int s = t.find_transmitter();
  if (s < 0) throw hypothesis_error("tourn3: needs a transmitter");
  if (t.find_receiver() >= 0) throw hypothesis_error("tourn3: must have no receiver");
  Tournament sub = t.removed(VertexSet(1ULL << s, t.order()));
  return detail::gamma_gt2(sub) && is_out_quadrangular(sub) && sub.min_out_degree() >= 2;
}

/// Hypothesis: receiver t and no transmitter. Conditions: gamma((T-t)^r) > 2,
/// T-t in-quadrangular, min in-degree of T-t >= 2.
inline bool check_tourn4(const Tournament& t) {
  int r = t.find_receiver();
  if (r < 0) throw hypothesis_error("tourn4: needs a receiver");
  if (t.find_transmitter() >= 0) throw hypothesis_error("tourn4: must have no transmitter");
  Tournament sub = t.removed(VertexSet(1ULL << r, t.order()));
  return detail::gamma_gt2(sub.dual()) && is_in_quadrangular(sub) && sub.min_in_degree() >= 2;
}

// ---------------------------------------------------------------------------
// Structural lemma audit: consequences that must hold, checked directly.

inline std::vector<std::string> structural_lemma_audit(const Tournament& t) {
  std::vector<std::string> violations;
  int n = t.order();
  QuadReport rep = quadrangularity(t);
  if (rep.out_quadrangular) {
    for (int v = 0; v < n; ++v) {
      VertexSet o = t.out_set(v);
      if (o.empty()) continue;
      Tournament w = t.induced(o);
      for (int u = 0; u < w.order(); ++u)
        if (w.out_degree(u) == 1)
          violations.push_back("outset of vertex " + std::to_string(v) +
                               " induces an out-degree-1 vertex");
    }
    if (t.min_out_degree() >= 2 && t.min_out_degree() < 4)
      violations.push_back("out-quadrangular with min out-degree in {2,3}");
  }
  if (rep.in_quadrangular) {
    for (int v = 0; v < n; ++v) {
      VertexSet i = t.in_set(v);
      if (i.empty()) continue;
      Tournament w = t.induced(i);
      for (int u = 0; u < w.order(); ++u)
        if (w.in_degree(u) == 1)
          violations.push_back("inset of vertex " + std::to_string(v) +
                               " induces an in-degree-1 vertex");
    }
    if (t.min_in_degree() >= 2 && t.min_in_degree() < 4)
      violations.push_back("in-quadrangular with min in-degree in {2,3}");
  }
  if (rep.quadrangular() && t.min_out_degree() >= 2 && t.min_in_degree() >= 2 &&
      (t.min_out_degree() < 4 || t.min_in_degree() < 4))
    violations.push_back("quadrangular with both minimum degrees >= 2 but < 4");
  if (n >= 4) {
    bool some_pair = false;
    for (int a = 0; a < n && !some_pair; ++a)
      for (int b = a + 1; b < n; ++b)
        if (t.out_bits(a) & t.out_bits(b)) {
          some_pair = true;
          break;
        }
    if (!some_pair) violations.push_back("no two vertices share an out-neighbor (n >= 4)");
  }
  return violations;
}

}  // namespace tq
