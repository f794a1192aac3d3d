#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tq/errors.hpp"

namespace tq {

inline constexpr int kMaxVertices = 64;

/// Subset of {0,...,n-1} packed into one machine word.
struct VertexSet {
  std::uint64_t bits = 0;
  int n = 0;

  VertexSet() = default;
  VertexSet(std::uint64_t b, int amb) : bits(b), n(amb) {}

  static VertexSet full(int amb) {
    return VertexSet(amb >= 64 ? ~0ULL : (1ULL << amb) - 1, amb);
  }
  static VertexSet of(std::initializer_list<int> vs, int amb) {
    VertexSet s(0, amb);
    for (int v : vs) s.add(v);
    return s;
  }

  int size() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  bool contains(int v) const { return (bits >> v) & 1; }
  void add(int v) { bits |= 1ULL << v; }
  void remove(int v) { bits &= ~(1ULL << v); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits; b;) {
      int v = std::countr_zero(b);
      out.push_back(v);
      b &= b - 1;
    }
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

/// Residue set defining a rotational tournament on an odd number of vertices.
struct RotationalSymbol {
  int modulus = 0;                // n = 2k+1 >= 3
  std::vector<int> residues;      // S, |S| = k

  RotationalSymbol() = default;
  RotationalSymbol(int mod, std::vector<int> res) : modulus(mod), residues(std::move(res)) {
    validate();
  }

  void validate() const {
    if (modulus < 3 || modulus % 2 == 0)
      throw input_error("rotational symbol: modulus must be odd and >= 3, got " +
                        std::to_string(modulus));
    int k = (modulus - 1) / 2;
    if (static_cast<int>(residues.size()) != k)
      throw input_error("rotational symbol: need exactly " + std::to_string(k) +
                        " residues, got " + std::to_string(residues.size()));
    std::uint64_t seen = 0;
    for (int r : residues) {
      if (r < 1 || r > modulus - 1)
        throw input_error("rotational symbol: residue " + std::to_string(r) +
                          " out of range [1," + std::to_string(modulus - 1) + "]");
      if (seen & (1ULL << r))
        throw input_error("rotational symbol: duplicate residue " + std::to_string(r));
      seen |= 1ULL << r;
    }
    for (int r : residues)
      if (seen & (1ULL << (modulus - r)))
        throw input_error("rotational symbol: both " + std::to_string(r) + " and " +
                          std::to_string(modulus - r) + " present (sum 0 mod n)");
  }

  bool contains(int d) const {
    for (int r : residues)
      if (r == d) return true;
    return false;
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derive an independent stream seed from (seed, stream index).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  return splitmix64(s);
}

}  // namespace detail

/// Complete oriented graph on n labeled vertices, one adjacency row per word.
class Tournament {
public:
  Tournament() : n_(1), out_(1, 0) {}

  explicit Tournament(int n, std::vector<std::uint64_t> out_rows)
      : n_(n), out_(std::move(out_rows)) {
    check_invariants();
  }

  /// Decode the upper-triangular row-major bit sequence: bit for pair (i,j),
  /// i<j, is 1 iff i->j.
  static Tournament from_arc_bits(int n, std::string_view bits) {
    if (n < 1 || n > kMaxVertices)
      throw input_error("tournament order must be in [1,64], got " + std::to_string(n));
    std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (bits.size() != want)
      throw input_error("arc bit string: expected " + std::to_string(want) +
                        " bits for n=" + std::to_string(n) + ", got " +
                        std::to_string(bits.size()));
    std::vector<std::uint64_t> rows(n, 0);
    std::size_t t = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++t) {
        char c = bits[t];
        if (c == '1')
          rows[i] |= 1ULL << j;
        else if (c == '0')
          rows[j] |= 1ULL << i;
        else
          throw input_error(std::string("arc bit string: invalid character '") + c +
                            "' at offset " + std::to_string(t));
      }
    }
    return Tournament(n, std::move(rows), NoCheck{});
  }

  int order() const { return n_; }

  bool arc(int u, int v) const { return (out_[u] >> v) & 1; }

  std::uint64_t out_bits(int v) const { return out_[v]; }
  std::uint64_t in_bits(int v) const {
    std::uint64_t b = 0;
    for (int u = 0; u < n_; ++u)
      if (arc(u, v)) b |= 1ULL << u;
    return b;
  }

  VertexSet out_set(int v) const {
    check_vertex(v);
    return VertexSet(out_[v], n_);
  }
  VertexSet in_set(int v) const {
    check_vertex(v);
    return VertexSet(in_bits(v), n_);
  }
  int out_degree(int v) const {
    check_vertex(v);
    return std::popcount(out_[v]);
  }
  int in_degree(int v) const { return n_ - 1 - out_degree(v); }

  int min_out_degree() const { return extreme_degree(true, true); }
  int max_out_degree() const { return extreme_degree(true, false); }
  int min_in_degree() const { return extreme_degree(false, true); }
  int max_in_degree() const { return extreme_degree(false, false); }

  /// All arcs reversed.
  Tournament dual() const {
    std::vector<std::uint64_t> rows(n_, 0);
    for (int v = 0; v < n_; ++v) rows[v] = in_bits(v);
    return Tournament(n_, std::move(rows), NoCheck{});
  }

  /// Subtournament on W, members relabeled in increasing order.
  Tournament induced(const VertexSet& w) const {
    if (w.empty()) throw input_error("induced: empty vertex set");
    std::vector<int> verts = w.members();
    if (verts.back() >= n_) throw input_error("induced: vertex out of range");
    int m = static_cast<int>(verts.size());
    std::vector<std::uint64_t> rows(m, 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (a != b && arc(verts[a], verts[b])) rows[a] |= 1ULL << b;
    return Tournament(m, std::move(rows), NoCheck{});
  }

  /// Subtournament with the vertices of W deleted.
  Tournament removed(const VertexSet& w) const {
    return induced(VertexSet(VertexSet::full(n_).bits & ~w.bits, n_));
  }

  /// i -> j iff (j - i) mod n lies in the symbol.
  static Tournament rotational(const RotationalSymbol& sym) {
    sym.validate();
    int n = sym.modulus;
    std::uint64_t smask = 0;
    for (int r : sym.residues) smask |= 1ULL << r;
    std::vector<std::uint64_t> rows(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && (smask >> ((j - i + n) % n)) & 1) rows[i] |= 1ULL << j;
    return Tournament(n, std::move(rows), NoCheck{});
  }

  /// Quadratic residue tournament: p prime, p = 3 (mod 4), symbol = squares mod p.
  static Tournament qr_tournament(int p) {
    if (p > kMaxVertices) throw input_error("qr_tournament: p exceeds vertex cap 64");
    if (!is_prime(p)) throw input_error("qr_tournament: " + std::to_string(p) + " is not prime");
    if (p % 4 != 3)
      throw input_error("qr_tournament: " + std::to_string(p) + " is not 3 mod 4");
    return Tournament::rotational(qr_symbol(p));
  }

  static RotationalSymbol qr_symbol(int p) {
    std::uint64_t seen = 0;
    std::vector<int> res;
    for (int x = 1; x < p; ++x) {
      int r = static_cast<int>((static_cast<std::int64_t>(x) * x) % p);
      if (!(seen & (1ULL << r))) {
        seen |= 1ULL << r;
        res.push_back(r);
      }
    }
    return RotationalSymbol(p, std::move(res));
  }

  /// Blow-up: blocks wired internally as parts[i]; block i => block j iff
  /// i -> j in outer. Blocks laid out consecutively in part order.
  static Tournament compose(const Tournament& outer, const std::vector<Tournament>& parts) {
    if (parts.size() != static_cast<std::size_t>(outer.order()))
      throw input_error("compose: need one part per outer vertex");
    int total = 0;
    for (const auto& p : parts) total += p.order();
    if (total > kMaxVertices)
      throw input_error("compose: total order " + std::to_string(total) + " exceeds 64");
    std::vector<int> offset(parts.size() + 1, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].order();
    std::vector<std::uint64_t> rows(total, 0);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Tournament& pi = parts[i];
      for (int a = 0; a < pi.order(); ++a) rows[offset[i] + a] |= pi.out_bits(a) << offset[i];
      for (std::size_t j = 0; j < parts.size(); ++j) {
        if (i == j || !outer.arc(static_cast<int>(i), static_cast<int>(j))) continue;
        std::uint64_t block_j = (VertexSet::full(parts[j].order()).bits) << offset[j];
        for (int a = 0; a < pi.order(); ++a) rows[offset[i] + a] |= block_j;
      }
    }
    return Tournament(total, std::move(rows), NoCheck{});
  }

  /// New vertex beating every existing vertex; appended with the last label.
  Tournament add_transmitter() const {
    if (n_ >= kMaxVertices) throw input_error("add_transmitter: vertex cap 64 reached");
    std::vector<std::uint64_t> rows = out_;
    rows.push_back(VertexSet::full(n_).bits);
    return Tournament(n_ + 1, std::move(rows), NoCheck{});
  }

  /// New vertex beaten by every existing vertex.
  Tournament add_receiver() const {
    if (n_ >= kMaxVertices) throw input_error("add_receiver: vertex cap 64 reached");
    std::vector<std::uint64_t> rows = out_;
    for (auto& r : rows) r |= 1ULL << n_;
    rows.push_back(0);
    return Tournament(n_ + 1, std::move(rows), NoCheck{});
  }

  /// Uniform labeled tournament; each of the n(n-1)/2 orientations is an
  /// independent fair coin. Deterministic in (n, seed).
  static Tournament random(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxVertices)
      throw input_error("random tournament: order must be in [1,64]");
    std::uint64_t state = detail::stream_seed(seed, 0);
    std::vector<std::uint64_t> rows(n, 0);
    std::uint64_t word = 0;
    int avail = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (avail == 0) {
          word = detail::splitmix64(state);
          avail = 64;
        }
        if (word & 1)
          rows[i] |= 1ULL << j;
        else
          rows[j] |= 1ULL << i;
        word >>= 1;
        --avail;
      }
    }
    return Tournament(n, std::move(rows), NoCheck{});
  }

  bool has_transmitter() const { return max_out_degree() == n_ - 1 && n_ > 1; }
  bool has_receiver() const { return min_out_degree() == 0 && n_ > 1; }
  int find_transmitter() const {
    for (int v = 0; v < n_; ++v)
      if (out_degree(v) == n_ - 1) return v;
    return -1;
  }
  int find_receiver() const {
    for (int v = 0; v < n_; ++v)
      if (out_degree(v) == 0) return v;
    return -1;
  }

  bool is_strong() const {
    if (n_ == 1) return true;
    // reachability closure from vertex 0, then in the dual
    for (int pass = 0; pass < 2; ++pass) {
      std::uint64_t reached = 1ULL, frontier = 1ULL;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t b = frontier; b;) {
          int v = std::countr_zero(b);
          b &= b - 1;
          next |= pass == 0 ? out_[v] : in_bits(v);
        }
        frontier = next & ~reached;
        reached |= next;
      }
      if (reached != VertexSet::full(n_).bits) return false;
    }
    return true;
  }

  /// Upper-triangular row-major arc bits, '1' at (i,j) iff i->j.
  std::string upper_bits() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) s.push_back(arc(i, j) ? '1' : '0');
    return s;
  }

  void check_invariants() const {
    if (n_ < 1 || n_ > kMaxVertices) throw input_error("tournament: order out of [1,64]");
    if (static_cast<int>(out_.size()) != n_) throw input_error("tournament: row count mismatch");
    std::uint64_t univ = VertexSet::full(n_).bits;
    int total = 0;
    for (int u = 0; u < n_; ++u) {
      if (out_[u] & ~univ) throw input_error("tournament: arc to vertex out of range");
      if ((out_[u] >> u) & 1) throw input_error("tournament: self arc");
      total += std::popcount(out_[u]);
      for (int v = u + 1; v < n_; ++v)
        if (arc(u, v) == arc(v, u)) throw input_error("tournament: antisymmetry violated");
    }
    if (total != n_ * (n_ - 1) / 2) throw input_error("tournament: arc count mismatch");
  }

  friend bool operator==(const Tournament&, const Tournament&) = default;

private:
  struct NoCheck {};
  Tournament(int n, std::vector<std::uint64_t> rows, NoCheck) : n_(n), out_(std::move(rows)) {}

  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw input_error("vertex " + std::to_string(v) + " out of range [0," +
                        std::to_string(n_ - 1) + "]");
  }

  int extreme_degree(bool out, bool min) const {
    int best = out ? out_degree(0) : in_degree(0);
    for (int v = 1; v < n_; ++v) {
      int d = out ? out_degree(v) : in_degree(v);
      best = min ? std::min(best, d) : std::max(best, d);
    }
    return best;
  }

  static bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  int n_;
  std::vector<std::uint64_t> out_;  // out_[v] bit j set iff v->j
};

// ---------------------------------------------------------------------------
// .trn text format: line 1 = n, line 2 = n(n-1)/2 arc bits (row-major upper
// triangle, empty line allowed for n=1), optional trailing newline.

inline Tournament parse_trn(std::istream& in) {
  std::string line1, line2;
  if (!std::getline(in, line1)) throw input_error("trn line 1: missing order");
  if (!line1.empty() && line1.back() == '\r') line1.pop_back();
  int n = 0;
  std::size_t pos = 0;
  try {
    n = std::stoi(line1, &pos);
  } catch (const std::exception&) {
    throw input_error("trn line 1: not a number: '" + line1 + "'");
  }
  if (pos != line1.size())
    throw input_error("trn line 1, column " + std::to_string(pos + 1) + ": trailing junk");
  if (n < 1 || n > kMaxVertices) throw input_error("trn line 1: order out of [1,64]");
  if (!std::getline(in, line2)) {
    if (n == 1) return Tournament::from_arc_bits(1, "");
    throw input_error("trn line 2: missing arc bits");
  }
  if (!line2.empty() && line2.back() == '\r') line2.pop_back();
  std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (line2.size() != want)
    throw input_error("trn line 2: expected " + std::to_string(want) + " bits, got " +
                      std::to_string(line2.size()));
  for (std::size_t i = 0; i < line2.size(); ++i)
    if (line2[i] != '0' && line2[i] != '1')
      throw input_error("trn line 2, column " + std::to_string(i + 1) +
                        ": invalid character '" + std::string(1, line2[i]) + "'");
  std::string extra;
  while (std::getline(in, extra)) {
    if (!extra.empty() && extra.back() == '\r') extra.pop_back();
    if (!extra.empty()) throw input_error("trn: unexpected extra line '" + extra + "'");
  }
  return Tournament::from_arc_bits(n, line2);
}

inline Tournament parse_trn(const std::string& text) {
  std::istringstream in(text);
  return parse_trn(in);
}

inline std::string format_trn(const Tournament& t) {
  return std::to_string(t.order()) + "\n" + t.upper_bits() + "\n";
}

}  // namespace tq
