#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tq/tournament.hpp"

namespace tq {

/// Square (0,1) support pattern: 1 = required nonzero, 0 = required zero.
struct PatternMatrix {
  int n = 0;
  std::vector<std::uint64_t> rows;  // rows[i] bit j set iff entry (i,j) = 1

  PatternMatrix() = default;
  PatternMatrix(int dim, std::vector<std::uint64_t> r) : n(dim), rows(std::move(r)) {
    if (n < 1 || n > kMaxVertices) throw input_error("pattern: dimension out of [1,64]");
    if (static_cast<int>(rows.size()) != n) throw input_error("pattern: row count mismatch");
    std::uint64_t univ = VertexSet::full(n).bits;
    for (auto r2 : rows)
      if (r2 & ~univ) throw input_error("pattern: entry outside the square");
  }

  bool entry(int i, int j) const { return (rows[i] >> j) & 1; }

  std::uint64_t col_bits(int j) const {
    std::uint64_t b = 0;
    for (int i = 0; i < n; ++i)
      if (entry(i, j)) b |= 1ULL << i;
    return b;
  }

  PatternMatrix transpose() const {
    std::vector<std::uint64_t> r(n, 0);
    for (int j = 0; j < n; ++j) r[j] = col_bits(j);
    return PatternMatrix(n, std::move(r));
  }

  bool has_zero_row_or_col() const {
    for (int i = 0; i < n; ++i)
      if (rows[i] == 0 || col_bits(i) == 0) return true;
    return false;
  }

  friend bool operator==(const PatternMatrix&, const PatternMatrix&) = default;
};

/// Adjacency pattern of a tournament: entry (i,j) = 1 iff i -> j.
inline PatternMatrix pattern_of(const Tournament& t) {
  std::vector<std::uint64_t> rows(t.order());
  for (int v = 0; v < t.order(); ++v) rows[v] = t.out_bits(v);
  return PatternMatrix(t.order(), std::move(rows));
}

struct CombOrthWitness {
  bool columns = false;  // witness is a column pair (else a row pair)
  int a = -1, b = -1;    // the offending pair
  int shared = -1;       // the unique shared support position
};

struct CombOrthResult {
  bool combinatorially_orthogonal = true;
  std::optional<CombOrthWitness> witness;
};

/// Every two distinct rows, and every two distinct columns, must share
/// support in a number of positions different from 1.
inline CombOrthResult pattern_combinatorially_orthogonal(const PatternMatrix& p) {
  CombOrthResult res;
  for (int pass = 0; pass < 2 && res.combinatorially_orthogonal; ++pass) {
    const PatternMatrix m = pass == 0 ? p : p.transpose();
    for (int a = 0; a < p.n && res.combinatorially_orthogonal; ++a)
      for (int b = a + 1; b < p.n; ++b) {
        std::uint64_t sh = m.rows[a] & m.rows[b];
        if (std::popcount(sh) == 1) {
          res.combinatorially_orthogonal = false;
          res.witness = CombOrthWitness{pass == 1, a, b, std::countr_zero(sh)};
          break;
        }
      }
  }
  return res;
}

// ---------------------------------------------------------------------------
// .pat text format: line 1 = n, then n lines of n characters over {0,1}.

inline PatternMatrix parse_pat(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw input_error("pat line 1: missing dimension");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int n = 0;
  std::size_t pos = 0;
  try {
    n = std::stoi(line, &pos);
  } catch (const std::exception&) {
    throw input_error("pat line 1: not a number: '" + line + "'");
  }
  if (pos != line.size())
    throw input_error("pat line 1, column " + std::to_string(pos + 1) + ": trailing junk");
  if (n < 1 || n > kMaxVertices) throw input_error("pat line 1: dimension out of [1,64]");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw input_error("pat line " + std::to_string(i + 2) + ": missing row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != n)
      throw input_error("pat line " + std::to_string(i + 2) + ": expected " +
                        std::to_string(n) + " characters, got " + std::to_string(line.size()));
    for (int j = 0; j < n; ++j) {
      if (line[j] == '1')
        rows[i] |= 1ULL << j;
      else if (line[j] != '0')
        throw input_error("pat line " + std::to_string(i + 2) + ", column " +
                          std::to_string(j + 1) + ": invalid character '" +
                          std::string(1, line[j]) + "'");
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw input_error("pat: unexpected extra line '" + line + "'");
  }
  return PatternMatrix(n, std::move(rows));
}

inline PatternMatrix parse_pat(const std::string& text) {
  std::istringstream in(text);
  return parse_pat(in);
}

inline std::string format_pat(const PatternMatrix& p) {
  std::string s = std::to_string(p.n) + "\n";
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < p.n; ++j) s.push_back(p.entry(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

}  // namespace tq
