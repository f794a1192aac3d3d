#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "tq/pattern.hpp"

namespace tq {

// ---------------------------------------------------------------------------
// Alternating projections between the orthogonal group and the pattern
// subspace.

struct OrthoConfig {
  double eps_orth = 1e-10;
  double eps_zero = 1e-10;
  double tau = 1e-6;
  int max_iter = 10000;
  int restarts = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  std::optional<Eigen::MatrixXd> init;  // start here instead of a random orthogonal matrix
};

struct OrthoSearchResult {
  enum class Status { SUCCESS, FAILURE };
  Status status = Status::FAILURE;
  Eigen::MatrixXd matrix;           // valid on success
  double orthogonality_residual = std::numeric_limits<double>::infinity();
  double pattern_residual = std::numeric_limits<double>::infinity();
  double min_support_entry = 0.0;
  int restarts_used = 0;
  long iterations_used = 0;
};

namespace detail {

/// Orthogonal polar factor: the nearest orthogonal matrix to X in Frobenius
/// norm, from the SVD X = W S V^T.
inline Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

inline void project_pattern(const PatternMatrix& p, Eigen::MatrixXd& x) {
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (!p.entry(i, j)) x(i, j) = 0.0;
}

struct Residuals {
  double orth, zero, support;
};

inline Residuals residuals(const PatternMatrix& p, const Eigen::MatrixXd& u) {
  Residuals r{};
  r.orth = (u.transpose() * u - Eigen::MatrixXd::Identity(p.n, p.n)).cwiseAbs().maxCoeff();
  r.zero = 0.0;
  r.support = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      double a = std::abs(u(i, j));
      if (p.entry(i, j))
        r.support = std::min(r.support, a);
      else
        r.zero = std::max(r.zero, a);
    }
  return r;
}

inline Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  return polar_factor(g);
}

struct RestartOutcome {
  bool success = false;
  Eigen::MatrixXd matrix;
  Residuals res{std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), 0.0};
  long iterations = 0;
};

inline RestartOutcome run_restart(const PatternMatrix& p, const OrthoConfig& cfg,
                                  const Eigen::MatrixXd& start) {
  RestartOutcome out;
  Eigen::MatrixXd x = start;
  Eigen::MatrixXd prev = x;
  for (int it = 0; it < cfg.max_iter; ++it) {
    project_pattern(p, x);
    Eigen::MatrixXd u = polar_factor(x);
    ++out.iterations;
    Residuals r = residuals(p, u);
    if (r.orth <= cfg.eps_orth && r.zero <= cfg.eps_zero && r.support >= cfg.tau) {
      out.success = true;
      out.matrix = u;
      out.res = r;
      return out;
    }
    if (it > 0 && (u - prev).cwiseAbs().maxCoeff() < 1e-13) {
      out.res = r;
      return out;  // stalled at a fixed point that misses the pattern
    }
    prev = u;
    x = u;
  }
  out.res = residuals(p, polar_factor(x));
  return out;
}

}  // namespace detail

/// Search for an orthogonal matrix with the given zero/nonzero pattern by
/// alternating projections. FAILURE is inconclusive; only the certificate
/// engine proves nonexistence. Restarts may run in parallel; the success with
/// the smallest restart index wins.
inline OrthoSearchResult alternating_projection(const PatternMatrix& p, OrthoConfig cfg = {}) {
  if (p.has_zero_row_or_col())
    throw input_error("alternating projection: pattern has an all-zero row or column");
  OrthoSearchResult result;

  if (cfg.init) {
    detail::RestartOutcome out = detail::run_restart(p, cfg, *cfg.init);
    result.restarts_used = 1;
    result.iterations_used = out.iterations;
    if (out.success) {
      result.status = OrthoSearchResult::Status::SUCCESS;
      result.matrix = out.matrix;
    }
    result.orthogonality_residual = out.res.orth;
    result.pattern_residual = out.res.zero;
    result.min_support_entry = out.res.support;
    return result;
  }

  int threads = std::max(1, cfg.threads);
  std::atomic<int> cursor{0};
  std::atomic<int> best_success{std::numeric_limits<int>::max()};
  std::atomic<long> total_iters{0};
  std::atomic<int> used{0};
  std::mutex mu;
  std::map<int, detail::RestartOutcome> successes;
  detail::Residuals best_res{std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(), 0.0};

  auto worker = [&]() {
    while (true) {
      int r = cursor.fetch_add(1);
      if (r >= cfg.restarts || r > best_success.load()) break;
      Eigen::MatrixXd start =
          detail::random_orthogonal(p.n, tq::detail::stream_seed(cfg.seed, r));
      detail::RestartOutcome out = detail::run_restart(p, cfg, start);
      total_iters.fetch_add(out.iterations);
      used.fetch_add(1);
      std::lock_guard<std::mutex> lock(mu);
      if (out.success) {
        successes.emplace(r, std::move(out));
        int cur = best_success.load();
        while (r < cur && !best_success.compare_exchange_weak(cur, r)) {
        }
      } else if (out.res.zero < best_res.zero) {
        best_res = out.res;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.restarts_used = used.load();
  result.iterations_used = total_iters.load();
  if (!successes.empty()) {
    const detail::RestartOutcome& win = successes.begin()->second;
    result.status = OrthoSearchResult::Status::SUCCESS;
    result.matrix = win.matrix;
    result.orthogonality_residual = win.res.orth;
    result.pattern_residual = win.res.zero;
    result.min_support_entry = win.res.support;
  } else {
    result.orthogonality_residual = best_res.orth;
    result.pattern_residual = best_res.zero;
    result.min_support_entry = best_res.support;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Symbolic refutation: ratio propagation from column-orthogonality relations.

struct RatioFact {
  int row_a = -1, row_b = -1;  // rows proportional when restricted to cols_j
  std::uint64_t cols_j = 0;    // the column set J (maximal for its pivot)
  int pivot_col = -1;          // derivation: pivot column, or -1 when chained
  int from_a = -1, from_b = -1;  // indices of the two combined facts when chained
};

/// A proof that the pattern supports no orthogonal matrix: a chain of forced
/// row proportionalities ending in a pair whose common support lies inside J,
/// so their inner product cannot vanish.
struct DependencyCertificate {
  enum class CertSide { ROWS, COLUMNS };
  CertSide side = CertSide::ROWS;
  std::vector<RatioFact> facts;
  int contra_fact = -1;  // index into facts of the contradicting proportionality
  std::uint64_t contra_common_support = 0;
};

namespace detail {

inline std::optional<DependencyCertificate> certificate_one_side(
    const PatternMatrix& p, int depth_cap, DependencyCertificate::CertSide side) {
  int n = p.n;
  std::vector<std::uint64_t> col(n), row(n);
  for (int j = 0; j < n; ++j) col[j] = p.col_bits(j);
  for (int i = 0; i < n; ++i) row[i] = p.rows[i];

  DependencyCertificate cert;
  cert.side = side;
  auto contradiction = [&](const RatioFact& f) {
    std::uint64_t common = row[f.row_a] & row[f.row_b];
    return common != 0 && (common & ~f.cols_j) == 0;
  };
  auto finish = [&](int idx) {
    cert.contra_fact = idx;
    cert.contra_common_support = row[cert.facts[idx].row_a] & row[cert.facts[idx].row_b];
    return cert;
  };

  // Base facts: pivot column c and row pair {r,s} with J = all columns whose
  // support meets supp(C_c) in exactly {r,s}. Any orthogonal realization has
  // rows r and s proportional and fully supported on J.
  std::map<std::tuple<int, int, int>, std::uint64_t> base;  // (c, r, s) -> J
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < n; ++j) {
      if (j == c) continue;
      std::uint64_t inter = col[c] & col[j];
      if (std::popcount(inter) != 2) continue;
      int r = std::countr_zero(inter);
      int s = std::countr_zero(inter & (inter - 1));
      base[{c, r, s}] |= 1ULL << j;
    }
  std::map<std::tuple<int, int, std::uint64_t>, int> known;  // (r, s, J) -> fact index
  for (const auto& [key, j_set] : base) {
    auto [c, r, s] = key;
    if (known.count({r, s, j_set})) continue;
    RatioFact f;
    f.row_a = r;
    f.row_b = s;
    f.cols_j = j_set;
    f.pivot_col = c;
    known[{r, s, j_set}] = static_cast<int>(cert.facts.size());
    cert.facts.push_back(f);
    if (contradiction(f)) return finish(static_cast<int>(cert.facts.size()) - 1);
  }

  // Transitive closure over a common J: (r,s) and (s,t) proportional on J
  // give (r,t) proportional on J.
  std::size_t level_start = 0;
  for (int depth = 1; depth <= depth_cap; ++depth) {
    std::size_t level_end = cert.facts.size();
    if (level_start == level_end) break;
    for (std::size_t a = 0; a < level_end; ++a)
      for (std::size_t b = std::max(a + 1, level_start); b < level_end; ++b) {
        const RatioFact& fa = cert.facts[a];
        const RatioFact& fb = cert.facts[b];
        if (fa.cols_j != fb.cols_j) continue;
        int r, t;
        if (fa.row_a == fb.row_a) {
          r = fa.row_b;
          t = fb.row_b;
        } else if (fa.row_a == fb.row_b) {
          r = fa.row_b;
          t = fb.row_a;
        } else if (fa.row_b == fb.row_a) {
          r = fa.row_a;
          t = fb.row_b;
        } else if (fa.row_b == fb.row_b) {
          r = fa.row_a;
          t = fb.row_a;
        } else {
          continue;
        }
        if (r == t) continue;
        if (r > t) std::swap(r, t);
        if (known.count({r, t, fa.cols_j})) continue;
        RatioFact f;
        f.row_a = r;
        f.row_b = t;
        f.cols_j = fa.cols_j;
        f.from_a = static_cast<int>(a);
        f.from_b = static_cast<int>(b);
        known[{r, t, f.cols_j}] = static_cast<int>(cert.facts.size());
        cert.facts.push_back(f);
        if (contradiction(f)) return finish(static_cast<int>(cert.facts.size()) - 1);
      }
    level_start = level_end;
  }
  return std::nullopt;
}

}  // namespace detail

/// Mechanized dependency argument. A returned certificate proves the pattern
/// supports no orthogonal matrix; nullopt is inconclusive.
inline std::optional<DependencyCertificate> ratio_propagation_certificate(const PatternMatrix& p,
                                                                          int depth_cap = 4) {
  if (auto c = detail::certificate_one_side(p, depth_cap, DependencyCertificate::CertSide::ROWS))
    return c;
  return detail::certificate_one_side(p.transpose(), depth_cap,
                                      DependencyCertificate::CertSide::COLUMNS);
}

/// Re-derive every base fact and the contradiction of a certificate directly
/// from the pattern. Used by tests and by report consumers.
inline bool verify_certificate(const PatternMatrix& original, const DependencyCertificate& cert) {
  const PatternMatrix p =
      cert.side == DependencyCertificate::CertSide::ROWS ? original : original.transpose();
  for (const RatioFact& f : cert.facts) {
    if (f.cols_j == 0) return false;
    std::uint64_t pair = (1ULL << f.row_a) | (1ULL << f.row_b);
    if (f.pivot_col >= 0) {
      std::uint64_t piv = p.col_bits(f.pivot_col);
      if ((f.cols_j >> f.pivot_col) & 1) return false;
      for (std::uint64_t b = f.cols_j; b;) {
        int j = std::countr_zero(b);
        b &= b - 1;
        if ((piv & p.col_bits(j)) != pair) return false;
      }
    } else {
      if (f.from_a < 0 || f.from_b < 0) return false;
      const RatioFact& fa = cert.facts[f.from_a];
      const RatioFact& fb = cert.facts[f.from_b];
      if (fa.cols_j != f.cols_j || fb.cols_j != f.cols_j) return false;
      std::uint64_t pa = (1ULL << fa.row_a) | (1ULL << fa.row_b);
      std::uint64_t pb = (1ULL << fb.row_a) | (1ULL << fb.row_b);
      // the two parents must share exactly one row, the symmetric difference
      // being the derived pair
      if (std::popcount(pa & pb) != 1 || (pa ^ pb) != pair) return false;
    }
  }
  if (cert.contra_fact < 0 || cert.contra_fact >= static_cast<int>(cert.facts.size()))
    return false;
  const RatioFact& cf = cert.facts[cert.contra_fact];
  std::uint64_t common = p.rows[cf.row_a] & p.rows[cf.row_b];
  return common != 0 && (common & ~cf.cols_j) == 0 && common == cert.contra_common_support;
}

}  // namespace tq
