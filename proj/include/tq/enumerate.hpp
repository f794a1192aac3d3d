#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tq/canonical.hpp"
#include "tq/quad.hpp"
#include "tq/tournament.hpp"

namespace tq {

inline constexpr int kEnumCap = 10;

struct EnumerationSummary {
  int n = 0;
  std::uint64_t class_count = 0;
  std::uint64_t labeled_check = 0;  // sum over classes of n!/|Aut|
  std::string filter_name;
  std::uint64_t filter_count = 0;
  double elapsed_sec = 0.0;

  std::uint64_t expected_labeled() const {
    return n < 2 ? 1 : 1ULL << (static_cast<std::uint64_t>(n) * (n - 1) / 2);
  }
  bool orbit_identity_holds() const { return labeled_check == expected_labeled(); }
};

/// Periodic checkpointing of the top-level generation pass: canonical-key
/// shard file plus a small progress record, so a long n=10 run can resume.
struct CheckpointConfig {
  std::string dir;
  int block_parents = 256;  // parents processed between flushes
};

using ClassVisitor = std::function<void(const Tournament& rep, std::uint64_t aut)>;

namespace detail {

/// Open-addressing set of nonzero 64-bit keys, sharded for concurrent insert.
class KeySet {
public:
  explicit KeySet(std::size_t reserve_total = 1 << 12) {
    for (auto& s : shards_) s.init(std::max<std::size_t>(16, reserve_total / kShards));
  }

  // returns true when the key was newly inserted
  bool insert(std::uint64_t key) {
    Shard& s = shards_[shard_of(key)];
    std::lock_guard<std::mutex> lock(s.mu);
    return s.insert(key);
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& s : shards_) total += s.count;
    return total;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& s : shards_)
      for (std::uint64_t k : s.slots)
        if (k) f(k);
  }

private:
  static constexpr int kShards = 64;

  struct Shard {
    std::vector<std::uint64_t> slots;
    std::size_t count = 0;
    std::mutex mu;

    void init(std::size_t cap) {
      std::size_t c = 16;
      while (c < cap) c <<= 1;
      slots.assign(c, 0);
      count = 0;
    }
    bool insert(std::uint64_t key) {
      if ((count + 1) * 5 > slots.size() * 3) grow();
      std::size_t mask = slots.size() - 1;
      std::size_t i = mix(key) & mask;
      while (slots[i]) {
        if (slots[i] == key) return false;
        i = (i + 1) & mask;
      }
      slots[i] = key;
      ++count;
      return true;
    }
    void grow() {
      std::vector<std::uint64_t> old = std::move(slots);
      slots.assign(old.size() * 2, 0);
      std::size_t mask = slots.size() - 1;
      for (std::uint64_t k : old) {
        if (!k) continue;
        std::size_t i = mix(k) & mask;
        while (slots[i]) i = (i + 1) & mask;
        slots[i] = k;
      }
    }
  };

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    return x;
  }
  static int shard_of(std::uint64_t key) { return static_cast<int>(mix(key) >> 58) & (kShards - 1); }

  std::array<Shard, kShards> shards_;
};

struct CanonOut {
  std::uint64_t key;
  std::uint64_t aut;
  std::array<int, kCanonicalCap> perm;
};

inline CanonOut canon_search(const Tournament& t) {
  CanonSearch s;
  s.t = &t;
  s.n = t.order();
  s.dfs(0, 0, 0, 0);
  return {s.best, s.count, s.best_perm};
}

inline Tournament apply_perm(const Tournament& t, const std::array<int, kCanonicalCap>& perm) {
  int n = t.order();
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && t.arc(perm[i], perm[j])) rows[i] |= 1ULL << j;
  return Tournament(n, std::move(rows));
}

inline Tournament extend(const Tournament& parent, std::uint64_t out_mask) {
  int k = parent.order();
  std::vector<std::uint64_t> rows(k + 1, 0);
  for (int v = 0; v < k; ++v) rows[v] = parent.out_bits(v);
  rows[k] = out_mask;
  for (int v = 0; v < k; ++v)
    if (!((out_mask >> v) & 1)) rows[v] |= 1ULL << k;
  return Tournament(k + 1, std::move(rows));
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Progress {
  std::size_t next_parent = 0;
  std::uint64_t class_count = 0;
  std::uint64_t labeled_check = 0;
};

inline bool load_checkpoint(const CheckpointConfig& ckpt, KeySet& keys, Progress& prog) {
  namespace fs = std::filesystem;
  fs::path dir(ckpt.dir);
  fs::path kfile = dir / "keys.bin", pfile = dir / "progress.txt";
  if (!fs::exists(kfile) || !fs::exists(pfile)) return false;
  std::ifstream pin(pfile);
  if (!(pin >> prog.next_parent >> prog.class_count >> prog.labeled_check))
    throw input_error("checkpoint: malformed progress file");
  std::ifstream kin(kfile, std::ios::binary);
  std::uint64_t key;
  while (kin.read(reinterpret_cast<char*>(&key), sizeof key)) keys.insert(key);
  return true;
}

inline void flush_checkpoint(const CheckpointConfig& ckpt, const std::vector<std::uint64_t>& journal,
                             const Progress& prog) {
  namespace fs = std::filesystem;
  fs::path dir(ckpt.dir);
  fs::create_directories(dir);
  {
    std::ofstream kout(dir / "keys.bin", std::ios::binary | std::ios::app);
    for (std::uint64_t k : journal)
      kout.write(reinterpret_cast<const char*>(&k), sizeof k);
  }
  std::ofstream pout(dir / "progress.txt", std::ios::trunc);
  pout << prog.next_parent << ' ' << prog.class_count << ' ' << prog.labeled_check << '\n';
}

}  // namespace detail

/// Isomorph-free generation: extend each (n-1)-class by one vertex over all
/// 2^(n-1) arc orientations, canonicalize, and deduplicate by canonical key.
/// Visits exactly one representative per isomorphism class of order n.
/// Visitor callbacks may run concurrently when threads > 1.
inline EnumerationSummary enumerate(int n, const ClassVisitor& visit, int threads = 1,
                                    const CheckpointConfig* ckpt = nullptr) {
  if (n < 1 || n > kEnumCap)
    throw cap_error("enumerate: order must be in [1," + std::to_string(kEnumCap) + "]");
  auto t0 = std::chrono::steady_clock::now();
  EnumerationSummary sum;
  sum.n = n;
  if (threads < 1) threads = 1;

  if (n == 1) {
    Tournament k1;
    if (visit) visit(k1, 1);
    sum.class_count = 1;
    sum.labeled_check = 1;
    sum.elapsed_sec = 1e-9;
    return sum;
  }

  std::vector<Tournament> level = {Tournament()};  // order 1
  for (int k = 2; k <= n; ++k) {
    bool top = k == n;
    detail::KeySet keys(top && n == 10 ? (1u << 24) : (1u << 12));
    detail::Progress prog;
    std::vector<std::uint64_t> journal;
    bool use_ckpt = top && ckpt != nullptr;
    if (use_ckpt) detail::load_checkpoint(*ckpt, keys, prog);

    std::vector<Tournament> next;
    std::mutex next_mu;
    std::atomic<std::uint64_t> classes{prog.class_count};
    std::atomic<std::uint64_t> labeled{prog.labeled_check};
    std::uint64_t fact = detail::factorial(k);
    std::uint64_t orientations = 1ULL << (k - 1);

    std::size_t block = use_ckpt ? static_cast<std::size_t>(std::max(1, ckpt->block_parents))
                                 : level.size();
    for (std::size_t start = prog.next_parent; start < level.size(); start += block) {
      std::size_t stop = std::min(level.size(), start + block);
      std::atomic<std::size_t> cursor{start};
      auto worker = [&]() {
        while (true) {
          std::size_t p = cursor.fetch_add(1);
          if (p >= stop) break;
          const Tournament& parent = level[p];
          for (std::uint64_t m = 0; m < orientations; ++m) {
            Tournament child = detail::extend(parent, m);
            detail::CanonOut c = detail::canon_search(child);
            if (!keys.insert(c.key)) continue;
            Tournament rep = detail::apply_perm(child, c.perm);
            classes.fetch_add(1, std::memory_order_relaxed);
            labeled.fetch_add(fact / c.aut, std::memory_order_relaxed);
            if (use_ckpt) {
              std::lock_guard<std::mutex> lock(next_mu);
              journal.push_back(c.key);
            }
            if (top) {
              if (visit) visit(rep, c.aut);
            } else {
              std::lock_guard<std::mutex> lock(next_mu);
              next.push_back(std::move(rep));
            }
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
      if (use_ckpt) {
        prog.next_parent = stop;
        prog.class_count = classes.load();
        prog.labeled_check = labeled.load();
        detail::flush_checkpoint(*ckpt, journal, prog);
        journal.clear();
      }
    }

    if (top) {
      sum.class_count = classes.load();
      sum.labeled_check = labeled.load();
    } else {
      level = std::move(next);
    }
  }
  sum.elapsed_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sum;
}

// ---------------------------------------------------------------------------
// Sweeps over the generated classes.

struct QuadCensus {
  EnumerationSummary summary;
  std::vector<Tournament> representatives;  // the quadrangular classes, key-sorted
};

inline QuadCensus count_quadrangular(int n, int threads = 1,
                                     const CheckpointConfig* ckpt = nullptr) {
  QuadCensus census;
  std::mutex mu;
  census.summary = enumerate(
      n,
      [&](const Tournament& rep, std::uint64_t) {
        if (is_quadrangular(rep)) {
          std::lock_guard<std::mutex> lock(mu);
          census.representatives.push_back(rep);
        }
      },
      threads, ckpt);
  census.summary.filter_name = "quadrangular";
  census.summary.filter_count = census.representatives.size();
  std::sort(census.representatives.begin(), census.representatives.end(),
            [](const Tournament& a, const Tournament& b) { return a.upper_bits() < b.upper_bits(); });
  return census;
}

/// Every 8-vertex class has gamma(T) <= 2 or gamma(dual(T)) <= 2.
inline bool verify_order2(int threads = 1) {
  std::atomic<bool> ok{true};
  enumerate(
      8,
      [&](const Tournament& rep, std::uint64_t) {
        if (!has_dominating_set(rep, 2) && !has_dominating_set(rep.dual(), 2))
          ok.store(false, std::memory_order_relaxed);
      },
      threads);
  return ok.load();
}

/// Every 9-vertex class with min out-degree >= 2 fails out-quadrangularity,
/// and dually with insets.
inline bool verify_order3(int threads = 1) {
  std::atomic<bool> ok{true};
  enumerate(
      9,
      [&](const Tournament& rep, std::uint64_t) {
        QuadReport q = quadrangularity(rep);
        if (rep.min_out_degree() >= 2 && q.out_quadrangular) ok.store(false);
        if (rep.min_in_degree() >= 2 && q.in_quadrangular) ok.store(false);
      },
      threads);
  return ok.load();
}

/// Exactly one 7-vertex class has domination number 3, and it is QR7.
inline bool verify_unique_gamma3(int threads = 1) {
  std::atomic<std::uint64_t> gamma3{0};
  std::atomic<bool> all_qr7{true};
  std::uint64_t qr7_key = canonical_key64(Tournament::qr_tournament(7));
  enumerate(
      7,
      [&](const Tournament& rep, std::uint64_t) {
        if (!has_dominating_set(rep, 2)) {
          gamma3.fetch_add(1);
          if (canonical_key64(rep) != qr7_key) all_qr7.store(false);
        }
      },
      threads);
  return gamma3.load() == 1 && all_qr7.load();
}

enum class Elimination { ZERO_ROW_OR_COL, STRONG_QUAD_WITNESS, SURVIVOR };

struct FinalTheoremResult {
  bool holds = false;
  std::uint64_t candidates = 0;  // quadrangular classes examined
  std::uint64_t eliminated_by_rank = 0;
  std::uint64_t eliminated_by_strong_quad = 0;
  std::vector<Tournament> survivors;  // should be exactly the 3-cycle
};

/// Every quadrangular class of order <= n_max other than the 3-cycle must be
/// eliminated: an all-zero row/column in its adjacency pattern, or a strong
/// quadrangularity witness.
inline FinalTheoremResult verify_final_theorem(int n_max, int threads = 1) {
  FinalTheoremResult res;
  std::mutex mu;
  for (int n = 1; n <= n_max; ++n) {
    enumerate(
        n,
        [&](const Tournament& rep, std::uint64_t) {
          if (!is_quadrangular(rep)) return;
          Elimination e = Elimination::SURVIVOR;
          if (rep.min_out_degree() == 0 || rep.min_in_degree() == 0)
            e = Elimination::ZERO_ROW_OR_COL;
          else if (is_strongly_quadrangular(rep).has_value())
            e = Elimination::STRONG_QUAD_WITNESS;
          std::lock_guard<std::mutex> lock(mu);
          ++res.candidates;
          if (e == Elimination::ZERO_ROW_OR_COL)
            ++res.eliminated_by_rank;
          else if (e == Elimination::STRONG_QUAD_WITNESS)
            ++res.eliminated_by_strong_quad;
          else
            res.survivors.push_back(rep);
        },
        threads);
  }
  Tournament cycle3 = Tournament::rotational(RotationalSymbol(3, {1}));
  res.holds = res.survivors.size() == 1 && is_isomorphic(res.survivors[0], cycle3);
  return res;
}

}  // namespace tq
