#pragma once

#include <nlohmann/json.hpp>

#include "tq/enumerate.hpp"
#include "tq/ortho.hpp"
#include "tq/pattern.hpp"
#include "tq/quad.hpp"
#include "tq/sampling.hpp"
#include "tq/tournament.hpp"

namespace tq {

using nlohmann::json;

inline void to_json(json& j, const VertexSet& s) { j = s.members(); }

inline void to_json(json& j, const PairWitness& w) {
  j = json{{"u", w.u}, {"v", w.v}, {"shared", w.shared}};
}

inline void to_json(json& j, const QuadReport& r) {
  j = json{{"out_quadrangular", r.out_quadrangular},
           {"in_quadrangular", r.in_quadrangular},
           {"quadrangular", r.quadrangular()}};
  if (r.out_witness) j["out_witness"] = *r.out_witness;
  if (r.in_witness) j["in_witness"] = *r.in_witness;
}

inline void to_json(json& j, const StrongQuadWitness& w) {
  j = json{{"side", w.side == Side::OUT ? "out" : "in"},
           {"set", w.set_s},
           {"shared_union", w.shared_union},
           {"union_size", w.union_size()}};
}

inline void to_json(json& j, const DominationResult& d) {
  j = json{{"gamma", d.gamma}, {"witness", d.witness}};
}

inline void to_json(json& j, const RotationalQuadResult& r) {
  j = json{{"quadrangular", r.quadrangular}};
  json rows = json::array();
  for (std::size_t m = 0; m < r.witnesses.size(); ++m) {
    json subsets = json::array();
    for (auto [i, k] : r.witnesses[m]) subsets.push_back(json::array({i, k}));
    rows.push_back(json{{"m", m + 1}, {"subsets", subsets}});
  }
  j["witness_table"] = rows;
}

inline void to_json(json& j, const CombOrthResult& r) {
  j = json{{"combinatorially_orthogonal", r.combinatorially_orthogonal}};
  if (r.witness)
    j["witness"] = json{{"kind", r.witness->columns ? "columns" : "rows"},
                        {"a", r.witness->a},
                        {"b", r.witness->b},
                        {"shared", r.witness->shared}};
}

inline void to_json(json& j, const EnumerationSummary& s) {
  j = json{{"n", s.n},
           {"class_count", s.class_count},
           {"labeled_check", s.labeled_check},
           {"orbit_identity_holds", s.orbit_identity_holds()},
           {"elapsed_sec", s.elapsed_sec}};
  if (!s.filter_name.empty()) {
    j["filter_name"] = s.filter_name;
    j["filter_count"] = s.filter_count;
  }
}

inline void to_json(json& j, const SampleEstimate& e) {
  j = json{{"n", e.n},
           {"trials", e.trials},
           {"non_quadrangular", e.non_quadrangular},
           {"fraction", e.fraction},
           {"ci_low", e.wilson_ci.low},
           {"ci_high", e.wilson_ci.high},
           {"bound", e.bound},
           {"seed", e.seed}};
}

inline void to_json(json& j, const OrthoSearchResult& r) {
  j = json{{"status", r.status == OrthoSearchResult::Status::SUCCESS ? "success" : "failure"},
           {"orthogonality_residual", r.orthogonality_residual},
           {"pattern_residual", r.pattern_residual},
           {"min_support_entry", r.min_support_entry},
           {"restarts_used", r.restarts_used},
           {"iterations_used", r.iterations_used}};
  if (r.status == OrthoSearchResult::Status::SUCCESS) {
    json rows = json::array();
    for (int i = 0; i < r.matrix.rows(); ++i) {
      json row = json::array();
      for (int c = 0; c < r.matrix.cols(); ++c) row.push_back(r.matrix(i, c));
      rows.push_back(row);
    }
    j["matrix"] = rows;
  }
}

inline void to_json(json& j, const RatioFact& f) {
  std::vector<int> cols;
  for (std::uint64_t b = f.cols_j; b;) {
    cols.push_back(std::countr_zero(b));
    b &= b - 1;
  }
  j = json{{"row_a", f.row_a}, {"row_b", f.row_b}, {"cols_j", cols}};
  if (f.pivot_col >= 0)
    j["pivot_col"] = f.pivot_col;
  else
    j["combined_from"] = json::array({f.from_a, f.from_b});
}

inline void to_json(json& j, const DependencyCertificate& c) {
  std::vector<int> common;
  for (std::uint64_t b = c.contra_common_support; b;) {
    common.push_back(std::countr_zero(b));
    b &= b - 1;
  }
  j = json{{"side", c.side == DependencyCertificate::CertSide::ROWS ? "rows" : "columns"},
           {"facts", c.facts},
           {"contradiction_fact", c.contra_fact},
           {"contradiction_common_support", common}};
}

}  // namespace tq
