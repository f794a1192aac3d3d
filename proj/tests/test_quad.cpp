#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "tq/pattern.hpp"
#include "tq/quad.hpp"

using namespace tq;

namespace {

// QR7 on {0..6} plus an arc x->y where y beats the rest and the rest beat x
Tournament qr7_xy() {
  Tournament qr = Tournament::qr_tournament(7);
  std::vector<std::uint64_t> rows(9, 0);
  for (int v = 0; v < 7; ++v) rows[v] = qr.out_bits(v) | (1ULL << 7);
  rows[7] = 1ULL << 8;
  rows[8] = (1ULL << 7) - 1;
  return Tournament(9, rows);
}

// the one 8-vertex class where both orientations need three dominators
Tournament stubborn8() {
  return Tournament::from_arc_bits(8, "1111000111000101101101011101");
}

}  // namespace

TEST_CASE("quadrangularity witnesses") {
  Tournament trans = Tournament::from_arc_bits(3, "111");
  QuadReport r = quadrangularity(trans);
  CHECK_FALSE(r.out_quadrangular);
  REQUIRE(r.out_witness.has_value());
  CHECK(r.out_witness->u == 0);
  CHECK(r.out_witness->v == 1);
  CHECK(r.out_witness->shared == 2);
  REQUIRE(r.in_witness.has_value());
  CHECK_FALSE(r.quadrangular());

  CHECK(is_quadrangular(Tournament::rotational(RotationalSymbol(3, {1}))));
  CHECK_FALSE(is_quadrangular(Tournament::qr_tournament(7)));
  CHECK(is_quadrangular(Tournament::qr_tournament(11)));
  CHECK(is_quadrangular(Tournament()));  // single vertex
}

TEST_CASE("quadrangularity is self-dual") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Tournament t = Tournament::random(9, seed);
    QuadReport r = quadrangularity(t);
    QuadReport d = quadrangularity(t.dual());
    CHECK(r.out_quadrangular == d.in_quadrangular);
    CHECK(r.in_quadrangular == d.out_quadrangular);
  }
}

TEST_CASE("digraph and pattern views agree") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Tournament t = Tournament::random(10, seed);
    CHECK(quadrangularity(t).quadrangular() ==
          pattern_combinatorially_orthogonal(pattern_of(t)).combinatorially_orthogonal);
  }
}

TEST_CASE("strong quadrangularity witness for the QR7 extension") {
  Tournament t9 = qr7_xy();
  CHECK(is_quadrangular(t9));
  auto w = is_strongly_quadrangular(t9);
  REQUIRE(w.has_value());
  CHECK(w->side == Side::OUT);
  CHECK(w->set_s.members() == std::vector<int>{0, 1, 5});
  CHECK(w->shared_union.members() == std::vector<int>{2, 7});
  CHECK(w->union_size() == 2);

  // recount the witness directly
  auto [qualifies, uni] = strong_quad_subset(t9, Side::OUT, w->set_s);
  CHECK(qualifies);
  CHECK(uni == w->shared_union);
}

TEST_CASE("strong implies plain quadrangularity") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Tournament t = Tournament::random(8, seed);
    if (!is_strongly_quadrangular(t).has_value()) CHECK(is_quadrangular(t));
  }
}

TEST_CASE("the triple blow-up of the 3-cycle is strongly quadrangular") {
  Tournament c3 = Tournament::rotational(RotationalSymbol(3, {1}));
  Tournament rt5 = Tournament::rotational(RotationalSymbol(5, {1, 2}));
  Tournament t15 = Tournament::compose(c3, {rt5, rt5, rt5});
  CHECK_FALSE(is_strongly_quadrangular(t15).has_value());
  CHECK(is_quadrangular(t15));
}

TEST_CASE("strong quadrangularity subset search is capped") {
  CHECK_THROWS_AS(is_strongly_quadrangular(Tournament::random(25, 0)), cap_error);
}

TEST_CASE("domination numbers") {
  CHECK(domination_number(Tournament::rotational(RotationalSymbol(3, {1}))).gamma == 2);
  DominationResult qr = domination_number(Tournament::qr_tournament(7));
  CHECK(qr.gamma == 3);
  CHECK(domination_number(Tournament::qr_tournament(7).dual()).gamma == 3);
  CHECK(domination_number(Tournament::qr_tournament(7).add_transmitter()).gamma == 1);
  CHECK(domination_number(Tournament()).gamma == 1);

  CHECK(has_dominating_set(Tournament::qr_tournament(7), 3));
  CHECK_FALSE(has_dominating_set(Tournament::qr_tournament(7), 2));
}

TEST_CASE("domination witnesses actually dominate") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Tournament t = Tournament::random(10, seed);
    DominationResult r = domination_number(t);
    CHECK(r.witness.size() == r.gamma);
    std::uint64_t cov = r.witness.bits;
    for (int v : r.witness.members()) cov |= t.out_bits(v);
    CHECK(cov == VertexSet::full(10).bits);
    if (r.gamma > 1) CHECK_FALSE(has_dominating_set(t, r.gamma - 1));
  }
}

TEST_CASE("one 8-tournament resists domination by pairs in both orientations") {
  Tournament t = stubborn8();
  t.check_invariants();
  CHECK_FALSE(has_dominating_set(t, 2));
  CHECK_FALSE(has_dominating_set(t.dual(), 2));
  CHECK(domination_number(t).gamma == 3);
  CHECK(domination_number(t.dual()).gamma == 3);
  // deleting its first vertex leaves QR7
  Tournament sub = t.removed(VertexSet::of({0}, 8));
  CHECK(domination_number(sub).gamma == 3);
}

TEST_CASE("rotational difference criterion matches the direct check") {
  for (int n : {5, 7, 9, 11, 13}) {
    int k = (n - 1) / 2;
    for (int pick = 0; pick < (1 << k); ++pick) {
      std::vector<int> residues;
      for (int d = 1; d <= k; ++d) residues.push_back((pick >> (d - 1)) & 1 ? d : n - d);
      RotationalSymbol sym(n, residues);
      CHECK(rotational_quadrangular(sym).quadrangular ==
            is_quadrangular(Tournament::rotational(sym)));
    }
  }
}

TEST_CASE("witness table for the 13-vertex symbol") {
  RotationalQuadResult r = rotational_quadrangular(RotationalSymbol(13, {1, 2, 3, 5, 6, 9}));
  CHECK(r.quadrangular);
  REQUIRE(r.witnesses.size() == 6);
  auto has = [&](int m, int i, int j) {
    const auto& rows = r.witnesses[m - 1];
    return std::find(rows.begin(), rows.end(), std::make_pair(i, j)) != rows.end();
  };
  CHECK((has(1, 2, 1) && has(1, 3, 2)));
  CHECK((has(2, 3, 1) && has(2, 5, 3)));
  CHECK((has(3, 5, 2) && has(3, 6, 3)));
  CHECK((has(4, 6, 2) && has(4, 9, 5)));
  CHECK((has(5, 1, 9) && has(5, 6, 1)));
  CHECK((has(6, 2, 9) && has(6, 9, 3)));
  for (const auto& rows : r.witnesses) CHECK(rows.size() >= 2);

  CHECK_THROWS_AS(rotational_quadrangular(RotationalSymbol(3, {1})), input_error);
}

TEST_CASE("characterization checkers demand their hypotheses") {
  Tournament qr7 = Tournament::qr_tournament(7);
  CHECK_THROWS_AS(check_tourn7(qr7), hypothesis_error);              // no out-degree-1 vertex
  CHECK_THROWS_AS(check_tourn7(Tournament::rotational(RotationalSymbol(3, {1}))),
                  hypothesis_error);                                 // too small
  CHECK_THROWS_AS(check_tourn2(qr7), hypothesis_error);              // no transmitter
  CHECK_THROWS_AS(check_tourn3(qr7), hypothesis_error);
  CHECK_THROWS_AS(check_tourn3(qr7.add_transmitter().add_receiver()), hypothesis_error);
  CHECK_THROWS_AS(check_tourn4(qr7), hypothesis_error);
  CHECK_THROWS_AS(check_tourn4(qr7.add_transmitter().add_receiver()), hypothesis_error);
}

TEST_CASE("characterization checkers on the known constructions") {
  Tournament t9 = qr7_xy();
  CHECK(check_tourn7(t9));
  CHECK(is_quadrangular(t9));

  Tournament both = Tournament::qr_tournament(7).add_transmitter().add_receiver();
  CHECK(check_tourn2(both));
  CHECK(is_quadrangular(both));

  Tournament tx11 = Tournament::qr_tournament(11).add_transmitter();
  CHECK(check_tourn3(tx11));
  CHECK(is_quadrangular(tx11));
  CHECK(check_tourn4(tx11.dual()));
  CHECK(is_quadrangular(tx11.dual()));
}

TEST_CASE("structural audit is clean on quadrangular instances") {
  CHECK(structural_lemma_audit(Tournament::qr_tournament(11)).empty());
  CHECK(structural_lemma_audit(Tournament::rotational(RotationalSymbol(3, {1}))).empty());
  CHECK(structural_lemma_audit(qr7_xy()).empty());
}
