#include <stdexcept>

#include "doctest.h"
#include "pigeon/formulas.hpp"
#include "pigeon/game.hpp"
#include "pigeon/resolution.hpp"
#include "pigeon/saturation.hpp"

using namespace pigeon;

namespace {

CnfFormula unit_clash() {
  CnfFormula f;
  f.family = Family::custom;
  int32_t x = f.vars.intern(VarId{VarKind::X, 1, 1});
  f.clauses.push_back(make_clause({make_lit(x, false)}));
  f.clauses.push_back(make_clause({make_lit(x, true)}));
  return f;
}

}  // namespace

TEST_CASE("saturate: unit clash refutable under width bound 0") {
  CnfFormula f = unit_clash();
  SaturationBound b;
  b.width = 0;  // inputs are exempt, so only the empty clause is admitted
  SaturationResult r = saturate_bounded(f, b);
  CHECK(r.refutable);
  CHECK(r.derived == 1);
}

TEST_CASE("saturate: php(2) refutable under width bound 1") {
  CnfFormula f = gen_php(2);
  SaturationBound b;
  b.width = 1;
  SaturationResult r = saturate_bounded(f, b);
  CHECK(r.refutable);
  // Hand-walk of the shortest-first order: {-x[2,1]}, {-x[1,1]}, {} and stop.
  CHECK(r.derived == 3);
}

TEST_CASE("saturate: tphp(4) under pigeon-width bounds") {
  CnfFormula f = gen_tphp(4);
  SaturationBound narrow;
  narrow.pigeon_width = 2;  // below the k-1 lower bound: closure has no empty clause
  SaturationResult r2 = saturate_bounded(f, narrow);
  CHECK_FALSE(r2.refutable);
  CHECK(r2.derived == 31382);  // full-closure snapshot; the engine is deterministic

  SaturationBound wide;
  wide.pigeon_width = 4;  // every clause mentions at most k rows, so no pruning
  SaturationResult r4 = saturate_bounded(f, wide);
  CHECK(r4.refutable);

  SaturationOptions subs;
  subs.subsumption = true;
  SaturationResult r2s = saturate_bounded(f, narrow, subs);
  CHECK_FALSE(r2s.refutable);
  CHECK(r2s.derived <= r2.derived);
}

TEST_CASE("saturate: budget refusal") {
  CnfFormula f = gen_tphp(4);
  SaturationBound b;
  b.pigeon_width = 4;
  SaturationOptions opts;
  opts.max_derived = 5;
  CHECK_THROWS_AS(saturate_bounded(f, b, opts), std::runtime_error);
}

TEST_CASE("extract_bounded_refutation: unit clash gives the 3-step proof") {
  CnfFormula f = unit_clash();
  SaturationBound b;
  b.width = 0;
  ResolutionProof p = extract_bounded_refutation(f, b);
  REQUIRE(p.is_refutation());
  ProofMetrics m = verify_resolution(p, f);
  CHECK(m.size == 3);
  CHECK(m.width == 1);
}

TEST_CASE("extract_bounded_refutation: tphp(4) refutation verifies") {
  CnfFormula f = gen_tphp(4);
  SaturationBound b;
  b.pigeon_width = 4;
  ResolutionProof p = extract_bounded_refutation(f, b);
  REQUIRE(p.is_refutation());
  ProofMetrics m = verify_resolution(p, f);
  CHECK(m.pigeon_width <= 4);
  CHECK(m.pigeon_width >= 3);  // every tphp(4) refutation needs pigeon-width k-1

  SaturationBound hopeless;
  hopeless.pigeon_width = 0;  // php(2) admits no derived clause at all
  CHECK_THROWS_AS(extract_bounded_refutation(gen_php(2), hopeless), std::runtime_error);
}

TEST_CASE("prosecutor_game: pinned examples") {
  CnfFormula f = unit_clash();
  ResolutionProof p;
  p.add_axiom(f, 0);
  p.add_axiom(f, 1);
  p.add_resolve(0, 1, 0);
  BlockMap one = single_block(f);
  CHECK(prosecutor_game(p, f, &one) == 1);

  ResolutionProof nonref;
  nonref.add_axiom(f, 0);
  CHECK_THROWS_AS(prosecutor_game(nonref, f), std::runtime_error);
}

TEST_CASE("prosecutor_game: tphp(4) defendant forces k rows on record") {
  CnfFormula f = gen_tphp(4);
  SaturationBound b;
  b.pigeon_width = 4;
  ResolutionProof p = extract_bounded_refutation(f, b);
  ProofMetrics m = verify_resolution(p, f);
  int32_t got = prosecutor_game(p, f);
  CHECK(got >= 4);
  CHECK(got <= m.pigeon_width + 1);
}

TEST_CASE("prosecutor_game: bounded by pigeon-width plus one") {
  CnfFormula f = gen_erphp(4, 4);
  ResolutionProof p = construct_erphp_refutation(4, 4);
  ProofMetrics m = verify_resolution(p, f);
  int32_t got = prosecutor_game(p, f);
  CHECK(got >= 1);
  CHECK(got <= m.pigeon_width + 1);
}
