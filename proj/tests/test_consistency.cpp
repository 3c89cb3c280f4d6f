#include "doctest.h"

#include <cstdint>

#include "pigeon/consistency.hpp"
#include "pigeon/formulas.hpp"
#include "pigeon/polynomial.hpp"
#include "pigeon/saturation.hpp"
#include "pigeon/simplex.hpp"

using namespace pigeon;

namespace {

VarId xv(int32_t i, int32_t j) { return VarId{VarKind::X, i, j}; }
VarId qv(int32_t v, int32_t w) { return VarId{VarKind::Q, v, w}; }
VarId zv(int32_t v, int32_t w) { return VarId{VarKind::Z, v, w}; }

// {x[1,1]}, {~x[1,1]}: the smallest refutable system.
CnfFormula unit_clash() {
  CnfFormula f;
  int32_t x = f.vars.intern(xv(1, 1));
  f.clauses.push_back(make_clause({make_lit(x, false)}));
  f.clauses.push_back(make_clause({make_lit(x, true)}));
  return f;
}

// Number of injective maps from an r-set into an n-set.
int64_t perm(int64_t n, int64_t r) {
  int64_t p = 1;
  for (int64_t t = 0; t < r; ++t) p *= n - t;
  return p;
}

// Marginal of `big` on the scope of `small` at assignment mu, by direct
// support summation; the independent H2 oracle for the closed-form tests.
Rational project_marginal(const LocalDistribution& big, const LocalDistribution& small,
                          uint64_t mu) {
  std::vector<int32_t> pos;
  for (const VarId& v : small.vars) {
    auto it = std::lower_bound(big.vars.begin(), big.vars.end(), v);
    REQUIRE(it != big.vars.end());
    REQUIRE(*it == v);
    pos.push_back(static_cast<int32_t>(it - big.vars.begin()));
  }
  Rational total = 0;
  for (const auto& [mask, p] : big.support) {
    uint64_t sub = 0;
    for (size_t i = 0; i < pos.size(); ++i)
      if (mask >> pos[i] & 1) sub |= uint64_t{1} << i;
    if (sub == mu) total += p;
  }
  return total;
}

bool any_contains(const std::vector<std::string>& lines, const std::string& what) {
  for (const std::string& s : lines)
    if (s.find(what) != std::string::npos) return true;
  return false;
}

// Distribution on one scope: every variable set with its probability.
LocalDistribution point_mass(std::vector<VarId> vars,
                             std::vector<std::pair<uint64_t, Rational>> support) {
  LocalDistribution d;
  d.vars = std::move(vars);
  d.support = std::move(support);
  return d;
}

}  // namespace

TEST_CASE("matching_family pins the uniform injective matchings") {
  DistributionFamily m3 = matching_family(3);
  CHECK(m3.pigeon_keyed);
  CHECK(m3.by_pigeons.size() == 7);  // subsets of [3] with at most 2 pigeons

  const LocalDistribution& empty = m3.by_pigeons.at({});
  CHECK(empty.vars.empty());
  REQUIRE(empty.support.size() == 1);
  CHECK(empty.support[0] == std::pair<uint64_t, Rational>{0, 1});

  // One pigeon, two holes: two injective maps of probability 1/2 each.
  const LocalDistribution& one = m3.by_pigeons.at({1});
  CHECK(one.vars == std::vector<VarId>{qv(1, 1), qv(1, 2)});
  REQUIRE(one.support.size() == 2);
  CHECK(one.support[0] == std::pair<uint64_t, Rational>{1, Rational(1, 2)});
  CHECK(one.support[1] == std::pair<uint64_t, Rational>{2, Rational(1, 2)});

  // k=4 brings the chain variable z[v,1] into the scope.
  DistributionFamily m4 = matching_family(4);
  const LocalDistribution& single = m4.by_pigeons.at({1});
  CHECK(single.vars == std::vector<VarId>{qv(1, 1), qv(1, 2), qv(1, 3), zv(1, 1)});

  // Two pigeons, three holes: 3*2 = 6 maps of probability 1/6. The map
  // phi(1)=2, phi(2)=1 sets q[1,2], q[2,1] and z[1,1] (phi(1) > 1).
  const LocalDistribution& pair = m4.by_pigeons.at({1, 2});
  REQUIRE(pair.support.size() == 6);
  for (const auto& [mask, p] : pair.support) CHECK(p == Rational(1, 6));
  CHECK(pair.vars == std::vector<VarId>{qv(1, 1), qv(1, 2), qv(1, 3), qv(2, 1), qv(2, 2),
                                        qv(2, 3), zv(1, 1), zv(2, 1)});
  bool found = false;
  for (const auto& [mask, p] : pair.support) found |= mask == (2u | 8u | 64u);
  CHECK(found);

  // k=2 collapses to bare q[v,1] scopes.
  DistributionFamily m2 = matching_family(2);
  CHECK(m2.by_pigeons.size() == 3);
  CHECK(m2.by_pigeons.at({2}).vars == std::vector<VarId>{qv(2, 1)});
  CHECK(m2.by_pigeons.at({2}).support ==
        std::vector<std::pair<uint64_t, Rational>>{{1, 1}});

  CHECK_THROWS(matching_family(1));
}

TEST_CASE("the matching family is consistent for the three-cnf pigeonhole") {
  for (int32_t k = 3; k <= 5; ++k) {
    DistributionFamily fam = matching_family(k);
    ConsistencyReport rep = check_consistency(fam, gen_tphp(k), HSpec{true, k - 1});
    for (const std::string& v : rep.violations) INFO(v);
    CHECK(rep.ok());
  }
}

TEST_CASE("matching marginals obey the closed-form injective counts") {
  for (int32_t k = 3; k <= 5; ++k) {
    DistributionFamily fam = matching_family(k);
    for (const auto& [ka, da] : fam.by_pigeons) {
      const int64_t a = static_cast<int64_t>(ka.size());
      for (const auto& [mu, p] : da.support) CHECK(p == Rational(1, perm(k - 1, a)));
      for (const auto& [kb, db] : fam.by_pigeons) {
        if (ka.size() >= kb.size()) continue;
        if (!std::includes(kb.begin(), kb.end(), ka.begin(), ka.end())) continue;
        const int64_t b = static_cast<int64_t>(kb.size());
        // Each of the perm(k-1-a, b-a) injective extensions carries mass
        // 1/perm(k-1, b), so the marginal telescopes back to 1/perm(k-1, a).
        for (const auto& [mu, p] : da.support) {
          const Rational got = project_marginal(db, da, mu);
          CHECK(got == Rational(perm(k - 1 - a, b - a), perm(k - 1, b)));
          CHECK(got == p);
        }
      }
    }
  }
}

TEST_CASE("check_consistency reports violations as data") {
  CnfFormula tphp3 = gen_tphp(3);

  SUBCASE("a bumped probability breaks normalization and the marginals") {
    DistributionFamily fam = matching_family(3);
    fam.by_pigeons.at({1}).support[0].second += Rational(1, 100);
    ConsistencyReport rep = check_consistency(fam, tphp3, HSpec{true, 2});
    CHECK(!rep.ok());
    CHECK(any_contains(rep.violations, "probabilities sum to 101/100"));
    CHECK(any_contains(rep.violations, "H2:"));
  }

  SUBCASE("a missing key is flagged by name") {
    DistributionFamily fam = matching_family(3);
    fam.by_pigeons.erase({1, 2});
    ConsistencyReport rep = check_consistency(fam, tphp3, HSpec{true, 2});
    CHECK(any_contains(rep.violations, "missing key {1,2}"));
  }

  SUBCASE("a single-key family has nothing to disagree about") {
    DistributionFamily fam;
    fam.pigeon_keyed = false;
    fam.by_vars[{}] = point_mass({}, {{0, 1}});
    CHECK(check_consistency(fam, gen_php(3), HSpec{false, 0}).ok());
  }

  SUBCASE("support falsifying a visible clause is an H1 violation") {
    CnfFormula f;
    int32_t x = f.vars.intern(xv(1, 1));
    f.clauses.push_back(make_clause({make_lit(x, false)}));
    DistributionFamily fam;
    fam.pigeon_keyed = false;
    fam.by_vars[{}] = point_mass({}, {{0, 1}});
    fam.by_vars[{xv(1, 1)}] = point_mass({xv(1, 1)}, {{0, 1}});  // x = 0
    ConsistencyReport rep = check_consistency(fam, f, HSpec{false, 1});
    CHECK(any_contains(rep.violations, "H1: key {x[1,1]} assignment 0 falsifies clause 0"));
  }

  SUBCASE("scheme mismatches stop the audit") {
    ConsistencyReport rep = check_consistency(matching_family(3), tphp3, HSpec{false, 2});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0] == "key scheme does not match the H specification");
  }
}

TEST_CASE("family text round trips") {
  DistributionFamily m4 = matching_family(4);
  const std::string text = family_to_text(m4);
  CHECK(text.find("family pigeon-keyed\n") == 0);
  CHECK(text.find("key {} vars {}\nassign - prob 1/1\n") != std::string::npos);
  CHECK(text.find("key {1} vars {q[1,1],q[1,2],q[1,3],z[1,1]}") != std::string::npos);
  DistributionFamily back = parse_family(text);
  CHECK(back.pigeon_keyed);
  CHECK(family_to_text(back) == text);

  SetFunctional coins;
  coins.values[{}] = 1;
  coins.values[{xv(1, 1)}] = Rational(1, 2);
  coins.values[{xv(1, 2)}] = Rational(1, 2);
  coins.values[{xv(1, 1), xv(1, 2)}] = Rational(1, 4);
  DistributionFamily vf = moebius_family(coins);
  CHECK(family_to_text(parse_family(family_to_text(vf))) == family_to_text(vf));

  CHECK_THROWS_WITH(parse_family(""), doctest::Contains("missing family header"));
  CHECK_THROWS_WITH(parse_family("family diagonal-keyed\n"),
                    doctest::Contains("unknown key scheme"));
  CHECK_THROWS_WITH(parse_family("family varset-keyed\nassign 1 prob 1/2\n"),
                    doctest::Contains("assign before any key"));
  CHECK_THROWS_WITH(parse_family("family varset-keyed\nkey {x[1,1]}\nassign 01 prob 1\n"),
                    doctest::Contains("assignment width"));
  CHECK_THROWS_WITH(parse_family("family pigeon-keyed\nkey {1}\n"),
                    doctest::Contains("vars clause"));
}

TEST_CASE("family_marginal evaluates conjunction probabilities") {
  DistributionFamily m4 = matching_family(4);
  CHECK(family_marginal(m4, {}) == 1);
  CHECK(family_marginal(m4, {qv(1, 1)}) == Rational(1, 3));
  CHECK(family_marginal(m4, {zv(1, 1)}) == Rational(2, 3));  // phi(1) > 1
  CHECK(family_marginal(m4, {qv(1, 1), qv(2, 1)}) == 0);     // injectivity
  CHECK(family_marginal(m4, {qv(1, 2), qv(2, 1)}) == Rational(1, 6));
  CHECK(family_marginal(m4, {qv(1, 1), qv(1, 1)}) == Rational(1, 3));  // multiset collapses

  CHECK_THROWS_WITH(family_marginal(m4, {qv(1, 1), qv(2, 1), qv(3, 2), qv(4, 3)}),
                    doctest::Contains("outside the family's index sets"));
  CHECK_THROWS_WITH(family_marginal(m4, {VarId{VarKind::R, 1, 0}}),
                    doctest::Contains("carries no pigeon block"));
}

TEST_CASE("moebius_family inverts independent coins") {
  SetFunctional a;
  a.values[{}] = 1;
  a.values[{xv(1, 1)}] = Rational(1, 2);
  a.values[{xv(1, 2)}] = Rational(1, 2);
  a.values[{xv(1, 1), xv(1, 2)}] = Rational(1, 4);
  DistributionFamily fam = moebius_family(a);
  CHECK(!fam.pigeon_keyed);
  CHECK(fam.by_vars.size() == 4);
  const LocalDistribution& both = fam.by_vars.at({xv(1, 1), xv(1, 2)});
  REQUIRE(both.support.size() == 4);
  for (const auto& [mask, p] : both.support) CHECK(p == Rational(1, 4));
  CHECK(family_marginal(fam, {xv(1, 1)}) == Rational(1, 2));

  // The family audits cleanly against a clause-free formula on the scope.
  CnfFormula f;
  f.vars.intern(xv(1, 1));
  f.vars.intern(xv(1, 2));
  CHECK(check_consistency(fam, f, HSpec{false, 2}).ok());

  SetFunctional bad = a;
  bad.values[{xv(1, 1), xv(1, 2)}] = Rational(3, 4);  // exceeds both marginals
  CHECK_THROWS_WITH(moebius_family(bad), doctest::Contains("negative mass"));
  SetFunctional off = a;
  off.values[{}] = 2;
  CHECK_THROWS_WITH(moebius_family(off), doctest::Contains("empty set to 1"));
}

TEST_CASE("refute_certificate_against_family locates the broken side") {
  CnfFormula f = unit_clash();
  PolynomialSystem S = sa_system(f);

  Certificate valid;
  valid.flavor = CertFlavor::sa;
  valid.target = poly_const(-1);
  valid.terms.push_back(CertTerm{1, {}, {}, CertBase::initial, 0, {}, {}});
  valid.terms.push_back(CertTerm{1, {}, {}, CertBase::initial, 1, {}, {}});

  // x true with probability 3/4: normalized, downward closed, H1-broken.
  DistributionFamily skewed;
  skewed.pigeon_keyed = false;
  skewed.by_vars[{}] = point_mass({}, {{0, 1}});
  skewed.by_vars[{xv(1, 1)}] =
      point_mass({xv(1, 1)}, {{0, Rational(1, 4)}, {1, Rational(3, 4)}});

  SUBCASE("syntactically broken certificates are rejected") {
    Certificate broken = valid;
    broken.terms[0].alpha = -1;
    RefuteReport rep = refute_certificate_against_family(broken, S, skewed);
    CHECK(rep.outcome == RefuteOutcome::certificate_invalid);
    CHECK(rep.detail.find("negative coefficient") != std::string::npos);
  }

  SUBCASE("non-refutation targets are rejected") {
    Certificate axiom = sim_axiom(f.clauses[0], f.vars, false, 0);
    RefuteReport rep = refute_certificate_against_family(axiom, S, skewed);
    CHECK(rep.outcome == RefuteOutcome::certificate_invalid);
    CHECK(rep.detail == "target is not the constant -1");
  }

  SUBCASE("a verifying refutation convicts the family") {
    RefuteReport rep = refute_certificate_against_family(valid, S, skewed);
    CHECK(rep.outcome == RefuteOutcome::family_inconsistent);
    CHECK(rep.detail.find("term 0") != std::string::npos);
    CHECK(rep.detail.find("negative family average -1/4") != std::string::npos);
  }

  SUBCASE("SAR certificates are twin-eliminated before averaging") {
    ResolutionProof p;
    const int32_t a0 = p.add_axiom(f, 0);
    const int32_t a1 = p.add_axiom(f, 1);
    p.add_resolve(a0, a1, 0);
    Certificate sar = simulate_resolution_sar(p, f, CertFlavor::sar);
    RefuteReport rep = refute_certificate_against_family(sar, S, skewed);
    CHECK(rep.outcome == RefuteOutcome::family_inconsistent);
  }

  SUBCASE("square terms are not averageable") {
    Certificate las = lasserre_php(2);
    PolynomialSystem S2 = sa_system(gen_php(2));
    CHECK_THROWS_WITH(refute_certificate_against_family(las, S2, skewed),
                      doctest::Contains("square terms"));
  }
}

TEST_CASE("the pigeon-rank theorem plays out against the matching family") {
  CnfFormula f = gen_tphp(4);
  PolynomialSystem S = sa_system(f);
  SaturationOptions opts;
  opts.subsumption = true;
  ResolutionProof proof = extract_bounded_refutation(f, SaturationBound{}, opts);
  Certificate cert = simulate_resolution_sar(proof, f, CertFlavor::sar);
  CHECK(verify_certificate(cert, S).pigeon_rank == 4);
  DistributionFamily fam = matching_family(4);

  // A genuine refutation must mention some 4-pigeon set: the family's
  // 3-pigeon index sets cannot average it.
  CHECK_THROWS_WITH(refute_certificate_against_family(cert, S, fam),
                    doctest::Contains("outside the family's index sets"));

  // Truncating to the terms of pigeon degree <= 3 forges a claimed
  // pigeon-rank-3 refutation; the verifier pins the forgery down.
  Certificate claimed = cert;
  claimed.terms.clear();
  for (const CertTerm& t : cert.terms)
    if (pigeon_degree(expand_term(t, S)) <= 3) claimed.terms.push_back(t);
  REQUIRE(claimed.terms.size() < cert.terms.size());
  RefuteReport rep = refute_certificate_against_family(claimed, S, fam);
  CHECK(rep.outcome == RefuteOutcome::certificate_invalid);
  CHECK(rep.detail.find("residual") != std::string::npos);
}

TEST_CASE("solve_feasibility certifies both answers exactly") {
  auto farkas_checks = [](const LinearSystem& sys, const FeasibilityResult& r) {
    REQUIRE(!r.feasible);
    Rational yb = 0;
    for (size_t i = 0; i < sys.rows.size(); ++i) {
      CHECK(r.farkas[i] >= 0);
      yb += r.farkas[i] * sys.rhs[i];
    }
    CHECK(yb > 0);
    for (int32_t j = 0; j < sys.cols; ++j) {
      Rational s = 0;
      for (size_t i = 0; i < sys.rows.size(); ++i) s += r.farkas[i] * sys.rows[i][j];
      CHECK(s == 0);
    }
  };
  auto point_checks = [](const LinearSystem& sys, const FeasibilityResult& r) {
    REQUIRE(r.feasible);
    for (size_t i = 0; i < sys.rows.size(); ++i) {
      Rational lhs = 0;
      for (int32_t j = 0; j < sys.cols; ++j) lhs += sys.rows[i][j] * r.point[j];
      CHECK(lhs >= sys.rhs[i]);
    }
  };

  LinearSystem window{1, {{1}, {-1}}, {}};
  window.rhs = {Rational(-5), Rational(3)};  // x >= -5, -x >= 3: negative range
  point_checks(window, solve_feasibility(window));

  LinearSystem clash{1, {{1}, {-1}}, {}};
  clash.rhs = {Rational(1), Rational(0)};  // x >= 1 and x <= 0
  farkas_checks(clash, solve_feasibility(clash));

  LinearSystem pinned{2, {{1, 0}, {-1, 0}, {1, 1}}, {}};
  pinned.rhs = {Rational(3), Rational(-3), Rational(7)};  // x = 3, x + y >= 7
  FeasibilityResult r = solve_feasibility(pinned);
  point_checks(pinned, r);
  CHECK(r.point[0] == 3);

  LinearSystem constants{0, {{}, {}}, {}};
  constants.rhs = {Rational(0), Rational(-1)};
  CHECK(solve_feasibility(constants).feasible);
  LinearSystem absurd{0, {{}}, {}};
  absurd.rhs = {Rational(2)};
  farkas_checks(absurd, solve_feasibility(absurd));

  LinearSystem empty{0, {}, {}};
  CHECK(solve_feasibility(empty).feasible);
}

TEST_CASE("decide_sa_rank refutes the unit contradiction at rank one") {
  CnfFormula f = unit_clash();
  SaRankDecision d0 = decide_sa_rank(f, 0);
  CHECK(!d0.refuted);  // rank zero sees no clause
  CHECK(d0.family.by_vars.size() == 1);

  SaRankDecision d1 = decide_sa_rank(f, 1);
  REQUIRE(d1.refuted);
  CHECK(verify_certificate(d1.refutation, sa_system(f)).rank == 1);

  // Refutability is monotone past the transition.
  for (int32_t k = 2; k <= 3; ++k) {
    SaRankDecision dk = decide_sa_rank(f, k);
    CHECK(dk.refuted);
    CHECK(verify_certificate(dk.refutation, sa_system(f)).rank <= k);
  }
}

TEST_CASE("decide_sa_rank returns audited families on satisfiable inputs") {
  CnfFormula f;
  const int32_t x = f.vars.intern(xv(1, 1));
  const int32_t y = f.vars.intern(xv(1, 2));
  const int32_t z = f.vars.intern(xv(1, 3));
  f.clauses.push_back(make_clause({make_lit(x, false), make_lit(y, false)}));
  f.clauses.push_back(make_clause({make_lit(y, true), make_lit(z, false)}));
  for (int32_t k = 2; k <= 3; ++k) {
    SaRankDecision d = decide_sa_rank(f, k);
    REQUIRE(!d.refuted);
    CHECK(d.family.by_vars.size() ==
          d.functional.values.size());  // one key per functional value
    ConsistencyReport rep = check_consistency(d.family, f, HSpec{false, k});
    for (const std::string& v : rep.violations) INFO(v);
    CHECK(rep.ok());
    CHECK(family_marginal(d.family, {}) == 1);
  }

  // A width-2 clause is invisible at rank 1, so the one-variable marginals
  // only have the unit clauses to respect.
  CnfFormula trio;
  const int32_t a = trio.vars.intern(xv(2, 1));
  const int32_t b = trio.vars.intern(xv(2, 2));
  trio.clauses.push_back(make_clause({make_lit(a, false), make_lit(b, false)}));
  trio.clauses.push_back(make_clause({make_lit(a, true)}));
  trio.clauses.push_back(make_clause({make_lit(b, true)}));
  SaRankDecision d1 = decide_sa_rank(trio, 1);
  CHECK(!d1.refuted);
  CHECK(family_marginal(d1.family, {xv(2, 1)}) == 0);
  for (int32_t k = 2; k <= 3; ++k) {
    SaRankDecision dk = decide_sa_rank(trio, k);
    REQUIRE(dk.refuted);
    CHECK(verify_certificate(dk.refutation, sa_system(trio)).rank <= k);
  }
}

TEST_CASE("decide_sa_rank finds the pigeonhole transition at rank three") {
  CnfFormula php3 = gen_php(3);
  SaRankDecision d1 = decide_sa_rank(php3, 1);
  CHECK(!d1.refuted);
  CHECK(d1.family.by_vars.size() == 7);
  SaRankDecision d2 = decide_sa_rank(php3, 2);
  CHECK(!d2.refuted);
  CHECK(d2.family.by_vars.size() == 22);

  // Three size-one marginals per hole must fit below 1 while the pigeon
  // clauses push their pairs above 1: infeasible from rank three on, and
  // the Farkas witness assembles into an exactly rank-three refutation.
  SaRankDecision d3 = decide_sa_rank(php3, 3);
  REQUIRE(d3.refuted);
  CHECK(verify_certificate(d3.refutation, sa_system(php3)).rank == 3);
}

TEST_CASE("the lp text pins the unit contradiction rows") {
  CnfFormula f = unit_clash();
  CHECK(sa_rank_lp_text(f, 1) ==
        "# rank-1 sherali-adams feasibility for custom: 1 unknowns a{X}, "
        "a{} = 1 substituted\n"
        "m {x[1,1]} {} : -1*a{x[1,1]} >= -1\n"
        "m {x[1,1]} {x[1,1]} : 1*a{x[1,1]} >= 0\n"
        "c 0 {x[1,1]} ones {} : 1*a{x[1,1]} >= 1\n"
        "c 1 {x[1,1]} ones {x[1,1]} : -1*a{x[1,1]} >= 0\n");
}

TEST_CASE("budget guards refuse oversized decisions") {
  CHECK_THROWS_WITH(decide_sa_rank(unit_clash(), -1), doctest::Contains("negative rank"));
  CHECK_THROWS_WITH(decide_sa_rank(unit_clash(), 5), doctest::Contains("desk-scale"));
  CHECK_THROWS_WITH(decide_sa_rank(gen_rphp(3, 3), 1), doctest::Contains("desk-scale"));
  CHECK_THROWS_WITH(sa_rank_lp_text(gen_php(4), 3), doctest::Contains("desk-scale"));
}
