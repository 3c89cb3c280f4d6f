#include "doctest.h"

#include <set>

#include "pigeon/dimacs.hpp"
#include "pigeon/formulas.hpp"
#include "sat_oracle.hpp"

using namespace pigeon;

namespace {

// Independent census oracle: counts clauses per family straight from the
// defining equation ranges, without touching the generators' loops.
int64_t census_clauses_erphp(int64_t k, int64_t n) {
  int64_t total = 0;
  total += k;                // PdefA
  total += k * (n - 4);      // PdefB, v in [2, n-3]
  total += k;                // PdefC
  total += n;                // QdefA
  total += n * (k - 4);      // QdefB, w in [k-4]
  total += n;                // QdefC
  total += n * k * (k - 1) / 2;  // Pinj over u<u'
  total += k * n;            // Pimage
  total += n * (n - 1) / 2;  // Rpair
  total += (k - 1) * n * (n - 1) / 2;  // Qinj
  return total;
}

int64_t census_vars_erphp(int64_t k, int64_t n) {
  return k * n + k * (n - 3) + n + n * (n - 1) / 2 + n * (k - 1) + n * (k - 3);
}

Clause find_clause(const CnfFormula& f, const std::vector<std::string>& lits) {
  std::vector<Lit> out;
  for (std::string s : lits) {
    bool negv = false;
    if (s[0] == '-') {
      negv = true;
      s = s.substr(1);
    }
    int32_t idx = f.vars.find(parse_var(s));
    REQUIRE(idx >= 0);
    out.push_back(make_lit(idx, negv));
  }
  return make_clause(std::move(out));
}

bool has_clause(const CnfFormula& f, const std::vector<std::string>& lits) {
  Clause c = find_clause(f, lits);
  for (const Clause& d : f.clauses)
    if (d == c) return true;
  return false;
}

}  // namespace

TEST_CASE("gen_php(2) matches the pinned example") {
  CnfFormula f = gen_php(2);
  CHECK(f.vars.size() == 2);
  CHECK(to_string(f.vars.name(0)) == "x[1,1]");
  CHECK(to_string(f.vars.name(1)) == "x[2,1]");
  REQUIRE(f.clauses.size() == 3);
  CHECK(f.clauses[0] == find_clause(f, {"x[1,1]"}));
  CHECK(f.clauses[1] == find_clause(f, {"x[2,1]"}));
  CHECK(f.clauses[2] == find_clause(f, {"-x[1,1]", "-x[2,1]"}));
}

TEST_CASE("gen_php clause order is pigeons by u then holes by (w,u,v)") {
  CnfFormula f = gen_php(3);
  CHECK(f.vars.size() == 6);
  REQUIRE(f.clauses.size() == 3 + 2 * 3);
  CHECK(f.clauses[0] == find_clause(f, {"x[1,1]", "x[1,2]"}));
  CHECK(f.clauses[3] == find_clause(f, {"-x[1,1]", "-x[2,1]"}));
  CHECK(f.clauses[4] == find_clause(f, {"-x[1,1]", "-x[3,1]"}));
  CHECK(f.clauses[5] == find_clause(f, {"-x[2,1]", "-x[3,1]"}));
  CHECK(f.clauses[6] == find_clause(f, {"-x[1,2]", "-x[2,2]"}));
}

TEST_CASE("gen_tphp(3) collapses the chain; k=2 rejected") {
  CnfFormula f = gen_tphp(3);
  CHECK(f.vars.size() == 6);
  REQUIRE(f.clauses.size() == 9);
  CHECK(f.clauses[0] == find_clause(f, {"q[1,1]", "q[1,2]"}));
  CHECK(has_clause(f, {"-q[1,1]", "-q[2,1]"}));
  CHECK_THROWS(gen_tphp(2));
}

TEST_CASE("gen_tphp(4) and gen_tphp(5) censuses") {
  CnfFormula f4 = gen_tphp(4);
  CHECK(f4.vars.size() == 12 + 4);
  CHECK(f4.clauses.size() == 8 + 18);
  CHECK(f4.clauses[0] == find_clause(f4, {"q[1,1]", "z[1,1]"}));
  CHECK(f4.clauses[4] == find_clause(f4, {"-z[1,1]", "q[1,2]", "q[1,3]"}));

  CnfFormula f5 = gen_tphp(5);
  CHECK(f5.vars.size() == 20 + 10);
  // Injectivity group has C(5,2) * 4 = 40 clauses.
  int64_t inj = 0;
  for (const Clause& c : f5.clauses)
    if (c.width() == 2 && lit_negative(c.lits[0]) && lit_negative(c.lits[1])) ++inj;
  CHECK(inj == 40);
  CHECK(f5.clauses.size() == 15 + 40);
  CHECK(has_clause(f5, {"-z[2,1]", "q[2,2]", "z[2,2]"}));
}

TEST_CASE("gen_rphp(2,3) has 17 clauses") {
  CnfFormula f = gen_rphp(2, 3);
  CHECK(f.vars.size() == 6 + 3 + 3);
  CHECK(f.clauses.size() == 17);
  CHECK(f.clauses[0] == find_clause(f, {"p[1,1]", "p[1,2]", "p[1,3]"}));
  CHECK(has_clause(f, {"-r[1]", "q[1,1]"}));
  CHECK(has_clause(f, {"-r[1]", "-r[2]", "-q[1,1]", "-q[2,1]"}));
  CHECK(has_clause(f, {"-p[1,2]", "r[2]"}));
}

TEST_CASE("gen_erphp censuses match the independent oracle") {
  for (int32_t k : {4, 5}) {
    for (int32_t n : {4, 5, 6}) {
      CnfFormula f = gen_erphp(k, n);
      CHECK(f.vars.size() == census_vars_erphp(k, n));
      CHECK(static_cast<int64_t>(f.clauses.size()) == census_clauses_erphp(k, n));
    }
  }
  CHECK(gen_erphp(4, 6).vars.size() == 81);
  CHECK_THROWS(gen_erphp(3, 6));
  CHECK_THROWS(gen_erphp(4, 3));
}

TEST_CASE("gen_erphp(4,6) clause groups have the documented shapes") {
  CnfFormula f = gen_erphp(4, 6);
  CHECK(f.clauses[0] == find_clause(f, {"p[1,1]", "p[1,2]", "y[1,2]"}));
  CHECK(has_clause(f, {"-y[1,2]", "p[1,3]", "y[1,3]"}));
  CHECK(has_clause(f, {"-y[1,4]", "p[1,5]", "p[1,6]"}));
  CHECK(has_clause(f, {"-r[1]", "q[1,1]", "z[1,1]"}));
  CHECK(has_clause(f, {"-z[1,1]", "q[1,2]", "q[1,3]"}));
  CHECK(has_clause(f, {"-p[1,1]", "-p[2,1]"}));
  CHECK(has_clause(f, {"-p[1,1]", "r[1]"}));
  CHECK(has_clause(f, {"-r[1]", "-r[2]", "rr[1,2]"}));
  CHECK(has_clause(f, {"-rr[1,2]", "-q[1,1]", "-q[2,1]"}));
  // k=4 has no QdefB clauses and exactly one z level.
  CHECK(f.vars.find(VarId{VarKind::Z, 1, 1}) >= 0);
  CHECK(f.vars.find(VarId{VarKind::Z, 1, 2}) < 0);
}

TEST_CASE("small instances are unsatisfiable; dropping a hole clause is not") {
  using pigeon::testing::is_unsat;
  CHECK(is_unsat(gen_php(2)));
  CHECK(is_unsat(gen_php(3)));
  CHECK(is_unsat(gen_php(4)));
  CHECK(is_unsat(gen_tphp(3)));
  CHECK(is_unsat(gen_tphp(4)));
  CHECK(is_unsat(gen_rphp(2, 3)));
  CHECK(is_unsat(gen_rphp(3, 4)));
  CHECK(is_unsat(gen_rphp(4, 6)));
  CHECK(is_unsat(gen_erphp(4, 4)));
  CHECK(is_unsat(gen_erphp(4, 5)));
  CHECK(is_unsat(gen_erphp(4, 6)));

  CnfFormula weak = gen_php(2);
  weak.clauses.pop_back();
  CHECK(pigeon::testing::solve(weak).has_value());
}

TEST_CASE("dimacs round trip preserves everything") {
  for (const CnfFormula& f : {gen_php(3), gen_tphp(4), gen_erphp(4, 4)}) {
    std::string text = export_dimacs(f);
    CnfFormula g = import_dimacs(text);
    CHECK(g.family == f.family);
    CHECK(g.k == f.k);
    CHECK(g.n == f.n);
    CHECK(g.vars.names == f.vars.names);
    CHECK(g.clauses == f.clauses);
  }
  CHECK(export_dimacs(gen_php(2)).find("p cnf 2 3") != std::string::npos);
  CHECK(export_dimacs(gen_php(2)).find("c 1 = x[1,1]") != std::string::npos);
}

TEST_CASE("import_dimacs handles anonymous variables and rejects damage") {
  CnfFormula g = import_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
  CHECK(g.family == Family::custom);
  CHECK(g.vars.size() == 2);
  CHECK(g.clauses.size() == 2);
  CHECK_THROWS(import_dimacs("p cnf 1 1\n1 -1 0\n"));   // tautology
  CHECK_THROWS(import_dimacs("p cnf 1 2\n1 0\n"));      // count mismatch
  CHECK_THROWS(import_dimacs("1 0\n"));                 // missing p-line
  CHECK_THROWS(import_dimacs("p cnf 1 1\n1 2 0\n"));    // literal out of range
}

TEST_CASE("block maps: pigeon blocks and the single block") {
  CnfFormula f = gen_tphp(4);
  BlockMap bm = pigeon_blocks(f);
  Clause inj = find_clause(f, {"-q[1,1]", "-q[2,1]"});
  Clause chain = find_clause(f, {"q[1,1]", "z[1,1]"});
  CHECK(pigeon_width(inj, bm) == 2);
  CHECK(pigeon_width(chain, bm) == 1);
  CHECK(pigeon_width(inj, single_block(f)) == 1);

  CnfFormula e = gen_erphp(4, 4);
  BlockMap be = pigeon_blocks(e);
  Clause rc = find_clause(e, {"-r[1]", "-r[2]", "rr[1,2]"});
  CHECK(pigeon_width(rc, be) == 0);  // r and rr are unblocked
  Clause pin = find_clause(e, {"-p[1,1]", "-p[2,1]"});
  CHECK(pigeon_width(pin, be) == 2);
}

TEST_CASE("validator catches duplicates and censuses") {
  CnfFormula f = gen_php(2);
  f.clauses.push_back(f.clauses.back());
  CHECK_THROWS(validate_formula(f));
  CnfFormula g = gen_php(2);
  g.vars.intern(VarId{VarKind::X, 9, 9});
  CHECK_THROWS(validate_formula(g));
}
