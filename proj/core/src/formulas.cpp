#include "pigeon/formulas.hpp"

#include <stdexcept>

namespace pigeon {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::runtime_error(msg);
}

Lit pos(VarTable& t, VarId v) { return make_lit(t.intern(v), false); }
Lit neg(VarTable& t, VarId v) { return make_lit(t.intern(v), true); }

VarId x(int32_t u, int32_t w) { return VarId{VarKind::X, u, w}; }
VarId p(int32_t u, int32_t v) { return VarId{VarKind::P, u, v}; }
VarId y(int32_t u, int32_t v) { return VarId{VarKind::Y, u, v}; }
VarId r(int32_t v) { return VarId{VarKind::R, v, 0}; }
VarId q(int32_t v, int32_t w) { return VarId{VarKind::Q, v, w}; }
VarId z(int32_t v, int32_t w) { return VarId{VarKind::Z, v, w}; }

}  // namespace

CnfFormula gen_php(int32_t k) {
  require(k >= 2, "gen_php: k >= 2 required");
  CnfFormula f;
  f.family = Family::php;
  f.k = k;
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t w = 1; w < k; ++w) f.vars.intern(x(u, w));
  for (int32_t u = 1; u <= k; ++u) {
    std::vector<Lit> lits;
    for (int32_t w = 1; w < k; ++w) lits.push_back(pos(f.vars, x(u, w)));
    f.clauses.push_back(make_clause(std::move(lits)));
  }
  for (int32_t w = 1; w < k; ++w)
    for (int32_t u = 1; u <= k; ++u)
      for (int32_t v = u + 1; v <= k; ++v)
        f.clauses.push_back(make_clause({neg(f.vars, x(u, w)), neg(f.vars, x(v, w))}));
  validate_formula(f);
  return f;
}

CnfFormula gen_tphp(int32_t k) {
  require(k >= 3, "gen_tphp: k >= 3 required");
  CnfFormula f;
  f.family = Family::tphp;
  f.k = k;
  for (int32_t v = 1; v <= k; ++v)
    for (int32_t w = 1; w < k; ++w) f.vars.intern(q(v, w));
  for (int32_t v = 1; v <= k; ++v)
    for (int32_t w = 1; w <= k - 3; ++w) f.vars.intern(z(v, w));
  if (k == 3) {
    for (int32_t v = 1; v <= k; ++v)
      f.clauses.push_back(make_clause({pos(f.vars, q(v, 1)), pos(f.vars, q(v, 2))}));
  } else {
    for (int32_t v = 1; v <= k; ++v)
      f.clauses.push_back(make_clause({pos(f.vars, q(v, 1)), pos(f.vars, z(v, 1))}));
    for (int32_t v = 1; v <= k; ++v)
      for (int32_t w = 1; w <= k - 4; ++w)
        f.clauses.push_back(make_clause(
            {neg(f.vars, z(v, w)), pos(f.vars, q(v, w + 1)), pos(f.vars, z(v, w + 1))}));
    for (int32_t v = 1; v <= k; ++v)
      f.clauses.push_back(make_clause(
          {neg(f.vars, z(v, k - 3)), pos(f.vars, q(v, k - 2)), pos(f.vars, q(v, k - 1))}));
  }
  for (int32_t v = 1; v <= k; ++v)
    for (int32_t v2 = v + 1; v2 <= k; ++v2)
      for (int32_t w = 1; w < k; ++w)
        f.clauses.push_back(make_clause({neg(f.vars, q(v, w)), neg(f.vars, q(v2, w))}));
  validate_formula(f);
  return f;
}

CnfFormula gen_rphp(int32_t k, int32_t n) {
  require(k >= 2 && n >= 2, "gen_rphp: k >= 2 and n >= 2 required");
  CnfFormula f;
  f.family = Family::rphp;
  f.k = k;
  f.n = n;
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 1; v <= n; ++v) f.vars.intern(p(u, v));
  for (int32_t v = 1; v <= n; ++v) f.vars.intern(r(v));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t w = 1; w < k; ++w) f.vars.intern(q(v, w));

  for (int32_t u = 1; u <= k; ++u) {
    std::vector<Lit> lits;
    for (int32_t v = 1; v <= n; ++v) lits.push_back(pos(f.vars, p(u, v)));
    f.clauses.push_back(make_clause(std::move(lits)));
  }
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t u2 = u + 1; u2 <= k; ++u2)
      for (int32_t v = 1; v <= n; ++v)
        f.clauses.push_back(make_clause({neg(f.vars, p(u, v)), neg(f.vars, p(u2, v))}));
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 1; v <= n; ++v)
      f.clauses.push_back(make_clause({neg(f.vars, p(u, v)), pos(f.vars, r(v))}));
  for (int32_t v = 1; v <= n; ++v) {
    std::vector<Lit> lits{neg(f.vars, r(v))};
    for (int32_t w = 1; w < k; ++w) lits.push_back(pos(f.vars, q(v, w)));
    f.clauses.push_back(make_clause(std::move(lits)));
  }
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t v2 = v + 1; v2 <= n; ++v2)
      for (int32_t w = 1; w < k; ++w)
        f.clauses.push_back(make_clause({neg(f.vars, r(v)), neg(f.vars, r(v2)),
                                         neg(f.vars, q(v, w)), neg(f.vars, q(v2, w))}));
  validate_formula(f);
  return f;
}

CnfFormula gen_erphp(int32_t k, int32_t n) {
  require(k >= 4 && n >= 4, "gen_erphp: k >= 4 and n >= 4 required");
  CnfFormula f;
  f.family = Family::erphp;
  f.k = k;
  f.n = n;
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 1; v <= n; ++v) f.vars.intern(p(u, v));
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 2; v <= n - 2; ++v) f.vars.intern(y(u, v));
  for (int32_t v = 1; v <= n; ++v) f.vars.intern(r(v));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t v2 = v + 1; v2 <= n; ++v2) f.vars.intern(make_rr(v, v2));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t w = 1; w < k; ++w) f.vars.intern(q(v, w));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t w = 1; w <= k - 3; ++w) f.vars.intern(z(v, w));

  // PdefA, PdefB, PdefC: chain encoding of "pigeon u maps somewhere".
  for (int32_t u = 1; u <= k; ++u)
    f.clauses.push_back(
        make_clause({pos(f.vars, p(u, 1)), pos(f.vars, p(u, 2)), pos(f.vars, y(u, 2))}));
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 2; v <= n - 3; ++v)
      f.clauses.push_back(make_clause(
          {neg(f.vars, y(u, v)), pos(f.vars, p(u, v + 1)), pos(f.vars, y(u, v + 1))}));
  for (int32_t u = 1; u <= k; ++u)
    f.clauses.push_back(make_clause(
        {neg(f.vars, y(u, n - 2)), pos(f.vars, p(u, n - 1)), pos(f.vars, p(u, n))}));
  // QdefA, QdefB, QdefC: chain encoding of "image row v is mapped on".
  for (int32_t v = 1; v <= n; ++v)
    f.clauses.push_back(
        make_clause({neg(f.vars, r(v)), pos(f.vars, q(v, 1)), pos(f.vars, z(v, 1))}));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t w = 1; w <= k - 4; ++w)
      f.clauses.push_back(make_clause(
          {neg(f.vars, z(v, w)), pos(f.vars, q(v, w + 1)), pos(f.vars, z(v, w + 1))}));
  for (int32_t v = 1; v <= n; ++v)
    f.clauses.push_back(make_clause(
        {neg(f.vars, z(v, k - 3)), pos(f.vars, q(v, k - 2)), pos(f.vars, q(v, k - 1))}));
  // Pinj, Pimage, Rpair, Qinj.
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t u2 = u + 1; u2 <= k; ++u2)
      for (int32_t v = 1; v <= n; ++v)
        f.clauses.push_back(make_clause({neg(f.vars, p(u, v)), neg(f.vars, p(u2, v))}));
  for (int32_t u = 1; u <= k; ++u)
    for (int32_t v = 1; v <= n; ++v)
      f.clauses.push_back(make_clause({neg(f.vars, p(u, v)), pos(f.vars, r(v))}));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t v2 = v + 1; v2 <= n; ++v2)
      f.clauses.push_back(make_clause(
          {neg(f.vars, r(v)), neg(f.vars, r(v2)), pos(f.vars, make_rr(v, v2))}));
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t v2 = v + 1; v2 <= n; ++v2)
      for (int32_t w = 1; w < k; ++w)
        f.clauses.push_back(make_clause({neg(f.vars, make_rr(v, v2)), neg(f.vars, q(v, w)),
                                         neg(f.vars, q(v2, w))}));
  validate_formula(f);
  return f;
}

}  // namespace pigeon
