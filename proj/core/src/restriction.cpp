#include "pigeon/restriction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "pigeon/rng.hpp"

namespace pigeon {

RestrictedCnf restrict_cnf(const CnfFormula& f, const Restriction& rho) {
  RestrictedCnf out;
  out.formula.family = Family::custom;
  out.formula.k = f.k;
  out.formula.n = f.n;
  out.formula.vars = f.vars;
  out.clause_map.assign(f.clauses.size(), -1);
  std::unordered_map<Clause, int32_t, ClauseHash> seen;
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    bool satisfied = false;
    std::vector<Lit> kept;
    for (Lit l : f.clauses[ci].lits) {
      auto it = rho.assign.find(f.vars.name(lit_index(l)));
      if (it == rho.assign.end()) {
        kept.push_back(l);
      } else if (it->second != lit_negative(l)) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    Clause c{std::move(kept)};
    auto [it, fresh] = seen.emplace(c, static_cast<int32_t>(out.formula.clauses.size()));
    if (fresh) out.formula.clauses.push_back(it->first);
    out.clause_map[ci] = it->second;
  }
  return out;
}

Restriction sample_d(int32_t k, int32_t n, uint64_t seed) {
  if (k < 2 || n < k) throw std::runtime_error("sample_d: need 2 <= k <= n");
  Restriction rho;
  rho.seed = seed;
  SplitMix64 g{mix_seed(seed, 0)};
  rho.pigeons = sample_subset(g, n, k);  // sorted k-subset of [n]
  std::unordered_set<int32_t> in_s(rho.pigeons.begin(), rho.pigeons.end());

  // p[u,v] true iff v is the u-th smallest surviving row; y[u,v] true iff
  // the row of pigeon u lies beyond v.
  for (int32_t u = 1; u <= k; ++u) {
    int32_t vu = rho.pigeons[u - 1];
    for (int32_t v = 1; v <= n; ++v) rho.assign[VarId{VarKind::P, u, v}] = (v == vu);
    for (int32_t v = 2; v <= n - 2; ++v) rho.assign[VarId{VarKind::Y, u, v}] = (v < vu);
  }
  for (int32_t v = 1; v <= n; ++v) rho.assign[VarId{VarKind::R, v, 0}] = in_s.count(v) > 0;
  for (int32_t v = 1; v <= n; ++v)
    for (int32_t v2 = v + 1; v2 <= n; ++v2)
      rho.assign[make_rr(v, v2)] = in_s.count(v) > 0 && in_s.count(v2) > 0;
  // Rows outside S: one coin decides the whole q/z row, killing its chain
  // clauses in either polarity. The coin depends only on (seed, v) so that
  // lazily evaluated and materialized restrictions agree.
  for (int32_t v = 1; v <= n; ++v) {
    if (in_s.count(v)) continue;
    SplitMix64 row{mix_seed(seed, static_cast<uint64_t>(v))};
    bool b = row.coin();
    for (int32_t w = 1; w < k; ++w) rho.assign[VarId{VarKind::Q, v, w}] = b;
    for (int32_t w = 1; w <= k - 3; ++w) rho.assign[VarId{VarKind::Z, v, w}] = b;
  }
  return rho;
}

std::string check_renaming(const CnfFormula& restricted_erphp, const Restriction& rho,
                           const CnfFormula& tphp) {
  const int32_t k = static_cast<int32_t>(rho.pigeons.size());
  if (tphp.k != k) return "pigeon count mismatch";
  std::map<int32_t, int32_t> rename;  // surviving row -> [k]
  for (int32_t u = 1; u <= k; ++u) rename[rho.pigeons[u - 1]] = u;

  std::set<std::vector<Lit>> expected;
  for (const Clause& c : tphp.clauses) expected.insert(c.lits);

  std::set<std::vector<Lit>> got;
  for (const Clause& c : restricted_erphp.clauses) {
    std::vector<Lit> lits;
    for (Lit l : c.lits) {
      VarId v = restricted_erphp.vars.name(lit_index(l));
      if (v.kind != VarKind::Q && v.kind != VarKind::Z)
        return "surviving clause mentions non-q/z variable " + to_string(v);
      auto it = rename.find(v.i);
      if (it == rename.end()) return "surviving clause mentions dead row " + to_string(v);
      int32_t idx = tphp.vars.find(VarId{v.kind, it->second, v.j});
      if (idx < 0) return "renamed variable missing from tphp: " + to_string(v);
      lits.push_back(make_lit(idx, lit_negative(l)));
    }
    got.insert(make_clause(std::move(lits)).lits);
  }
  if (got == expected) return "";
  for (const auto& lits : got)
    if (!expected.count(lits))
      return "unexpected clause " + clause_to_string(Clause{lits}, tphp.vars);
  for (const auto& lits : expected)
    if (!got.count(lits))
      return "missing clause " + clause_to_string(Clause{lits}, tphp.vars);
  return "clause multiset mismatch";
}

std::string restriction_to_text(const Restriction& rho) {
  std::ostringstream os;
  os << "pigeons";
  for (int32_t v : rho.pigeons) os << " " << v;
  os << "\nseed " << rho.seed << "\n";
  std::vector<std::pair<VarId, bool>> entries(rho.assign.begin(), rho.assign.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [v, b] : entries) os << "set " << to_string(v) << " " << (b ? 1 : 0) << "\n";
  return os.str();
}

Restriction parse_restriction(const std::string& text) {
  Restriction rho;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "pigeons") {
      int32_t v;
      while (ls >> v) rho.pigeons.push_back(v);
    } else if (tok == "seed") {
      if (!(ls >> rho.seed)) throw std::runtime_error("restriction: bad seed line");
    } else if (tok == "set") {
      std::string name;
      int b;
      if (!(ls >> name >> b) || (b != 0 && b != 1))
        throw std::runtime_error("restriction: bad set line: " + line);
      if (!rho.assign.emplace(parse_var(name), b == 1).second)
        throw std::runtime_error("restriction: duplicate assignment for " + name);
    } else {
      throw std::runtime_error("restriction: unknown directive " + tok);
    }
  }
  std::sort(rho.pigeons.begin(), rho.pigeons.end());
  return rho;
}

}  // namespace pigeon
