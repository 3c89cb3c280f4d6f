#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pigeon/clause.hpp"

namespace pigeon {

// Partial assignment over structured variables plus the set of surviving
// first-layer rows (the k rows kept alive by the distribution D).
struct Restriction {
  std::unordered_map<VarId, bool, VarIdHash> assign;
  std::vector<int32_t> pigeons;  // sorted; empty when not applicable
  uint64_t seed = 0;
};

struct RestrictedCnf {
  CnfFormula formula;
  // Original clause index -> restricted clause index, or -1 if the clause
  // was satisfied by the restriction.
  std::vector<int32_t> clause_map;
};

// Drops satisfied clauses, deletes falsified literals, deduplicates the
// survivors (first occurrence wins). The variable table is kept unchanged;
// the result is tagged Family::custom.
RestrictedCnf restrict_cnf(const CnfFormula& f, const Restriction& rho);

// Samples the distribution D: choose a k-subset S of [n] (the surviving
// rows), map pigeon u to the u-th smallest element v_u of S, and set
//   p[u,v] = (v == v_u),     y[u,v] = (v < v_u),
//   r[v] = (v in S),         rr[v,v'] = r[v] and r[v'],
// and for every row v not in S one coin b_v decides q[v,w] = z[v,w] = b_v.
// Variables q[v,w], z[v,w] for v in S stay unassigned. Requires k >= 2,
// n >= k. Deterministic in (k, n, seed).
Restriction sample_d(int32_t k, int32_t n, uint64_t seed);

// Checks that g equals f1 up to the pigeon renaming that sends the i-th
// smallest surviving row to i, where f1 = restrict_cnf(erphp).formula and
// g = gen_tphp(k). Returns an empty string on success, else a description
// of the first difference.
std::string check_renaming(const CnfFormula& restricted_erphp, const Restriction& rho,
                           const CnfFormula& tphp);

// Text format: one `pigeons <v...>` line, `seed <s>` line, then one
// `set <var> <0|1>` line per assignment in sorted variable order.
std::string restriction_to_text(const Restriction& rho);
Restriction parse_restriction(const std::string& text);

}  // namespace pigeon
