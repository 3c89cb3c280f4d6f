#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pigeon/vars.hpp"

namespace pigeon {

// Literal relative to a VarTable: +(idx+1) positive, -(idx+1) negated.
using Lit = int32_t;

inline int32_t lit_index(Lit l) { return (l < 0 ? -l : l) - 1; }
inline bool lit_negative(Lit l) { return l < 0; }
inline Lit make_lit(int32_t idx, bool neg) { return neg ? -(idx + 1) : idx + 1; }
inline Lit negate_lit(Lit l) { return -l; }

// Interning table between structured names and dense indices.
struct VarTable {
  std::vector<VarId> names;
  std::unordered_map<VarId, int32_t, VarIdHash> index;

  int32_t intern(const VarId& v);
  // -1 if absent.
  int32_t find(const VarId& v) const;
  int32_t size() const { return static_cast<int32_t>(names.size()); }
  const VarId& name(int32_t idx) const { return names.at(idx); }
};

// Clause = set of literals. Stored sorted by variable index, at most one
// literal per variable; tautologies are not representable.
struct Clause {
  std::vector<Lit> lits;

  bool operator==(const Clause&) const = default;
  int32_t width() const { return static_cast<int32_t>(lits.size()); }
};

// Canonicalizes (sort, dedupe); throws if some variable occurs with both
// polarities.
Clause make_clause(std::vector<Lit> lits);
bool clause_has_lit(const Clause& c, Lit l);
bool clause_has_var(const Clause& c, int32_t idx);
// a subset-of b, as literal sets.
bool clause_subset(const Clause& a, const Clause& b);
// Union of a and b with both pivot literals removed; nullopt if the result
// would be tautological.
std::optional<Clause> resolve_clauses(const Clause& a, const Clause& b, int32_t pivot);

struct ClauseHash {
  size_t operator()(const Clause& c) const;
};

enum class Family : uint8_t { custom, php, tphp, rphp, erphp };

std::string family_name(Family f);

struct CnfFormula {
  Family family = Family::custom;
  // Pigeon count k; n is the first-layer hole count (0 when the family has
  // a single layer).
  int32_t k = 0;
  int32_t n = 0;
  VarTable vars;
  std::vector<Clause> clauses;
};

// Structural check: literal indices in range, clauses canonical, no
// duplicate clauses, and the variable census matches the declared family.
// Throws std::runtime_error on the first violation.
void validate_formula(const CnfFormula& f);

// Total map variable index -> pigeon block; -1 marks unblocked variables.
struct BlockMap {
  std::vector<int32_t> block;

  int32_t block_of(int32_t idx) const { return block.at(idx); }
};

// Variables whose kind carries a pigeon-style first index (P, Y, X and the
// per-row Q, Z) map to that index; R and RR stay unblocked.
BlockMap pigeon_blocks(const CnfFormula& f);
// Everything in one block; used to recover plain width as a pigeon-width.
BlockMap single_block(const CnfFormula& f);

// Number of distinct blocks mentioned by the clause (unblocked vars ignored).
int32_t pigeon_width(const Clause& c, const BlockMap& bm);

std::string clause_to_string(const Clause& c, const VarTable& vars);

}  // namespace pigeon
