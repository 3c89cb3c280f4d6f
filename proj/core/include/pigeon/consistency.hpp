#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pigeon/clause.hpp"
#include "pigeon/rational.hpp"
#include "pigeon/semialgebraic.hpp"

namespace pigeon {

// Distribution over Boolean assignments to a fixed scope. Bit i of a
// support mask is the value of vars[i]; vars are sorted and distinct, only
// positive-probability assignments are stored, masks ascending.
struct LocalDistribution {
  std::vector<VarId> vars;
  std::vector<std::pair<uint64_t, Rational>> support;
};

// Family of local distributions over a downward-closed key set. Pigeon
// keying indexes by sorted pigeon-block sets, the scope being every formula
// variable in those blocks; varset keying indexes by the scope itself.
// Exactly one of the maps is populated.
struct DistributionFamily {
  bool pigeon_keyed = true;
  std::map<std::vector<int32_t>, LocalDistribution> by_pigeons;
  std::map<std::vector<VarId>, LocalDistribution> by_vars;
};

// Index sets the family must cover: every pigeon set (or variable set) of
// size at most `bound`.
struct HSpec {
  bool pigeon_sets = true;
  int32_t bound = 0;
};

struct ConsistencyReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

std::string varset_to_string(const std::vector<VarId>& vars);

// Uniform injective partial matchings, the consistent family behind the
// pigeon-rank lower bound. Keys are the pigeon sets A of [k] with
// |A| <= k-1; the scope of pigeon v is q[v,1..k-1], z[v,1..k-3]; each
// injective map phi: A -> [k-1] has probability 1/((k-1)(k-2)...(k-|A|))
// and assigns q[v,w] = [phi(v) = w], z[v,w] = [phi(v) > w]. k >= 2.
DistributionFamily matching_family(int32_t k);

// Audits fam against f and h: key coverage, per-key well-formedness (scope
// matches the keying, positive probabilities summing to one), H1 (every
// support assignment satisfies every clause of f whose variables lie in
// the scope) and H2 (exact marginal agreement on every comparable key
// pair). Violations are data, one line each, never thrown.
ConsistencyReport check_consistency(const DistributionFamily& fam, const CnfFormula& f,
                                    const HSpec& h);

// a(X) = Pr[every variable of X is true] under the key responsible for X
// (the pigeon blocks of X, or X itself); a(empty) = 1. Throws when X
// leaves the family's index sets: such marginals are not evaluable.
Rational family_marginal(const DistributionFamily& fam, const std::vector<VarId>& X);

enum class RefuteOutcome : uint8_t { certificate_invalid, family_inconsistent };

struct RefuteReport {
  RefuteOutcome outcome = RefuteOutcome::certificate_invalid;
  std::string detail;
};

// Plays a claimed refutation of S against a claimed consistent family and
// reports which side is broken; a verifying refutation whose terms stay
// inside the index sets and a consistent family cannot coexist. The
// certificate loses when verify_certificate rejects it or its target is
// not -1. Otherwise every expanded term is averaged monomial by monomial
// through family_marginal; since the averages add up to -1 exactly, some
// term must average negatively, and that term convicts the family. SAR
// certificates are twin-eliminated first; Lasserre certificates and terms
// outside the index sets raise errors.
RefuteReport refute_certificate_against_family(const Certificate& c,
                                               const PolynomialSystem& S,
                                               const DistributionFamily& fam);

// Linear functional on variable sets; values must contain the empty set
// with value 1 and be downward closed.
struct SetFunctional {
  std::map<std::vector<VarId>, Rational> values;
};

// Moebius inversion of the functional into one local distribution per key
// of a.values. Throws when a(empty) != 1 or some inverted mass is
// negative.
DistributionFamily moebius_family(const SetFunctional& a);

// Exact rank-k decision for sa_system(f): either a refutation of rank <= k
// (re-verified before returning) or a functional on the size-<= k variable
// sets whose Moebius family passes check_consistency. The two outcomes are
// exhaustive and exclusive for clause widths <= k; for wider clauses the
// family outcome certifies k-consistency only, while a refutation is sound
// at every width. Refusals (std::runtime_error) guard the desk-scale
// budget: at most 12 variables, rank at most 4, bounded tableau.
struct SaRankDecision {
  bool refuted = false;
  Certificate refutation;
  DistributionFamily family;
  SetFunctional functional;
};

SaRankDecision decide_sa_rank(const CnfFormula& f, int32_t k);

// The decision's LP in plain text for external cross-checks, one row per
// line: `m X Y : affine >= rhs` for the Moebius rows m(X,Y) >= 0 and
// `c <clause> X ones O : affine >= rhs` for the falsifier rows
// -m(X,O) >= 0 (the matching Moebius row makes the falsifier probability
// an exact zero). a(empty) = 1 is substituted throughout.
std::string sa_rank_lp_text(const CnfFormula& f, int32_t k);

// Text form: a `family pigeon-keyed|varset-keyed` header, then per key one
// `key {..}` line (pigeon keys carry a `vars {..}` clause; varset keys are
// their own scope) followed by `assign <bits> prob <p/q>` support lines,
// bits in scope order, `-` for the empty scope.
std::string family_to_text(const DistributionFamily& fam);
DistributionFamily parse_family(const std::string& text);

}  // namespace pigeon
