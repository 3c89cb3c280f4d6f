#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pigeon/formulas.hpp"
#include "pigeon/polynomial.hpp"
#include "pigeon/resolution.hpp"
#include "pigeon/restriction.hpp"

namespace pigeon {

enum class CertFlavor : uint8_t { sa, sar, lasserre };

std::string flavor_name(CertFlavor f);

// Base factor of a certificate term:
//   initial       S.polys[input]
//   boolean_up    v^2 - v        (v may be a twin under SAR)
//   boolean_down  v - v^2
//   one           1
//   comp_up       1 - v - v'     (SAR only; v is a base variable)
//   comp_down     v + v' - 1     (SAR only)
//   square        q^2            (Lasserre only; q stored unexpanded)
enum class CertBase : uint8_t {
  initial, boolean_up, boolean_down, one, comp_up, comp_down, square
};

// alpha * prod(mul) * prod_{v in inv}(1 - v) * base. The multiplier lists
// are multisets: a variable may repeat (the pigeonhole upper bounds multiply
// Boolean gaps by squared variables), and mul/inv may overlap, giving
// x(1-x) factors. Under SA and Lasserre no twin may appear anywhere.
struct CertTerm {
  Rational alpha = 1;
  std::vector<AlgVar> mul;
  std::vector<AlgVar> inv;
  CertBase base = CertBase::one;
  int32_t input = -1;   // initial
  AlgVar var{};         // boolean_up/down, comp_up/down
  Polynomial square;    // square
};

// One-shot nonnegative combination that expands to `target`. A refutation
// has target -1. Fragments of larger proofs are certificates too: their
// targets are the derived inequalities, and composition concatenates term
// lists and adds targets.
struct Certificate {
  CertFlavor flavor = CertFlavor::sa;
  Polynomial target;
  std::vector<CertTerm> terms;
};

struct CertMetrics {
  int32_t rank = 0;        // max degree of the expanded per-term polynomials
  int64_t size = 0;        // total term count of those polynomials
  int32_t pigeon_rank = 0; // max pigeon block degree of those polynomials
};

// S-representation encodings (sum_pos x + sum_neg (1-x) - 1) of the clauses
// of f, in clause order. All certificates in this module, SAR included,
// verify against these plain encodings; twin-sum encodings are bridged
// inside the fragments by complementarity terms.
PolynomialSystem sa_system(const CnfFormula& f);

// Expands alpha * prod(mul) * prod(1 - inv) * base exactly.
Polynomial expand_term(const CertTerm& t, const PolynomialSystem& S);

// Expands every term, checks the flavor gates (alpha >= 0, comp bases and
// twins only under SAR, squares only under Lasserre, initial indices in
// range) and compares the exact sum against the target; on mismatch the
// error carries the residual polynomial (sum - target). Returns metrics
// over the expanded per-term polynomials.
CertMetrics verify_certificate(const Certificate& c, const PolynomialSystem& S);

// Every polynomial restricted under the semialgebraic convention (true = 1,
// twins get complements); indices are preserved.
PolynomialSystem restrict_sa_system(const PolynomialSystem& S, const Restriction& rho);

// Applies rho term by term: assigned multipliers become constant factors
// (a false mul / true inv factor kills the term), assigned Boolean and
// complementarity bases vanish, squares and initials restrict pointwise.
// The result verifies against restrict_sa_system(S, rho) with restricted
// target, and neither rank nor size increases.
Certificate restrict_certificate(const Certificate& c, const Restriction& rho);

// --- Simulation of resolution (fragments) ----------------------------------
//
// M(C) = prod_pos (1-x) * prod_neg x and M'(C) = prod_pos x' * prod_neg x;
// -M(C) >= 0 holds exactly when C does. Fragments below derive the
// multiplicative representations from the additive ones.

// Derives -M(C) (twin = false, flavor SA) or -M'(C) (twin = true, flavor
// SAR) from the plain S-encoding of C: the initial inequality is multiplied
// by the non-pivot part of M and Boolean terms cancel the surplus summands;
// under SAR each positive non-pivot literal additionally needs one
// complementarity term, as does a positive pivot. Target -M(C); the initial
// term refers to index `input`. Rank <= w+1; size O(w 2^w) under SA,
// O(w^2) under SAR.
Certificate sim_axiom(const Clause& c, const VarTable& vars, bool twin,
                      int32_t input = 0);

// Derives M(A) - M(B) for A subset-of B by telescoping one-base terms, one
// per literal of B \ A. Empty for A = B. Rank <= w+1, SAR size O(w^2).
Certificate sim_weakening(const Clause& a, const Clause& b, const VarTable& vars,
                          bool twin);

// Derives M(A|x) + M(B|~x) - M(A|B) for a pivot x absent from A and B: two
// weakenings plus, under SAR, one comp_down term on the pivot (under SA the
// third summand is the identity (1-x)M + xM = M and costs nothing).
Certificate sim_resolve(const Clause& a, const Clause& b, int32_t pivot,
                        const VarTable& vars, bool twin);

// Max expanded terms contributed per simulated resolution step is
// kSarSimSizeConstant * max(width,1)^2 (the SAR bound; SA blows up to
// O(w 2^w) and is asserted for validity only).
inline constexpr int64_t kSarSimSizeConstant = 13;

// Simulates a resolution refutation as one static certificate against
// sa_system(f): per-step fragments are concatenated with the DAG weights
// (the empty clause weighs 1, every other step the sum of the steps that
// use it), so the per-step targets telescope to -1. Rank <= width + 1;
// under SAR size <= kSarSimSizeConstant * max(w,1)^2 * steps.
Certificate simulate_resolution_sar(const ResolutionProof& proof, const CnfFormula& f,
                                    CertFlavor flavor);

// Substitutes every twin x' by 1 - x: twin multipliers swap between mul and
// inv, twin Boolean bases flip to their base variable, complementarity
// bases expand to zero and are dropped. Verifies against the same system
// with the substituted target, at the same rank; size may grow.
Certificate sar_to_sa(const Certificate& c);

// --- Lasserre upper bounds --------------------------------------------------

// The square-completion identity behind every bound here, for handles
// z_1..z_n (multilinear monomials over distinct plain variables):
//   sum_{j} sum_{i != j} (1 - z_i - z_j) z_j
//     + (n-2) sum_j (z_j^2 - z_j) + (1 - sum_i z_i)^2  =  1 - sum_i z_i.
// The fragment derives 1 - sum z_i from the initial system { 1 - z_i - z_j }
// (ordered by i < j); the gap z^2 - z of a compound handle telescopes into
// Boolean terms (v_t^2 - v_t) * prod_{s<t} v_s * prod_{s>t} v_s^2. n >= 2.
Certificate lasserre_identity(const std::vector<Monomial>& zs);

// Rank-2 Lasserre refutation of sa_system(gen_php(k)), k >= 2: the identity
// over the pigeons of each hole (pair initials are the hole clauses), summed
// over holes, plus every pigeon clause.
Certificate lasserre_php(int32_t k);

// Rank <= 9 Lasserre refutations of sa_system(gen_rphp(k, n)) and
// sa_system(gen_erphp(k, n)), by substituting x_{u,w} = sum_l p[u,l] r[l]
// q[l,w] into the PHP refutation. Per-block fragments: substituted Boolean
// gaps x^2 - x (rank 7), substituted pigeon sums (rank 3), substituted hole
// inequalities 1 - x_u - x_v (rank 4, via the handles z_l = r[l] q[l,w]),
// and the final PHP mimicry. The ERPHP variant replaces each wide initial
// by the sum of its 3-CNF chain encodings (the extension variables
// telescope away). gen_rphp needs k >= 2, n >= 2; gen_erphp k >= 4, n >= 4.
Certificate lasserre_rphp(int32_t k, int32_t n);
Certificate lasserre_erphp(int32_t k, int32_t n);

// --- Text format ------------------------------------------------------------
//
//   flavor SA|SAR|LAS
//   target <poly>
//   term <num/den> mul [v ...] inv [v ...] base initial <i> | bool+ <v> |
//     bool- <v> | one | comp+ <v> | comp- <v> | square { <poly> }
std::string certificate_to_text(const Certificate& c);
Certificate parse_certificate(const std::string& text);

}  // namespace pigeon
