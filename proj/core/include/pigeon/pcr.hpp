#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pigeon/formulas.hpp"
#include "pigeon/polynomial.hpp"
#include "pigeon/resolution.hpp"
#include "pigeon/restriction.hpp"

namespace pigeon {

enum class PcrStepKind : uint8_t { boolean_axiom, complementarity, initial, lin_comb, mult };

// One derivation line. Fields are meaningful per kind:
//   boolean_axiom:   var (or twin)        derives  v^2 - v
//   complementarity: var (base, no twin)  derives  1 - v - v'
//   initial:         input                derives  S.polys[input]
//   lin_comb:        a, b, alpha, beta    derives  alpha*p_a + beta*p_b
//   mult:            a, var (or twin)     derives  v * p_a
struct PcrStep {
  PcrStepKind kind = PcrStepKind::boolean_axiom;
  AlgVar var{};
  int32_t input = -1;
  int32_t a = -1;
  int32_t b = -1;
  Rational alpha = 0;
  Rational beta = 0;
};

// Steps plus the derived polynomial of each step (kept parallel). Builders
// append one step, compute its polynomial, and throw on out-of-range
// references; the verifier recomputes every polynomial and trusts nothing.
struct PcrProof {
  std::vector<PcrStep> steps;
  std::vector<Polynomial> polys;

  int32_t add_boolean_axiom(const AlgVar& v);
  int32_t add_complementarity(const VarId& v);
  int32_t add_initial(const PolynomialSystem& S, int32_t input);
  int32_t add_lin_comb(int32_t a, int32_t b, const Rational& alpha, const Rational& beta);
  int32_t add_mult(int32_t a, const AlgVar& v);

  // A refutation ends by deriving the constant 1.
  bool is_refutation() const { return !polys.empty() && polys.back() == poly_one(); }
};

struct PcrMetrics {
  int64_t size = 0;          // total term count across steps
  int32_t degree = 0;        // max degree across steps
  int32_t pigeon_degree = 0; // max pigeon block degree across steps
};

// Recomputes every step from its descriptor and compares against the stored
// polynomial; any mismatch throws with the step index and the expected vs
// found polynomials. With a prime p (p >= 2, prime, < 2^31) the comparison
// and the metrics are taken over F_p: coefficients reduce to num*den^-1 mod
// p and terms that vanish mod p are dropped.
PcrMetrics verify_pcr(const PcrProof& proof, const PolynomialSystem& S,
                      std::optional<uint64_t> prime = std::nullopt);

// Coefficient-wise reduction mod p into [0, p); throws if a denominator is
// divisible by p.
Polynomial poly_mod(const Polynomial& p, uint64_t prime);

// PCR-monomial encodings of the clauses of f, in clause order.
PolynomialSystem pcr_system(const CnfFormula& f);

// Every polynomial restricted under the PCR convention (true = 0); indices
// are preserved, satisfied inputs become the zero polynomial.
PolynomialSystem restrict_system(const PolynomialSystem& S, const Restriction& rho);

// Applies rho stepwise: each step of the result derives the restriction of
// the corresponding input polynomial. Axioms of assigned variables restrict
// to 0 and become a shared zero step; a Mult by an assigned factor becomes
// a copy (factor restricts to 1) or the zero step (factor restricts to 0).
// The result verifies against restrict_system(S, rho).
PcrProof restrict_pcr(const PcrProof& proof, const PolynomialSystem& S, const Restriction& rho);

// Resolution-to-PCR simulation. The output refutes pcr_system(f) with
// degree <= width(pi)+1 and size <= kPcrSimSizeConstant * max(width,1) *
// steps: an axiom becomes Initial, a weakening one Mult per added literal,
// and a resolution step on pivot x rebuilds the resolvent monomial M as
// (Mx + Mx') + M(1 - x - x') via two mult chains, one complementarity
// chain, and two linear combinations.
inline constexpr int64_t kPcrSimSizeConstant = 11;
PcrProof simulate_resolution_pcr(const ResolutionProof& pi, const CnfFormula& f);

// The pigeon-killing substitution on TPHP variables (holes j run in
// [k-1]):  q[v,w] -> 1 - x[v,w],   q'[v,w] -> x[v,w],
//          z[v,w] -> 1 - sum_{j>w} x[v,j],  z'[v,w] -> 1 - sum_{j<=w} x[v,j].
Polynomial delta_image(const AlgVar& v, int32_t k);

// Rewrites a refutation of pcr_system(gen_tphp(k)) into one of gen_aphp(k):
// each step is replaced by a derivation of the reduced image of its
// delta-substitution, where the reduction drops monomials mentioning a
// pigeon twice or a hole twice and clamps exponents, realized as explicit
// proof steps multiplying the pair axioms of gen_aphp and Boolean axioms.
// Output degree <= input pigeon_degree + 1. Throws if the input does not
// verify against the TPHP encoding, is not a refutation, or mentions a
// non-q/z variable.
PcrProof delta_transform(const PcrProof& pi, int32_t k);

// Text format, one line per step, polynomial payload in the canonical
// grammar:
//   <idx> bool <algvar> : <poly>
//   <idx> comp <var> : <poly>
//   <idx> init <input> : <poly>
//   <idx> lin <a> <b> <alpha> <beta> : <poly>
//   <idx> mult <a> <algvar> : <poly>
// parse_pcr checks syntax only; run verify_pcr for semantics.
std::string pcr_to_text(const PcrProof& p);
PcrProof parse_pcr(const std::string& text);

}  // namespace pigeon
