#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pigeon/clause.hpp"
#include "pigeon/restriction.hpp"

namespace pigeon {

enum class StepKind : uint8_t { axiom, resolve, weaken };

// One proof line. Derived clause literals live in the proof's shared arena
// so multi-million-step proofs stay compact.
struct Step {
  StepKind kind;
  int32_t a = -1;      // axiom: formula clause index; else first premise
  int32_t b = -1;      // resolve: second premise
  int32_t pivot = -1;  // resolve: variable index
  uint64_t off = 0;
  uint32_t len = 0;
};

struct ResolutionProof {
  std::vector<Step> steps;
  std::vector<Lit> arena;

  int64_t size() const { return static_cast<int64_t>(steps.size()); }
  std::span<const Lit> lits(int64_t i) const {
    const Step& s = steps.at(i);
    return {arena.data() + s.off, s.len};
  }
  Clause clause(int64_t i) const;
  bool is_refutation() const { return !steps.empty() && steps.back().len == 0; }

  // Builders check the rule side conditions and throw on violations.
  int32_t add_axiom(const CnfFormula& f, int32_t clause_idx);
  // Premise a must contain pivot positively, b negatively; the merge must
  // not be tautological.
  int32_t add_resolve(int32_t a, int32_t b, int32_t pivot);
  int32_t add_weaken(int32_t a, const Clause& target);

 private:
  int32_t push(StepKind kind, int32_t a, int32_t b, int32_t pivot,
               std::span<const Lit> lits);
};

struct ProofMetrics {
  int64_t size = 0;
  int32_t width = 0;
  int64_t clause_space = 0;
  int32_t pigeon_width = 0;
  bool tree_like = true;
};

// Re-derives every step against the formula and computes the metrics:
// width = max derived clause width, clause_space = peak number of
// simultaneously live steps under last-use analysis, pigeon_width via the
// supplied block map (pigeon_blocks(f) when absent), tree_like = no step
// referenced twice. Throws naming the offending step on any rule violation.
ProofMetrics verify_resolution(const ResolutionProof& proof, const CnfFormula& f,
                               const BlockMap* bm = nullptr);

// Applies rho stepwise: satisfied clauses vanish, steps whose pivot got
// assigned collapse to weakenings (or are elided when nothing changes).
// The result verifies against restrict_cnf(f, rho) and never has larger
// size, width, or clause space.
ResolutionProof restrict_resolution(const ResolutionProof& proof, const CnfFormula& f,
                                    const Restriction& rho,
                                    const RestrictedCnf& restricted);

// Tree-like refutation of gen_erphp(k, n) by backward induction over
// map-sequence prefixes: width 2k+1 (for n >= k), clause space <= 2k+3.
// Refuses with an estimate if the step bound would be exceeded.
ResolutionProof construct_erphp_refutation(int32_t k, int32_t n,
                                           int64_t max_steps = 20'000'000);

// Proof text format, one line per step:
//   <idx> axiom <clause-idx>
//   <idx> res <i> <j> <var>
//   <idx> weak <i> <lit ...>        (literals of the target clause)
std::string proof_to_text(const ResolutionProof& proof, const CnfFormula& f);
ResolutionProof parse_proof(const std::string& text, const CnfFormula& f);

}  // namespace pigeon
