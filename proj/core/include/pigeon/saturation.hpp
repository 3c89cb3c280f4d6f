#pragma once

#include <cstdint>

#include "pigeon/clause.hpp"
#include "pigeon/resolution.hpp"

namespace pigeon {

// Bound on the clauses admitted into the closure. Input clauses are exempt:
// they may be used as premises even when they exceed the bound, so e.g.
// {x},{not x} is refutable under width bound 0. -1 disables a limit.
struct SaturationBound {
  int32_t width = -1;
  int32_t pigeon_width = -1;
  const BlockMap* blocks = nullptr;  // pigeon_blocks(f) when absent
};

struct SaturationOptions {
  // Forward subsumption against already-activated clauses; purely an
  // optimization (refutability is unchanged), off by default so that the
  // derived count means exactly "derivable within the bound".
  bool subsumption = false;
  int64_t max_derived = 2'000'000;
};

struct SaturationResult {
  bool refutable = false;
  // Distinct non-input clauses derived. For refutable instances saturation
  // stops at the empty clause, so this counts clauses derived up to and
  // including it; otherwise it is the full closure size minus the inputs.
  int64_t derived = 0;
};

// Closure of f under resolution restricted to clauses within the bound,
// processed shortest-clause-first. Weakening adds nothing here: any clause
// derivable with weakenings inside the bound has a subset derivable without
// them, also inside the bound. Throws when max_derived is exceeded.
SaturationResult saturate_bounded(const CnfFormula& f, const SaturationBound& bound,
                                  const SaturationOptions& opts = {});

// Replays the saturation and assembles an explicit refutation from the
// parent links of the empty clause. Throws if the bound admits none.
ResolutionProof extract_bounded_refutation(const CnfFormula& f, const SaturationBound& bound,
                                           const SaturationOptions& opts = {});

}  // namespace pigeon
