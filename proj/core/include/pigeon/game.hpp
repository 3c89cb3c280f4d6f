#pragma once

#include <cstdint>

#include "pigeon/clause.hpp"
#include "pigeon/resolution.hpp"

namespace pigeon {

// Prosecutor-defendant game played along a verified refutation: the
// prosecutor walks the proof graph backwards from the empty clause keeping
// the minimal falsifying record of the current clause, querying the pivot
// at each resolution step and moving to the premise the answer falsifies.
// Returns the maximum number of blocks the record ever mentions (unblocked
// variables do not count). Against tphp formulas the defendant answers from
// a private partial matching of mentioned rows into the k-1 holes, which
// forces a record mentioning all k rows; elsewhere she answers false. The
// result never exceeds pigeon_width(proof) + 1.
int32_t prosecutor_game(const ResolutionProof& proof, const CnfFormula& f,
                        const BlockMap* bm = nullptr);

}  // namespace pigeon
