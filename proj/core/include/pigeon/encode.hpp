#pragma once

#include "pigeon/clause.hpp"
#include "pigeon/polynomial.hpp"

namespace pigeon {

// Clause-to-polynomial encodings. S/Sprime/M/Mprime are the left-hand
// sides of "lhs >= 0" inequalities stating the clause must hold (truth = 1);
// PcrMonomial is the PCR translation (truth = 0), which vanishes exactly on
// satisfying assignments.
enum class EncodeMode : uint8_t { S, Sprime, M, Mprime, PcrMonomial };

//   S:           sum_pos x + sum_neg (1-x) - 1
//   Sprime:      sum_pos x + sum_neg twin(x) - 1
//   M:           -prod_pos (1-x) * prod_neg x, expanded
//   Mprime:      -prod_pos twin(x) * prod_neg x, one monomial
//   PcrMonomial: prod_pos x * prod_neg twin(x), one monomial
// For the empty clause the first four give -1 and PcrMonomial gives 1.
Polynomial encode_clause(const Clause& c, const VarTable& vars, EncodeMode mode);

// Algebraic pigeonhole system over x[v,w], v in [k], w in [k-1]:
// per pigeon 1 - sum_w x[v,w]; per hole w and pair v<v' the monomial
// x[v,w]x[v',w]; per pigeon v and hole pair w<w' the monomial x[v,w]x[v,w'].
PolynomialSystem gen_aphp(int32_t k);

}  // namespace pigeon
