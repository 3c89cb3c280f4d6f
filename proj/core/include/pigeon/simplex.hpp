#pragma once

#include <cstdint>
#include <vector>

#include "pigeon/rational.hpp"

namespace pigeon {

// Dense exact-rational inequality system A x >= b over free unknowns.
struct LinearSystem {
  int32_t cols = 0;
  std::vector<std::vector<Rational>> rows;  // each of size cols
  std::vector<Rational> rhs;                // one entry per row
};

// Feasibility verdict. Exactly one vector is populated: `point` (size cols)
// satisfies every row, or `farkas` (one multiplier per row) has y >= 0,
// y^T A = 0 and y^T b > 0, an exact witness that no point exists. Both are
// re-checked against the input before returning; a failed check is a logic
// error, never a wrong answer.
struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> point;
  std::vector<Rational> farkas;
};

// Phase-one simplex: unknowns split into nonnegative pairs, one slack and
// one artificial column per row, every pivot exact. Pricing is by most
// negative reduced cost with a lexicographic ratio test, which carries the
// same no-cycling guarantee as Bland's rule without its degenerate crawl.
// The Farkas vector is read off the slack reduced costs at the optimum.
// Dense tableau, intended for desk-scale systems (hundreds of rows).
FeasibilityResult solve_feasibility(const LinearSystem& sys);

}  // namespace pigeon
