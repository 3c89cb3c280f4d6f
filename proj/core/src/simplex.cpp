#include "pigeon/simplex.hpp"

#include <stdexcept>

namespace pigeon {

namespace {

// Lexicographic ratio test over (rhs, basis-inverse block): the initial
// artificial block is the identity, so every row starts lex-positive and
// the pivot rule keeps it that way; the objective row then decreases
// strictly in lex order, which rules out cycling under any pricing.
struct LexState {
  const std::vector<std::vector<Rational>>* t;
  int32_t rhs_col;
  int32_t binv_lo;  // first artificial column
  int32_t binv_hi;  // one past the last

  // true when row a / piv_a precedes row b / piv_b lexicographically.
  bool less(int32_t a, const Rational& piv_a, int32_t b, const Rational& piv_b) const {
    const auto& ta = (*t)[a];
    const auto& tb = (*t)[b];
    Rational va = ta[rhs_col] / piv_a;
    Rational vb = tb[rhs_col] / piv_b;
    if (va != vb) return va < vb;
    for (int32_t j = binv_lo; j < binv_hi; ++j) {
      va = ta[j] / piv_a;
      vb = tb[j] / piv_b;
      if (va != vb) return va < vb;
    }
    return false;
  }
};

}  // namespace

// Column layout: [0,c) and [c,2c) the positive/negative parts of x,
// [2c,2c+m) slacks, [2c+m,2c+2m) artificials, column 2c+2m the right-hand
// side. Rows with negative rhs are negated up front so the artificial
// basis starts feasible. Artificial columns never re-enter; pricing is by
// most negative reduced cost and the leaving row is chosen
// lexicographically, so the walk terminates.
FeasibilityResult solve_feasibility(const LinearSystem& sys) {
  const int32_t m = static_cast<int32_t>(sys.rows.size());
  const int32_t c = sys.cols;
  if (static_cast<int32_t>(sys.rhs.size()) != m)
    throw std::runtime_error("solve_feasibility: one rhs entry per row required");
  for (const auto& r : sys.rows)
    if (static_cast<int32_t>(r.size()) != c)
      throw std::runtime_error("solve_feasibility: row width differs from cols");

  const int32_t ncols = 2 * c + 2 * m;
  const int32_t rhs_col = ncols;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1));
  std::vector<int32_t> basis(m);
  for (int32_t i = 0; i < m; ++i) {
    const int sign = sys.rhs[i] < 0 ? -1 : 1;
    for (int32_t j = 0; j < c; ++j) {
      t[i][j] = sign * sys.rows[i][j];
      t[i][c + j] = -t[i][j];
    }
    t[i][2 * c + i] = -sign;
    t[i][2 * c + m + i] = 1;
    t[i][rhs_col] = sign * sys.rhs[i];
    basis[i] = 2 * c + m + i;
  }
  // Reduced costs with the artificial basis priced out: d[j] = c_j - sum_i
  // t[i][j], so d is 0 on the basis and d[rhs] = -objective.
  std::vector<Rational> d(ncols + 1);
  for (int32_t j = 0; j <= ncols; ++j) {
    Rational s = 0;
    for (int32_t i = 0; i < m; ++i) s += t[i][j];
    d[j] = (j >= 2 * c + m && j < ncols ? Rational(1) : Rational(0)) - s;
  }

  const LexState lex{&t, rhs_col, 2 * c + m, 2 * c + 2 * m};
  for (;;) {
    int32_t enter = -1;
    for (int32_t j = 0; j < 2 * c + m; ++j)
      if (d[j] < 0 && (enter < 0 || d[j] < d[enter])) enter = j;
    if (enter < 0) break;
    int32_t leave = -1;
    for (int32_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > 0)) continue;
      if (leave < 0 || lex.less(i, t[i][enter], leave, t[leave][enter])) leave = i;
    }
    if (leave < 0)
      throw std::logic_error("solve_feasibility: phase-one objective unbounded");
    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (int32_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (int32_t j = 0; j <= ncols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    if (d[enter] != 0) {
      const Rational f = d[enter];
      for (int32_t j = 0; j <= ncols; ++j)
        if (t[leave][j] != 0) d[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  FeasibilityResult res;
  if (d[rhs_col] == 0) {
    res.feasible = true;
    res.point.assign(c, Rational(0));
    for (int32_t i = 0; i < m; ++i) {
      if (basis[i] < c)
        res.point[basis[i]] += t[i][rhs_col];
      else if (basis[i] < 2 * c)
        res.point[basis[i] - c] -= t[i][rhs_col];
    }
    for (int32_t i = 0; i < m; ++i) {
      Rational lhs = 0;
      for (int32_t j = 0; j < c; ++j) lhs += sys.rows[i][j] * res.point[j];
      if (lhs < sys.rhs[i])
        throw std::logic_error("solve_feasibility: claimed point violates a row");
    }
  } else {
    // At the optimum the slack reduced cost equals the (sign-corrected)
    // equation price, which is exactly the Farkas multiplier of the
    // original row.
    res.farkas.assign(m, Rational(0));
    Rational yb = 0;
    for (int32_t i = 0; i < m; ++i) {
      res.farkas[i] = d[2 * c + i];
      if (res.farkas[i] < 0)
        throw std::logic_error("solve_feasibility: negative Farkas multiplier");
      yb += res.farkas[i] * sys.rhs[i];
    }
    for (int32_t j = 0; j < c; ++j) {
      Rational s = 0;
      for (int32_t i = 0; i < m; ++i) s += res.farkas[i] * sys.rows[i][j];
      if (s != 0)
        throw std::logic_error("solve_feasibility: Farkas combination does not vanish");
    }
    if (!(yb > 0))
      throw std::logic_error("solve_feasibility: Farkas value is not positive");
  }
  return res;
}

}  // namespace pigeon
