#pragma once

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pigeon/rational.hpp"
#include "pigeon/vars.hpp"

namespace pigeon {

// Product of structured variables (twins allowed) with positive exponents,
// kept sorted by variable.
struct Monomial {
  std::vector<std::pair<AlgVar, int32_t>> factors;

  bool operator==(const Monomial&) const = default;
  int32_t degree() const;
  bool mentions(const AlgVar& v) const;
};

Monomial monomial_one();
Monomial monomial_from(const std::vector<AlgVar>& vars);  // multiset product
Monomial mul(const Monomial& a, const Monomial& b);

// Graded lexicographic monomial order (multiplication compatible); returns
// <0, 0, >0. Ties on total degree break on the earliest variable with
// differing exponent, higher exponent first.
int compare_grlex(const Monomial& a, const Monomial& b);

// Leading (largest) monomial first, so printing is degree-descending.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_grlex(a, b) > 0;
  }
};

// Sparse exact-coefficient polynomial. Zero coefficients are never stored.
struct Polynomial {
  std::map<Monomial, Rational, GrlexDesc> terms;

  bool operator==(const Polynomial&) const = default;
  bool is_zero() const { return terms.empty(); }
  int32_t degree() const;  // 0 for the zero polynomial
  size_t term_count() const { return terms.size(); }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
};

Polynomial poly_zero();
Polynomial poly_const(const Rational& c);
Polynomial poly_one();
Polynomial poly_var(const AlgVar& v);
Polynomial poly_var(const VarId& v);
Polynomial poly_term(const Rational& c, const Monomial& m);

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a);
Polynomial scale(const Rational& c, const Polynomial& p);
Polynomial mul_monomial(const Polynomial& p, const Monomial& m);
// Product of a list of factors.
Polynomial expand(const std::vector<Polynomial>& factors);

// Replaces every variable that appears in the map; others stay themselves.
Polynomial substitute(const Polynomial& p,
                      const std::map<AlgVar, Polynomial>& map);

// x^e -> x for every e >= 1 (twins included), merging coefficients.
Polynomial multilinearize(const Polynomial& p);

// Truth-value conventions: which field element represents true.
enum class Convention : uint8_t { semialgebraic /* T=1 */, pcr /* T=0 */ };

// Substitutes assigned variables by their field values under the chosen
// convention; a twin always gets the complement value of its base variable.
Polynomial restrict_poly(const Polynomial& p,
                         const std::unordered_map<VarId, bool, VarIdHash>& assignment,
                         Convention conv);

// Exact evaluation; the map must cover every variable of p (twins are
// looked up by their base variable and complemented).
Rational evaluate(const Polynomial& p,
                  const std::unordered_map<VarId, Rational, VarIdHash>& values);

// Pigeon block of a structured variable: the first index for pigeon-carrying
// kinds (P, Y, Q, Z, X); -1 (unblocked) for R and RR.
int32_t pigeon_block(const VarId& v);

using AlgBlockMap = std::function<int32_t(const VarId&)>;
AlgBlockMap alg_pigeon_blocks();
AlgBlockMap alg_single_block();

// Max over monomials of the number of distinct blocks mentioned. With
// strict=true an unblocked variable raises an error; otherwise it is
// ignored.
int32_t block_degree(const Polynomial& p, const AlgBlockMap& bm, bool strict = false);
// block_degree under the pigeon block convention.
int32_t pigeon_degree(const Polynomial& p);

// Moebius transform: sum over Y <= Z <= X of (-1)^{|Z \ Y|} a(Z), with
// varsets as sorted VarId vectors. Missing a(Z) raises an error.
Rational moebius(const std::map<std::vector<VarId>, Rational>& a,
                 const std::vector<VarId>& X, const std::vector<VarId>& Y);

// Text grammar: terms joined by " + ", each `<num>/<den>` or
// `<num>/<den>*v[i,j]^e*...`; zero polynomial prints "0/1". The parser
// additionally accepts integer coefficients and coefficient-free monomials.
std::string to_string(const Polynomial& p);
std::string to_string(const Monomial& m);
Polynomial parse_polynomial(const std::string& text);

// Ordered list of initial polynomials (the algebraic counterpart of a CNF).
struct PolynomialSystem {
  std::vector<Polynomial> polys;
};

}  // namespace pigeon
