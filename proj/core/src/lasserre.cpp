#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "pigeon/semialgebraic.hpp"

namespace pigeon {

namespace {

using VarList = std::vector<AlgVar>;

void append_frag(Certificate& dst, const Certificate& src, const Rational& alpha) {
  if (alpha == 0) return;
  for (CertTerm t : src.terms) {
    t.alpha *= alpha;
    dst.terms.push_back(std::move(t));
  }
  dst.target += scale(alpha, src.target);
}

std::vector<AlgVar> to_vars(const Monomial& m) {
  std::vector<AlgVar> out;
  for (const auto& [v, e] : m.factors)
    for (int32_t i = 0; i < e; ++i) out.push_back(v);
  return out;
}

// Single-term fragments whose declared target is computed from the same
// data as the term, so assembly bookkeeping stays exact by construction.
Certificate one_up(const AlgVar& v, VarList mul) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  c.target = mul_monomial(poly_term(1, Monomial{{{v, 2}}}) - poly_var(v),
                          monomial_from(mul));
  c.terms.push_back(CertTerm{1, std::move(mul), {}, CertBase::boolean_up, -1, v, {}});
  return c;
}

Certificate one_down(const AlgVar& v, VarList mul) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  c.target = mul_monomial(poly_var(v) - poly_term(1, Monomial{{{v, 2}}}),
                          monomial_from(mul));
  c.terms.push_back(CertTerm{1, std::move(mul), {}, CertBase::boolean_down, -1, v, {}});
  return c;
}

Certificate one_mono(VarList mul, const Rational& alpha) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  c.target = scale(alpha, poly_term(1, monomial_from(mul)));
  c.terms.push_back(CertTerm{alpha, std::move(mul), {}, CertBase::one, -1, {}, {}});
  return c;
}

Certificate one_square(Polynomial q) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  c.target = q * q;
  CertTerm t;
  t.base = CertBase::square;
  t.square = std::move(q);
  c.terms.push_back(std::move(t));
  return c;
}

Certificate frag_initials(const PolynomialSystem& S, const std::vector<int32_t>& idxs,
                          const VarList& mul) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  Monomial m = monomial_from(mul);
  for (int32_t i : idxs) {
    c.target += mul_monomial(S.polys.at(i), m);
    c.terms.push_back(CertTerm{1, mul, {}, CertBase::initial, i, {}, {}});
  }
  return c;
}

// Boolean-gap telescoping m^2 - m = sum_t (v_t^2 - v_t) prod_{s<t} v_s
// prod_{s>t} v_s^2 for a multilinear monomial handle.
Certificate gap_fragment(const Monomial& m) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  const auto& fs = m.factors;
  for (size_t t = 0; t < fs.size(); ++t) {
    VarList mul;
    for (size_t s = 0; s < t; ++s) mul.push_back(fs[s].first);
    for (size_t s = t + 1; s < fs.size(); ++s) {
      mul.push_back(fs[s].first);
      mul.push_back(fs[s].first);
    }
    append_frag(c, one_up(fs[t].first, std::move(mul)), 1);
  }
  return c;
}

// Multiplies a fragment by a polynomial whose terms all have coefficient 1
// (a sum of monomial multipliers), replicating the term list per monomial.
Certificate frag_mul_poly(const Certificate& f, const Polynomial& x) {
  Certificate out;
  out.flavor = f.flavor;
  out.target = f.target * x;
  for (const auto& [m, coef] : x.terms) {
    if (!(coef == Rational(1)))
      throw std::logic_error("lasserre: multiplier polynomial must have unit coefficients");
    VarList extra = to_vars(m);
    for (CertTerm t : f.terms) {
      t.mul.insert(t.mul.end(), extra.begin(), extra.end());
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

// sum_j sum_{i != j} (1 - z_i - z_j) z_j + (n-2) sum_j (z_j^2 - z_j)
// + (1 - sum z)^2 = 1 - sum z. pair_product(j, i) must carry target
// (1 - z_i - z_j) z_j and gap(j) target z_j^2 - z_j.
void add_identity(Certificate& out, const std::vector<Polynomial>& zs,
                  const std::function<Certificate(int, int)>& pair_product,
                  const std::function<Certificate(int)>& gap) {
  int n = static_cast<int>(zs.size());
  if (n < 2) throw std::logic_error("lasserre identity needs two handles");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j) append_frag(out, pair_product(j, i), 1);
  if (n > 2)
    for (int j = 0; j < n; ++j) append_frag(out, gap(j), n - 2);
  Polynomial s = poly_one();
  for (const Polynomial& z : zs) s -= z;
  append_frag(out, one_square(std::move(s)), 1);
}

[[noreturn]] void bad_block(const char* what) {
  throw std::logic_error(std::string("lasserre: block target mismatch in ") + what);
}

}  // namespace

Certificate lasserre_identity(const std::vector<Monomial>& zs) {
  int n = static_cast<int>(zs.size());
  if (n < 2) throw std::runtime_error("lasserre_identity: need at least two handles");
  for (int i = 0; i < n; ++i) {
    if (zs[i].factors.empty())
      throw std::runtime_error("lasserre_identity: handles must be nonconstant");
    for (const auto& [v, e] : zs[i].factors)
      if (e != 1 || v.twin)
        throw std::runtime_error("lasserre_identity: handles must be plain multilinear monomials");
    for (int j = 0; j < i; ++j)
      if (zs[i] == zs[j]) throw std::runtime_error("lasserre_identity: handles must be distinct");
  }
  // Initial inequalities 1 - z_i - z_j in lexicographic (i, j) order, i < j.
  auto pair_idx = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  };
  PolynomialSystem S;
  std::vector<Polynomial> zpolys(n);
  for (int i = 0; i < n; ++i) zpolys[i] = poly_term(1, zs[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      S.polys.push_back(poly_one() - zpolys[i] - zpolys[j]);

  Certificate out;
  out.flavor = CertFlavor::lasserre;
  add_identity(
      out, zpolys,
      [&](int j, int i) { return frag_initials(S, {pair_idx(i, j)}, to_vars(zs[j])); },
      [&](int j) { return gap_fragment(zs[j]); });
  Polynomial expect = poly_one();
  for (const Polynomial& z : zpolys) expect -= z;
  if (!(out.target == expect)) bad_block("lasserre_identity");
  return out;
}

namespace {

// Clause-index lookup plus the wide-axiom accessors shared by the RPHP and
// ERPHP refutations. Under the narrow (3-CNF) formula every wide axiom is
// the index list of its chain clauses; their S-encodings telescope to the
// wide encoding.
struct RelCtx {
  const CnfFormula& f;
  int32_t k, n;
  bool narrow;
  std::unordered_map<Clause, int32_t, ClauseHash> index;

  RelCtx(const CnfFormula& formula, int32_t k_, int32_t n_, bool narrow_)
      : f(formula), k(k_), n(n_), narrow(narrow_) {
    for (size_t i = 0; i < f.clauses.size(); ++i)
      index.emplace(f.clauses[i], static_cast<int32_t>(i));
  }

  Lit lit(VarKind kind, int32_t i, int32_t j, bool neg) const {
    int32_t idx = f.vars.find(VarId{kind, i, j});
    if (idx < 0) throw std::logic_error("lasserre: variable missing from formula");
    return make_lit(idx, neg);
  }

  int32_t clause_idx(std::vector<Lit> lits) const {
    auto it = index.find(make_clause(std::move(lits)));
    if (it == index.end()) throw std::logic_error("lasserre: axiom clause missing from formula");
    return it->second;
  }

  std::vector<int32_t> pdef(int32_t u) const {
    if (!narrow) {
      std::vector<Lit> lits;
      for (int32_t l = 1; l <= n; ++l) lits.push_back(lit(VarKind::P, u, l, false));
      return {clause_idx(std::move(lits))};
    }
    std::vector<int32_t> out;
    out.push_back(clause_idx({lit(VarKind::P, u, 1, false), lit(VarKind::P, u, 2, false),
                              lit(VarKind::Y, u, 2, false)}));
    for (int32_t v = 2; v <= n - 3; ++v)
      out.push_back(clause_idx({lit(VarKind::Y, u, v, true),
                                lit(VarKind::P, u, v + 1, false),
                                lit(VarKind::Y, u, v + 1, false)}));
    out.push_back(clause_idx({lit(VarKind::Y, u, n - 2, true),
                              lit(VarKind::P, u, n - 1, false),
                              lit(VarKind::P, u, n, false)}));
    return out;
  }

  int32_t pinj(int32_t u, int32_t v, int32_t l) const {
    if (u > v) std::swap(u, v);
    return clause_idx({lit(VarKind::P, u, l, true), lit(VarKind::P, v, l, true)});
  }

  int32_t pimage(int32_t u, int32_t l) const {
    return clause_idx({lit(VarKind::P, u, l, true), lit(VarKind::R, l, 0, false)});
  }

  std::vector<int32_t> qdef(int32_t l) const {
    if (!narrow) {
      std::vector<Lit> lits{lit(VarKind::R, l, 0, true)};
      for (int32_t w = 1; w <= k - 1; ++w) lits.push_back(lit(VarKind::Q, l, w, false));
      return {clause_idx(std::move(lits))};
    }
    std::vector<int32_t> out;
    out.push_back(clause_idx({lit(VarKind::R, l, 0, true), lit(VarKind::Q, l, 1, false),
                              lit(VarKind::Z, l, 1, false)}));
    for (int32_t w = 1; w <= k - 4; ++w)
      out.push_back(clause_idx({lit(VarKind::Z, l, w, true),
                                lit(VarKind::Q, l, w + 1, false),
                                lit(VarKind::Z, l, w + 1, false)}));
    out.push_back(clause_idx({lit(VarKind::Z, l, k - 3, true),
                              lit(VarKind::Q, l, k - 2, false),
                              lit(VarKind::Q, l, k - 1, false)}));
    return out;
  }

  std::vector<int32_t> qinj(int32_t l, int32_t m, int32_t w) const {
    if (l > m) std::swap(l, m);
    if (!narrow)
      return {clause_idx({lit(VarKind::R, l, 0, true), lit(VarKind::R, m, 0, true),
                          lit(VarKind::Q, l, w, true), lit(VarKind::Q, m, w, true)})};
    return {clause_idx({lit(VarKind::R, l, 0, true), lit(VarKind::R, m, 0, true),
                        lit(VarKind::RR, l, m, false)}),
            clause_idx({lit(VarKind::RR, l, m, true), lit(VarKind::Q, l, w, true),
                        lit(VarKind::Q, m, w, true)})};
  }
};

AlgVar pv(int32_t u, int32_t l) { return AlgVar{VarId{VarKind::P, u, l}, false}; }
AlgVar rv(int32_t l) { return AlgVar{VarId{VarKind::R, l, 0}, false}; }
AlgVar qv(int32_t l, int32_t w) { return AlgVar{VarId{VarKind::Q, l, w}, false}; }

// x_{u,w} = sum_l p[u,l] r[l] q[l,w].
Polynomial x_poly(const RelCtx& ctx, int32_t u, int32_t w) {
  Polynomial x;
  for (int32_t l = 1; l <= ctx.n; ++l)
    x += poly_term(1, monomial_from({pv(u, l), rv(l), qv(l, w)}));
  return x;
}

// Substituted Boolean gap x_{u,w}^2 - x_{u,w}, rank 7: injectivity axioms
// against the off-diagonal, pure squares plus Boolean-gap telescoping on
// the diagonal.
Certificate a_block(const RelCtx& ctx, const PolynomialSystem& S, int32_t u, int32_t w) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  for (int32_t l = 1; l <= ctx.n; ++l)
    for (int32_t m = 1; m <= ctx.n; ++m) {
      if (m == l) continue;
      // (1 - q_l - q_m) q_l q_m p_l p_m r_l r_m, with the two (r - 1)
      // surpluses of the wide injectivity encoding absorbed as Boolean ups.
      append_frag(c, frag_initials(S, ctx.qinj(l, m, w),
                                   {qv(l, w), qv(m, w), pv(u, l), pv(u, m), rv(l), rv(m)}),
                  1);
      append_frag(c, one_up(rv(l), {qv(l, w), qv(m, w), pv(u, l), pv(u, m), rv(m)}), 1);
      append_frag(c, one_up(rv(m), {qv(l, w), qv(m, w), pv(u, l), pv(u, m), rv(l)}), 1);
      append_frag(c, one_mono({qv(l, w), qv(l, w), qv(m, w), pv(u, l), pv(u, m), rv(l), rv(m)}, 2),
                  1);
    }
  for (int32_t l = 1; l <= ctx.n; ++l)
    append_frag(c, gap_fragment(monomial_from({pv(u, l), rv(l), qv(l, w)})), 1);
  Polynomial x = x_poly(ctx, u, w);
  if (!(c.target == x * x - x)) bad_block("substituted Boolean gap");
  return c;
}

// Substituted pigeon axiom sum_w x_{u,w} - 1, rank 3.
Certificate b_block(const RelCtx& ctx, const PolynomialSystem& S, int32_t u) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  for (int32_t l = 1; l <= ctx.n; ++l) {
    append_frag(c, frag_initials(S, ctx.qdef(l), {pv(u, l), rv(l)}), 1);
    append_frag(c, one_up(rv(l), {pv(u, l)}), 1);
    append_frag(c, frag_initials(S, {ctx.pimage(u, l)}, {pv(u, l)}), 1);
    append_frag(c, one_up(pv(u, l), {}), 1);
  }
  append_frag(c, frag_initials(S, ctx.pdef(u), {}), 1);
  Polynomial expect = poly_const(-1);
  for (int32_t w = 1; w <= ctx.k - 1; ++w) expect += x_poly(ctx, u, w);
  if (!(c.target == expect)) bad_block("substituted pigeon axiom");
  return c;
}

// (1 - z_m - z_l) z_l for the handles z_l = r[l] q[l,w], rank 4.
Certificate rq_pair_product(const RelCtx& ctx, const PolynomialSystem& S, int32_t l,
                            int32_t m, int32_t w) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  append_frag(c, frag_initials(S, ctx.qinj(l, m, w), {qv(l, w), rv(m), qv(m, w)}), 1);
  append_frag(c, one_up(qv(l, w), {rv(m), qv(m, w)}), 1);
  append_frag(c, one_up(qv(m, w), {rv(m), qv(l, w)}), 1);
  append_frag(c, one_up(rv(m), {qv(l, w), qv(m, w)}), 1);
  append_frag(c, one_down(rv(l), {qv(l, w)}), 1);
  append_frag(c, one_down(qv(l, w), {rv(l), rv(l)}), 1);
  Polynomial zl = poly_term(1, monomial_from({rv(l), qv(l, w)}));
  Polynomial zm = poly_term(1, monomial_from({rv(m), qv(m, w)}));
  if (!(c.target == (poly_one() - zl - zm) * zl)) bad_block("r*q pair product");
  return c;
}

// Substituted hole axiom 1 - x_{u,w} - x_{v,w}, rank 4: P-injectivity plus
// the identity over the handles z_l = r[l] q[l,w].
Certificate c_block(const RelCtx& ctx, const PolynomialSystem& S, int32_t u, int32_t v,
                    int32_t w) {
  Certificate c;
  c.flavor = CertFlavor::lasserre;
  for (int32_t l = 1; l <= ctx.n; ++l)
    append_frag(c, frag_initials(S, {ctx.pinj(u, v, l)}, {rv(l), qv(l, w)}), 1);
  std::vector<Polynomial> zs(ctx.n);
  for (int32_t l = 1; l <= ctx.n; ++l)
    zs[l - 1] = poly_term(1, monomial_from({rv(l), qv(l, w)}));
  add_identity(
      c, zs,
      [&](int j, int i) { return rq_pair_product(ctx, S, j + 1, i + 1, w); },
      [&](int j) { return gap_fragment(monomial_from({rv(j + 1), qv(j + 1, w)})); });
  if (!(c.target == poly_one() - x_poly(ctx, u, w) - x_poly(ctx, v, w)))
    bad_block("substituted hole axiom");
  return c;
}

Certificate lasserre_relativized(const CnfFormula& f, int32_t k, int32_t n, bool narrow) {
  int64_t budget = static_cast<int64_t>(k - 1) * k * k * n * n * 16;
  if (budget > 4'000'000)
    throw std::runtime_error("lasserre construction: instance exceeds the term budget");
  PolynomialSystem S = sa_system(f);
  RelCtx ctx{f, k, n, narrow};
  Certificate out;
  out.flavor = CertFlavor::lasserre;
  for (int32_t w = 1; w <= k - 1; ++w) {
    std::vector<Polynomial> zs(k);
    for (int32_t u = 1; u <= k; ++u) zs[u - 1] = x_poly(ctx, u, w);
    // One hole block per unordered pigeon pair, multiplied by either side.
    std::vector<std::vector<Certificate>> holes(k + 1);
    for (int32_t u = 1; u <= k; ++u) {
      holes[u].resize(k + 1);
      for (int32_t v = u + 1; v <= k; ++v) holes[u][v] = c_block(ctx, S, u, v, w);
    }
    add_identity(
        out, zs,
        [&](int j, int i) {
          int32_t uj = j + 1, ui = i + 1;
          const Certificate& pair = holes[std::min(ui, uj)][std::max(ui, uj)];
          return frag_mul_poly(pair, zs[j]);
        },
        [&](int j) { return a_block(ctx, S, j + 1, w); });
  }
  for (int32_t u = 1; u <= k; ++u) append_frag(out, b_block(ctx, S, u), 1);
  if (!(out.target == poly_const(-1))) bad_block("final addition");
  return out;
}

}  // namespace

Certificate lasserre_php(int32_t k) {
  CnfFormula f = gen_php(k);
  PolynomialSystem S = sa_system(f);
  RelCtx ctx{f, k, 0, false};  // reused for the clause-index lookup only
  auto xv = [](int32_t u, int32_t w) { return AlgVar{VarId{VarKind::X, u, w}, false}; };
  Certificate out;
  out.flavor = CertFlavor::lasserre;
  for (int32_t w = 1; w <= k - 1; ++w) {
    std::vector<Polynomial> zs(k);
    for (int32_t u = 1; u <= k; ++u) zs[u - 1] = poly_var(xv(u, w));
    add_identity(
        out, zs,
        [&](int j, int i) {
          int32_t uj = j + 1, ui = i + 1;
          int32_t idx = ctx.clause_idx({ctx.lit(VarKind::X, std::min(ui, uj), w, true),
                                        ctx.lit(VarKind::X, std::max(ui, uj), w, true)});
          return frag_initials(S, {idx}, {xv(uj, w)});
        },
        [&](int j) { return one_up(xv(j + 1, w), {}); });
  }
  for (int32_t u = 1; u <= k; ++u) {
    std::vector<Lit> lits;
    for (int32_t w = 1; w <= k - 1; ++w) lits.push_back(ctx.lit(VarKind::X, u, w, false));
    append_frag(out, frag_initials(S, {ctx.clause_idx(std::move(lits))}, {}), 1);
  }
  if (!(out.target == poly_const(-1))) bad_block("pigeonhole final addition");
  return out;
}

Certificate lasserre_rphp(int32_t k, int32_t n) {
  return lasserre_relativized(gen_rphp(k, n), k, n, false);
}

Certificate lasserre_erphp(int32_t k, int32_t n) {
  return lasserre_relativized(gen_erphp(k, n), k, n, true);
}

}  // namespace pigeon
