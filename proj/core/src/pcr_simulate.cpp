#include <map>
#include <stdexcept>
#include <tuple>

#include "pigeon/encode.hpp"
#include "pigeon/pcr.hpp"

namespace pigeon {

PcrProof simulate_resolution_pcr(const ResolutionProof& pi, const CnfFormula& f) {
  verify_resolution(pi, f);
  PolynomialSystem S = pcr_system(f);
  PcrProof out;
  std::vector<int32_t> map(pi.steps.size(), -1);
  auto lit_alg = [&](Lit l) { return AlgVar{f.vars.name(lit_index(l)), lit_negative(l)}; };
  // From the monomial of a premise, multiply in the literals of the target
  // clause the premise lacks; disjointness keeps the product multilinear.
  auto raise = [&](int32_t step, const Clause& from, const Clause& to) {
    for (Lit l : to.lits)
      if (!clause_has_lit(from, l)) step = out.add_mult(step, lit_alg(l));
    return step;
  };

  for (size_t t = 0; t < pi.steps.size(); ++t) {
    const Step& s = pi.steps[t];
    switch (s.kind) {
      case StepKind::axiom:
        map[t] = out.add_initial(S, s.a);
        break;
      case StepKind::weaken:
        map[t] = raise(map[s.a], pi.clause(s.a), pi.clause(static_cast<int64_t>(t)));
        break;
      case StepKind::resolve: {
        // Premise monomials are M(A)x and M(B)x'; with M = M(A v B) derive
        // Mx, Mx', their sum, and M(1 - x - x'), which add up to M.
        Clause c = pi.clause(static_cast<int64_t>(t));
        int32_t u = raise(map[s.a], pi.clause(s.a), c);
        int32_t v = raise(map[s.b], pi.clause(s.b), c);
        int32_t sum = out.add_lin_comb(u, v, 1, 1);
        int32_t comp = out.add_complementarity(f.vars.name(s.pivot));
        for (Lit l : c.lits) comp = out.add_mult(comp, lit_alg(l));
        map[t] = out.add_lin_comb(sum, comp, 1, 1);
        break;
      }
    }
  }
  return out;
}

namespace {

AlgVar xvar(int32_t v, int32_t j) { return AlgVar{VarId{VarKind::X, v, j}, false}; }

[[noreturn]] void not_tphp(const std::string& why) {
  throw std::runtime_error("delta_transform: input not a TPHP refutation: " + why);
}

// Positions of the APHP polynomials: the per-pigeon polynomial of each row,
// the same-hole pair monomials, and the same-row pair monomials.
struct AphpIndex {
  std::vector<int32_t> row;                           // [k+1], 1-based
  std::map<std::tuple<int32_t, int32_t, int32_t>, int32_t> hole_pair;  // (w, v, v'), v < v'
  std::map<std::tuple<int32_t, int32_t, int32_t>, int32_t> row_pair;   // (v, w, w'), w < w'
};

AphpIndex index_aphp(const PolynomialSystem& A, int32_t k) {
  AphpIndex idx;
  idx.row.assign(static_cast<size_t>(k) + 1, -1);
  for (size_t i = 0; i < A.polys.size(); ++i) {
    const Polynomial& p = A.polys[i];
    if (p.terms.count(monomial_one())) {
      // Grlex-descending storage: begin() is a degree-1 term, not the 1.
      idx.row.at(static_cast<size_t>(p.terms.begin()->first.factors.at(0).first.var.i)) =
          static_cast<int32_t>(i);
      continue;
    }
    const Monomial& m = p.terms.begin()->first;
    const VarId& a = m.factors.at(0).first.var;
    const VarId& b = m.factors.at(1).first.var;
    if (a.j == b.j)
      idx.hole_pair[{a.j, a.i, b.i}] = static_cast<int32_t>(i);
    else
      idx.row_pair[{a.i, a.j, b.j}] = static_cast<int32_t>(i);
  }
  return idx;
}

// Reduced form: exponents clamp to 1, monomials mentioning one row twice or
// one hole twice vanish. This is the normal form modulo the pair monomials
// of APHP and the Boolean axioms.
bool nf_monomial(const Monomial& m, Monomial& out) {
  out.factors.clear();
  for (const auto& [av, e] : m.factors) {
    for (const auto& [prev, pe] : out.factors)
      if (prev.var.i == av.var.i || prev.var.j == av.var.j) return false;
    out.factors.emplace_back(av, 1);
  }
  return true;
}

Polynomial nf(const Polynomial& p) {
  Polynomial r;
  Monomial m;
  for (const auto& [mono, c] : p.terms) {
    if (!nf_monomial(mono, m)) continue;
    auto [it, fresh] = r.terms.emplace(m, c);
    if (!fresh && (it->second += c) == 0) r.terms.erase(it);
  }
  return r;
}

struct DeltaCtx {
  int32_t k = 0;
  PolynomialSystem A;
  AphpIndex idx;
  PcrProof out;
  int32_t zero = -1;
  std::map<VarId, int32_t> bool_cache;
  std::map<int32_t, int32_t> init_cache;

  int32_t initial(int32_t i) {
    auto [it, fresh] = init_cache.try_emplace(i, -1);
    if (fresh) it->second = out.add_initial(A, i);
    return it->second;
  }
  int32_t bool_axiom(const VarId& x) {
    auto [it, fresh] = bool_cache.try_emplace(x, -1);
    if (fresh) it->second = out.add_boolean_axiom(AlgVar{x, false});
    return it->second;
  }
  int32_t zero_step() {
    if (zero < 0) {
      int32_t j = bool_axiom(xvar(1, 1).var);
      zero = out.add_lin_comb(j, j, 1, -1);
    }
    return zero;
  }
};

// Rewrites the polynomial of `step` into its reduced form by subtracting,
// one leading offender at a time, an explicit multiple of a pair axiom or a
// Boolean axiom. Every emitted polynomial has the offender's degree.
int32_t reduce_to_nf(DeltaCtx& c, int32_t step) {
  for (;;) {
    const Polynomial& p = c.out.polys.at(static_cast<size_t>(step));
    Monomial offender;
    Rational coef;
    int32_t square_var_pos = -1;  // position of a squared factor, else -1
    int32_t pair_i = -1, pair_j = -1;
    bool found = false;
    for (const auto& [m, cf] : p.terms) {  // grlex-descending: largest offender leads
      for (size_t i = 0; i < m.factors.size() && !found; ++i) {
        if (m.factors[i].second >= 2) {
          square_var_pos = static_cast<int32_t>(i);
          found = true;
          break;
        }
        for (size_t j = i + 1; j < m.factors.size(); ++j) {
          const VarId& a = m.factors[i].first.var;
          const VarId& b = m.factors[j].first.var;
          if (a.i == b.i || a.j == b.j) {
            pair_i = static_cast<int32_t>(i);
            pair_j = static_cast<int32_t>(j);
            found = true;
            break;
          }
        }
      }
      if (found) {
        offender = m;
        coef = cf;
        break;
      }
    }
    if (!found) return step;

    // Axiom g with leading monomial g0 dividing the offender, times the
    // quotient, cancels it; the Boolean case leaves a strictly smaller tail.
    Monomial quotient = offender;
    int32_t g;
    if (square_var_pos >= 0) {
      auto& f = quotient.factors[static_cast<size_t>(square_var_pos)];
      g = c.bool_axiom(f.first.var);
      f.second -= 2;
      if (f.second == 0) quotient.factors.erase(quotient.factors.begin() + square_var_pos);
    } else {
      const VarId& a = offender.factors[static_cast<size_t>(pair_i)].first.var;
      const VarId& b = offender.factors[static_cast<size_t>(pair_j)].first.var;
      g = a.j == b.j ? c.initial(c.idx.hole_pair.at({a.j, std::min(a.i, b.i), std::max(a.i, b.i)}))
                     : c.initial(c.idx.row_pair.at({a.i, std::min(a.j, b.j), std::max(a.j, b.j)}));
      quotient.factors[static_cast<size_t>(pair_j)].second -= 1;
      quotient.factors[static_cast<size_t>(pair_i)].second -= 1;
      if (quotient.factors[static_cast<size_t>(pair_j)].second == 0)
        quotient.factors.erase(quotient.factors.begin() + pair_j);
      if (quotient.factors[static_cast<size_t>(pair_i)].second == 0)
        quotient.factors.erase(quotient.factors.begin() + pair_i);
    }
    for (const auto& [av, e] : quotient.factors)
      for (int32_t r = 0; r < e; ++r) g = c.out.add_mult(g, av);
    step = c.out.add_lin_comb(step, g, 1, -coef);
  }
}

}  // namespace

Polynomial delta_image(const AlgVar& v, int32_t k) {
  if (k < 3) throw std::runtime_error("delta_image: k must be >= 3");
  int32_t row = v.var.i, w = v.var.j;
  switch (v.var.kind) {
    case VarKind::Q:
      return v.twin ? poly_var(xvar(row, w)) : poly_one() - poly_var(xvar(row, w));
    case VarKind::Z: {
      Polynomial sum;
      for (int32_t j = 1; j <= k - 1; ++j)
        if (v.twin ? j <= w : j > w) sum += poly_var(xvar(row, j));
      return poly_one() - sum;
    }
    default:
      not_tphp("variable " + to_string(v) + " is not a q/z variable");
  }
}

PcrProof delta_transform(const PcrProof& pi, int32_t k) {
  if (k < 3) throw std::runtime_error("delta_transform: k must be >= 3");
  PolynomialSystem S = pcr_system(gen_tphp(k));
  try {
    verify_pcr(pi, S);
  } catch (const std::exception& e) {
    not_tphp(e.what());
  }
  if (!pi.is_refutation()) not_tphp("final polynomial is not 1");

  DeltaCtx c;
  c.k = k;
  c.A = gen_aphp(k);
  c.idx = index_aphp(c.A, k);
  std::vector<int32_t> map(pi.steps.size(), -1);

  for (size_t t = 0; t < pi.steps.size(); ++t) {
    const PcrStep& s = pi.steps[t];
    switch (s.kind) {
      case PcrStepKind::boolean_axiom:
        // delta(y)^2 - delta(y) reduces to 0 for every q/z variable or twin.
        delta_image(s.var, k);
        map[t] = c.zero_step();
        break;
      case PcrStepKind::complementarity:
        // q: the image is identically 0; z: it is minus the row polynomial.
        if (s.var.var.kind == VarKind::Q) {
          map[t] = c.zero_step();
        } else if (s.var.var.kind == VarKind::Z) {
          int32_t a = c.initial(c.idx.row.at(static_cast<size_t>(s.var.var.i)));
          map[t] = c.out.add_lin_comb(a, a, -1, 0);
        } else {
          not_tphp("variable " + to_string(s.var.var) + " is not a q/z variable");
        }
        break;
      case PcrStepKind::initial: {
        std::map<AlgVar, Polynomial> dmap;
        for (const auto& [m, cf] : S.polys.at(static_cast<size_t>(s.input)).terms)
          for (const auto& [av, e] : m.factors) dmap.emplace(av, delta_image(av, k));
        Polynomial img = nf(substitute(S.polys[static_cast<size_t>(s.input)], dmap));
        if (img.is_zero()) {
          map[t] = c.zero_step();
        } else {
          // Every defining clause's reduced image is its row polynomial.
          int32_t row = img.terms.begin()->first.factors.at(0).first.var.i;
          int32_t a = c.idx.row.at(static_cast<size_t>(row));
          if (c.A.polys[static_cast<size_t>(a)] != img)
            throw std::runtime_error("delta_transform: unrecognized axiom image " + to_string(img));
          map[t] = c.initial(a);
        }
        break;
      }
      case PcrStepKind::lin_comb:
        map[t] = c.out.add_lin_comb(map.at(static_cast<size_t>(s.a)),
                                    map.at(static_cast<size_t>(s.b)), s.alpha, s.beta);
        break;
      case PcrStepKind::mult: {
        // delta(y) is affine; multiply the premise's reduced image by each
        // variable, re-reduce, and fold the affine combination left.
        Polynomial dy = delta_image(s.var, k);
        int32_t base = map.at(static_cast<size_t>(s.a));
        int32_t acc = -1;
        auto it = dy.terms.find(monomial_one());
        if (it != dy.terms.end()) acc = c.out.add_lin_comb(base, base, it->second, 0);
        for (const auto& [m, cf] : dy.terms) {
          if (m == monomial_one()) continue;
          int32_t part = reduce_to_nf(c, c.out.add_mult(base, m.factors.at(0).first));
          acc = acc < 0 ? c.out.add_lin_comb(part, part, cf, 0)
                        : c.out.add_lin_comb(acc, part, 1, cf);
        }
        map[t] = acc;
        break;
      }
    }
  }

  if (!map.empty()) {
    size_t keep = static_cast<size_t>(map.back()) + 1;
    c.out.steps.resize(keep);
    c.out.polys.resize(keep);
  }
  if (!c.out.is_refutation())
    throw std::runtime_error("delta_transform: internal error, transform lost the conclusion");
  return c.out;
}

}  // namespace pigeon
