#include <algorithm>
#include <stdexcept>

#include "pigeon/encode.hpp"
#include "pigeon/semialgebraic.hpp"

namespace pigeon {

namespace {

// Multiplier factors of M(D) / M'(D): negated literals contribute the plain
// variable, positive ones the twin (SAR) or a (1-x) factor (SA).
struct MulPair {
  std::vector<AlgVar> mul, inv;
};

MulPair m_multiplier(const Clause& c, const VarTable& vars, bool twin) {
  MulPair mp;
  for (Lit l : c.lits) {
    VarId v = vars.name(lit_index(l));
    if (lit_negative(l)) mp.mul.push_back(AlgVar{v, false});
    else if (twin) mp.mul.push_back(AlgVar{v, true});
    else mp.inv.push_back(AlgVar{v, false});
  }
  return mp;
}

// -M(C) respectively -M'(C); the encoder already carries the minus sign.
Polynomial neg_m(const Clause& c, const VarTable& vars, bool twin) {
  return encode_clause(c, vars, twin ? EncodeMode::Mprime : EncodeMode::M);
}

std::vector<AlgVar> erase_one(std::vector<AlgVar> vs, const AlgVar& v) {
  auto it = std::find(vs.begin(), vs.end(), v);
  if (it == vs.end()) throw std::logic_error("sar simulation: missing multiplier factor");
  vs.erase(it);
  return vs;
}

Clause remove_lit(const Clause& c, Lit l) {
  std::vector<Lit> lits;
  for (Lit x : c.lits)
    if (x != l) lits.push_back(x);
  return make_clause(std::move(lits));
}

void append_scaled(Certificate& dst, const Certificate& src, const Rational& alpha) {
  if (alpha == 0) return;
  for (CertTerm t : src.terms) {
    t.alpha *= alpha;
    dst.terms.push_back(std::move(t));
  }
  dst.target += scale(alpha, src.target);
}

}  // namespace

Certificate sim_axiom(const Clause& c, const VarTable& vars, bool twin, int32_t input) {
  Certificate out;
  out.flavor = twin ? CertFlavor::sar : CertFlavor::sa;
  out.target = neg_m(c, vars, twin);
  if (c.lits.empty()) {
    // -M(empty) = S(empty) = -1: the initial inequality itself.
    out.terms.push_back(CertTerm{1, {}, {}, CertBase::initial, input, {}, {}});
    return out;
  }
  Lit pivot = c.lits.front();
  VarId pv = vars.name(lit_index(pivot));
  Clause rest = remove_lit(c, pivot);
  MulPair mp = m_multiplier(rest, vars, twin);

  out.terms.push_back(CertTerm{1, mp.mul, mp.inv, CertBase::initial, input, {}, {}});
  if (twin) {
    for (Lit l : rest.lits) {
      VarId v = vars.name(lit_index(l));
      if (lit_negative(l)) {
        // -(1-z) M'(Y,Z) = (z^2 - z) M'(Y,Z\z): the plain (1-z) summand of
        // S(C) dies without touching the twin.
        out.terms.push_back(CertTerm{1, erase_one(mp.mul, AlgVar{v, false}), {},
                                     CertBase::boolean_up, -1, AlgVar{v, false}, {}});
      } else {
        std::vector<AlgVar> sans = erase_one(mp.mul, AlgVar{v, true});
        std::vector<AlgVar> with_plain = sans;
        with_plain.push_back(AlgVar{v, false});
        out.terms.push_back(
            CertTerm{1, with_plain, {}, CertBase::comp_up, -1, AlgVar{v, false}, {}});
        out.terms.push_back(
            CertTerm{1, sans, {}, CertBase::boolean_up, -1, AlgVar{v, false}, {}});
      }
    }
    if (!lit_negative(pivot))
      out.terms.push_back(
          CertTerm{1, mp.mul, {}, CertBase::comp_up, -1, AlgVar{pv, false}, {}});
  } else {
    for (Lit l : rest.lits) {
      VarId v = vars.name(lit_index(l));
      if (lit_negative(l)) {
        out.terms.push_back(CertTerm{1, erase_one(mp.mul, AlgVar{v, false}), mp.inv,
                                     CertBase::boolean_up, -1, AlgVar{v, false}, {}});
      } else {
        out.terms.push_back(CertTerm{1, mp.mul, erase_one(mp.inv, AlgVar{v, false}),
                                     CertBase::boolean_up, -1, AlgVar{v, false}, {}});
      }
    }
    // The pivot summand of S(C) already leaves exactly -M(C); in SA the
    // (1-x)M + xM = M identity costs nothing.
  }
  return out;
}

Certificate sim_weakening(const Clause& a, const Clause& b, const VarTable& vars,
                          bool twin) {
  if (!clause_subset(a, b))
    throw std::runtime_error("sim_weakening: premise is not a subset of the target");
  Certificate out;
  out.flavor = twin ? CertFlavor::sar : CertFlavor::sa;
  out.target = neg_m(b, vars, twin) - neg_m(a, vars, twin);  // M(A) - M(B)
  MulPair prefix = m_multiplier(a, vars, twin);
  for (Lit l : b.lits) {
    if (clause_has_lit(a, l)) continue;
    VarId v = vars.name(lit_index(l));
    CertTerm t{1, prefix.mul, prefix.inv, CertBase::one, -1, {}, {}};
    // (1 - factor(l)) times the prefix product.
    if (twin) {
      t.inv.push_back(AlgVar{v, !lit_negative(l)});
      prefix.mul.push_back(AlgVar{v, !lit_negative(l)});
    } else if (lit_negative(l)) {
      t.inv.push_back(AlgVar{v, false});
      prefix.mul.push_back(AlgVar{v, false});
    } else {
      t.mul.push_back(AlgVar{v, false});
      prefix.inv.push_back(AlgVar{v, false});
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

Certificate sim_resolve(const Clause& a, const Clause& b, int32_t pivot,
                        const VarTable& vars, bool twin) {
  if (clause_has_var(a, pivot) || clause_has_var(b, pivot))
    throw std::runtime_error("sim_resolve: pivot occurs in a side clause");
  std::vector<Lit> merged = a.lits;
  merged.insert(merged.end(), b.lits.begin(), b.lits.end());
  Clause ab;
  try {
    ab = make_clause(std::move(merged));
  } catch (const std::exception&) {
    throw std::runtime_error("sim_resolve: side clauses clash on a variable");
  }
  auto with_lit = [](const Clause& c, Lit l) {
    std::vector<Lit> lits = c.lits;
    lits.push_back(l);
    return make_clause(std::move(lits));
  };
  Lit pos = make_lit(pivot, false), neg = make_lit(pivot, true);
  Clause ax = with_lit(a, pos), bnx = with_lit(b, neg);
  Certificate out;
  out.flavor = twin ? CertFlavor::sar : CertFlavor::sa;
  Certificate w1 = sim_weakening(ax, with_lit(ab, pos), vars, twin);
  Certificate w2 = sim_weakening(bnx, with_lit(ab, neg), vars, twin);
  out.terms = std::move(w1.terms);
  out.terms.insert(out.terms.end(), w2.terms.begin(), w2.terms.end());
  if (twin) {
    // (x + x' - 1) M'(A|B) = M'(A|B|~x) + M'(A|B|x) - M'(A|B).
    MulPair mp = m_multiplier(ab, vars, true);
    out.terms.push_back(CertTerm{1, mp.mul, {}, CertBase::comp_down, -1,
                                 AlgVar{vars.name(pivot), false}, {}});
  }
  out.target = neg_m(ab, vars, twin) - neg_m(ax, vars, twin) - neg_m(bnx, vars, twin);
  return out;
}

Certificate simulate_resolution_sar(const ResolutionProof& proof, const CnfFormula& f,
                                    CertFlavor flavor) {
  if (flavor == CertFlavor::lasserre)
    throw std::runtime_error("simulate_resolution_sar: flavor must be SA or SAR");
  verify_resolution(proof, f);
  if (!proof.is_refutation())
    throw std::runtime_error("simulate_resolution_sar: proof is not a refutation");
  bool twin = flavor == CertFlavor::sar;
  int64_t L = proof.size();
  std::vector<Rational> w(L, 0);
  w[L - 1] = 1;
  for (int64_t t = L - 1; t >= 0; --t) {
    if (w[t] == 0) continue;
    const Step& s = proof.steps[t];
    if (s.kind == StepKind::resolve) {
      w[s.a] += w[t];
      w[s.b] += w[t];
    } else if (s.kind == StepKind::weaken) {
      w[s.a] += w[t];
    }
  }
  Certificate out;
  out.flavor = flavor;
  for (int64_t t = 0; t < L; ++t) {
    if (w[t] == 0) continue;
    const Step& s = proof.steps[t];
    Certificate frag;
    switch (s.kind) {
      case StepKind::axiom:
        frag = sim_axiom(proof.clause(t), f.vars, twin, s.a);
        break;
      case StepKind::weaken:
        frag = sim_weakening(proof.clause(s.a), proof.clause(t), f.vars, twin);
        break;
      case StepKind::resolve: {
        Clause A = remove_lit(proof.clause(s.a), make_lit(s.pivot, false));
        Clause B = remove_lit(proof.clause(s.b), make_lit(s.pivot, true));
        frag = sim_resolve(A, B, s.pivot, f.vars, twin);
        break;
      }
    }
    append_scaled(out, frag, w[t]);
  }
  if (!(out.target == poly_const(-1)))
    throw std::logic_error("simulate_resolution_sar: fragments do not telescope to -1");
  return out;
}

namespace {

Polynomial subst_twins(const Polynomial& p) {
  std::map<AlgVar, Polynomial> map;
  for (const auto& [m, c] : p.terms)
    for (const auto& [v, e] : m.factors)
      if (v.twin)
        map.emplace(v, poly_one() - poly_var(AlgVar{v.var, false}));
  if (map.empty()) return p;
  return substitute(p, map);
}

}  // namespace

Certificate sar_to_sa(const Certificate& c) {
  if (c.flavor != CertFlavor::sar)
    throw std::runtime_error("sar_to_sa: input must be an SAR certificate");
  Certificate out;
  out.flavor = CertFlavor::sa;
  out.target = subst_twins(c.target);
  for (const CertTerm& t : c.terms) {
    if (t.base == CertBase::comp_up || t.base == CertBase::comp_down)
      continue;  // 1 - x - (1-x) expands to zero
    CertTerm r;
    r.alpha = t.alpha;
    r.base = t.base;
    r.input = t.input;
    r.square = subst_twins(t.square);
    // x' itself is a (1-x) factor and vice versa.
    for (const AlgVar& v : t.mul)
      (v.twin ? r.inv : r.mul).push_back(AlgVar{v.var, false});
    for (const AlgVar& v : t.inv)
      (v.twin ? r.mul : r.inv).push_back(AlgVar{v.var, false});
    // (1-x)^2 - (1-x) = x^2 - x: twin Boolean bases flip to the base variable.
    r.var = AlgVar{t.var.var, false};
    out.terms.push_back(std::move(r));
  }
  return out;
}

}  // namespace pigeon
