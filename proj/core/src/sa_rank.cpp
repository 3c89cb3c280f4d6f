#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "pigeon/consistency.hpp"
#include "pigeon/encode.hpp"
#include "pigeon/simplex.hpp"

namespace pigeon {

namespace {

enum class RowKind : uint8_t { moebius, falsifier };

// One LP row: its multilinear polynomial P with "P >= 0" the row's meaning,
// plus enough provenance to rebuild an SA derivation of P from the initial
// clauses. Moebius rows carry (X, Y) with P = prod_Y x * prod_{X\Y} (1-x);
// falsifier rows carry the source clause and the X-wide extension killed
// exactly by the falsifying pattern, with P = -M(extension).
struct RowInfo {
  RowKind kind = RowKind::moebius;
  std::vector<VarId> X;
  std::vector<VarId> Y;
  int32_t clause = -1;
  Clause extended;
  Polynomial poly;
};

struct SaRankLp {
  std::vector<std::vector<VarId>> cols;  // nonempty X in W^k, map order
  std::map<std::vector<VarId>, int32_t> col_of;
  std::vector<RowInfo> rows;
  LinearSystem sys;
};

// Row polynomial to dense coefficients, a(empty) = 1 substituted:
// sum_Z coef_Z a(Z) >= -coef_empty.
void add_row(SaRankLp& lp, RowInfo info) {
  std::vector<Rational> coef(lp.cols.size(), Rational(0));
  Rational rhs = 0;
  for (const auto& [mono, cc] : info.poly.terms) {
    std::vector<VarId> Z;
    for (const auto& [av, e] : mono.factors) Z.push_back(av.var);
    if (Z.empty()) {
      rhs -= cc;
      continue;
    }
    auto it = lp.col_of.find(Z);
    if (it == lp.col_of.end())
      throw std::logic_error("sa rank: row polynomial leaves the variable-set domain");
    coef[it->second] += cc;
  }
  lp.sys.rows.push_back(std::move(coef));
  lp.sys.rhs.push_back(std::move(rhs));
  lp.rows.push_back(std::move(info));
}

Polynomial updown_poly(const std::vector<VarId>& X, const std::vector<VarId>& Y) {
  std::vector<Polynomial> factors;
  for (const VarId& v : X)
    factors.push_back(std::binary_search(Y.begin(), Y.end(), v)
                          ? poly_var(v)
                          : poly_one() - poly_var(v));
  return expand(factors);
}

SaRankLp build_lp(const CnfFormula& f, int32_t k) {
  SaRankLp lp;
  const int32_t nv = f.vars.size();
  for (uint32_t mask = 1; mask < (uint32_t{1} << nv); ++mask) {
    if (std::popcount(mask) > k) continue;
    std::vector<VarId> X;
    for (int32_t i = 0; i < nv; ++i)
      if (mask >> i & 1) X.push_back(f.vars.name(i));
    std::sort(X.begin(), X.end());
    lp.col_of.emplace(std::move(X), 0);
  }
  int32_t cidx = 0;
  for (auto& [X, idx] : lp.col_of) {
    idx = cidx++;
    lp.cols.push_back(X);
  }
  lp.sys.cols = cidx;

  for (const auto& X : lp.cols) {
    const int32_t nx = static_cast<int32_t>(X.size());
    for (uint32_t ym = 0; ym < (uint32_t{1} << nx); ++ym) {
      RowInfo info;
      info.kind = RowKind::moebius;
      info.X = X;
      for (int32_t i = 0; i < nx; ++i)
        if (ym >> i & 1) info.Y.push_back(X[i]);
      info.poly = updown_poly(X, info.Y);
      add_row(lp, std::move(info));
    }
  }

  // Falsifier rows, deduplicated on (X, ones): the first clause falsified
  // by the pattern keeps the provenance.
  std::set<std::pair<std::vector<VarId>, std::vector<VarId>>> seen;
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const Clause& c = f.clauses[ci];
    std::vector<VarId> cv;
    std::vector<VarId> forced_ones;
    for (Lit l : c.lits) {
      cv.push_back(f.vars.name(lit_index(l)));
      if (lit_negative(l)) forced_ones.push_back(f.vars.name(lit_index(l)));
    }
    std::sort(cv.begin(), cv.end());
    std::sort(forced_ones.begin(), forced_ones.end());
    if (static_cast<int32_t>(cv.size()) > k) continue;
    std::vector<std::vector<VarId>> supersets;
    if (cv.empty()) supersets.push_back({});
    for (const auto& X : lp.cols)
      if (std::includes(X.begin(), X.end(), cv.begin(), cv.end())) supersets.push_back(X);
    for (const auto& X : supersets) {
      std::vector<VarId> rest;
      std::set_difference(X.begin(), X.end(), cv.begin(), cv.end(),
                          std::back_inserter(rest));
      for (uint32_t rm = 0; rm < (uint32_t{1} << rest.size()); ++rm) {
        std::vector<VarId> ones = forced_ones;
        for (size_t i = 0; i < rest.size(); ++i)
          if (rm >> i & 1) ones.push_back(rest[i]);
        std::sort(ones.begin(), ones.end());
        if (!seen.insert({X, ones}).second) continue;
        std::vector<Lit> lits;
        for (const VarId& v : X)
          lits.push_back(make_lit(f.vars.find(v),
                                  std::binary_search(ones.begin(), ones.end(), v)));
        RowInfo info;
        info.kind = RowKind::falsifier;
        info.X = X;
        info.Y = std::move(ones);
        info.clause = static_cast<int32_t>(ci);
        info.extended = make_clause(std::move(lits));
        info.poly = encode_clause(info.extended, f.vars, EncodeMode::M);
        add_row(lp, std::move(info));
      }
    }
  }
  return lp;
}

SaRankLp guarded_lp(const CnfFormula& f, int32_t k) {
  if (k < 0) throw std::runtime_error("sa rank decision: negative rank");
  if (f.vars.size() > 12 || k > 4)
    throw std::runtime_error(
        "sa rank decision: beyond the desk-scale budget (at most 12 variables, rank 4)");
  SaRankLp lp = build_lp(f, k);
  const int64_t m = static_cast<int64_t>(lp.sys.rows.size());
  if (m * (2 * lp.sys.cols + 2 * m + 1) > 6'000'000)
    throw std::runtime_error("sa rank decision: the rank tableau exceeds the desk-scale budget");
  return lp;
}

}  // namespace

SaRankDecision decide_sa_rank(const CnfFormula& f, int32_t k) {
  SaRankLp lp = guarded_lp(f, k);
  const FeasibilityResult fr = solve_feasibility(lp.sys);
  SaRankDecision out;
  if (fr.feasible) {
    out.functional.values[{}] = 1;
    for (size_t j = 0; j < lp.cols.size(); ++j)
      out.functional.values[lp.cols[j]] = fr.point[j];
    out.family = moebius_family(out.functional);
    const ConsistencyReport rep = check_consistency(out.family, f, HSpec{false, k});
    if (!rep.ok())
      throw std::logic_error("decide_sa_rank: derived family fails its audit: " +
                             rep.violations.front());
    return out;
  }

  // Infeasible: the Farkas combination of the multilinear row polynomials
  // is the negative constant -beta, so the scaled row derivations
  // concatenate into a rank-k refutation. Moebius rows are single one-base
  // terms; falsifier rows derive -M(extension) from the source clause.
  out.refuted = true;
  Certificate& cert = out.refutation;
  cert.flavor = CertFlavor::sa;
  Rational beta = 0;
  for (size_t i = 0; i < lp.rows.size(); ++i) beta += fr.farkas[i] * lp.sys.rhs[i];
  if (!(beta > 0)) throw std::logic_error("decide_sa_rank: degenerate Farkas value");
  Polynomial target = poly_zero();
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    if (fr.farkas[i] == 0) continue;
    const Rational w = fr.farkas[i] / beta;
    const RowInfo& ri = lp.rows[i];
    if (ri.kind == RowKind::moebius) {
      CertTerm t;
      t.alpha = w;
      for (const VarId& v : ri.X) {
        if (std::binary_search(ri.Y.begin(), ri.Y.end(), v))
          t.mul.push_back(AlgVar{v, false});
        else
          t.inv.push_back(AlgVar{v, false});
      }
      t.base = CertBase::one;
      cert.terms.push_back(std::move(t));
    } else {
      Certificate frag = sim_axiom(f.clauses[ri.clause], f.vars, false, ri.clause);
      const Certificate widen =
          sim_weakening(f.clauses[ri.clause], ri.extended, f.vars, false);
      frag.target = frag.target + widen.target;
      frag.terms.insert(frag.terms.end(), widen.terms.begin(), widen.terms.end());
      if (!(frag.target == ri.poly))
        throw std::logic_error("decide_sa_rank: falsifier fragment misses its row");
      for (CertTerm& t : frag.terms) {
        t.alpha *= w;
        cert.terms.push_back(std::move(t));
      }
    }
    target = target + scale(w, ri.poly);
  }
  if (!(target == poly_const(-1)))
    throw std::logic_error("decide_sa_rank: Farkas combination is not the constant -1");
  cert.target = std::move(target);
  const CertMetrics met = verify_certificate(cert, sa_system(f));
  if (met.rank > k)
    throw std::logic_error("decide_sa_rank: refutation exceeds the requested rank");
  return out;
}

std::string sa_rank_lp_text(const CnfFormula& f, int32_t k) {
  const SaRankLp lp = guarded_lp(f, k);
  std::ostringstream out;
  out << "# rank-" << k << " sherali-adams feasibility for " << family_name(f.family)
      << ": " << lp.cols.size() << " unknowns a{X}, a{} = 1 substituted\n";
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const RowInfo& ri = lp.rows[i];
    if (ri.kind == RowKind::moebius)
      out << "m " << varset_to_string(ri.X) << " " << varset_to_string(ri.Y) << " : ";
    else
      out << "c " << ri.clause << " " << varset_to_string(ri.X) << " ones "
          << varset_to_string(ri.Y) << " : ";
    bool first = true;
    for (size_t j = 0; j < lp.cols.size(); ++j) {
      const Rational& cc = lp.sys.rows[i][j];
      if (cc == 0) continue;
      if (!first) out << " + ";
      out << to_string(cc) << "*a" << varset_to_string(lp.cols[j]);
      first = false;
    }
    if (first) out << "0";
    out << " >= " << to_string(lp.sys.rhs[i]) << "\n";
  }
  return out.str();
}

}  // namespace pigeon
