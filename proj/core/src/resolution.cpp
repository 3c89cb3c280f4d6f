#include "pigeon/resolution.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pigeon {

namespace {

[[noreturn]] void step_fail(int64_t idx, const std::string& msg) {
  throw std::runtime_error("resolution step " + std::to_string(idx) + ": " + msg);
}

bool span_has_lit(std::span<const Lit> s, Lit l) {
  auto it = std::lower_bound(s.begin(), s.end(), l, [](Lit x, Lit y) {
    if (lit_index(x) != lit_index(y)) return lit_index(x) < lit_index(y);
    return x < y;
  });
  return it != s.end() && *it == l;
}

// Merged resolvent of a and b skipping the pivot variable; false if the
// merge is tautological.
bool merge_resolvent(std::span<const Lit> a, std::span<const Lit> b, int32_t pivot,
                     std::vector<Lit>& out) {
  out.clear();
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Lit l;
    if (j == b.size() || (i < a.size() && lit_index(a[i]) < lit_index(b[j]))) {
      l = a[i++];
    } else if (i == a.size() || lit_index(b[j]) < lit_index(a[i])) {
      l = b[j++];
    } else {
      if (a[i] != b[j] && lit_index(a[i]) != pivot) return false;
      l = a[i];
      ++i;
      ++j;
    }
    if (lit_index(l) != pivot) out.push_back(l);
  }
  return true;
}

}  // namespace

Clause ResolutionProof::clause(int64_t i) const {
  auto s = lits(i);
  return Clause{std::vector<Lit>(s.begin(), s.end())};
}

int32_t ResolutionProof::push(StepKind kind, int32_t a, int32_t b, int32_t pivot,
                              std::span<const Lit> ls) {
  Step s;
  s.kind = kind;
  s.a = a;
  s.b = b;
  s.pivot = pivot;
  s.off = arena.size();
  s.len = static_cast<uint32_t>(ls.size());
  arena.insert(arena.end(), ls.begin(), ls.end());
  steps.push_back(s);
  return static_cast<int32_t>(steps.size() - 1);
}

int32_t ResolutionProof::add_axiom(const CnfFormula& f, int32_t clause_idx) {
  if (clause_idx < 0 || clause_idx >= static_cast<int32_t>(f.clauses.size()))
    step_fail(size(), "axiom clause index out of range");
  return push(StepKind::axiom, clause_idx, -1, -1, f.clauses[clause_idx].lits);
}

int32_t ResolutionProof::add_resolve(int32_t a, int32_t b, int32_t pivot) {
  if (a < 0 || b < 0 || a >= size() || b >= size())
    step_fail(size(), "resolve premise out of range");
  auto la = lits(a), lb = lits(b);
  if (!span_has_lit(la, make_lit(pivot, false)))
    step_fail(size(), "first premise lacks positive pivot");
  if (!span_has_lit(lb, make_lit(pivot, true)))
    step_fail(size(), "second premise lacks negative pivot");
  std::vector<Lit> out;
  out.reserve(la.size() + lb.size());
  if (!merge_resolvent(la, lb, pivot, out)) step_fail(size(), "tautological resolvent");
  return push(StepKind::resolve, a, b, pivot, out);
}

int32_t ResolutionProof::add_weaken(int32_t a, const Clause& target) {
  if (a < 0 || a >= size()) step_fail(size(), "weaken premise out of range");
  if (!clause_subset(clause(a), target)) step_fail(size(), "weaken target misses premise literal");
  return push(StepKind::weaken, a, -1, -1, target.lits);
}

ProofMetrics verify_resolution(const ResolutionProof& proof, const CnfFormula& f,
                               const BlockMap* bm_in) {
  BlockMap bm = bm_in ? *bm_in : pigeon_blocks(f);
  const int64_t S = proof.size();
  ProofMetrics m;
  m.size = S;
  std::vector<int64_t> lastuse(S);
  std::vector<int32_t> refs(S, 0);
  std::vector<Lit> scratch;
  for (int64_t t = 0; t < S; ++t) {
    const Step& s = proof.steps[t];
    auto stored = proof.lits(t);
    // Structural canonicity of the stored clause.
    for (size_t i = 0; i < stored.size(); ++i) {
      if (lit_index(stored[i]) < 0 || lit_index(stored[i]) >= f.vars.size())
        step_fail(t, "literal out of range");
      if (i > 0 && lit_index(stored[i - 1]) >= lit_index(stored[i]))
        step_fail(t, "stored clause not canonical");
    }
    switch (s.kind) {
      case StepKind::axiom: {
        if (s.a < 0 || s.a >= static_cast<int32_t>(f.clauses.size()))
          step_fail(t, "axiom clause index out of range");
        const auto& want = f.clauses[s.a].lits;
        if (!std::equal(stored.begin(), stored.end(), want.begin(), want.end()))
          step_fail(t, "axiom clause mismatch");
        break;
      }
      case StepKind::resolve: {
        if (s.a < 0 || s.a >= t || s.b < 0 || s.b >= t)
          step_fail(t, "dangling premise reference");
        if (s.pivot < 0 || s.pivot >= f.vars.size()) step_fail(t, "pivot out of range");
        auto la = proof.lits(s.a), lb = proof.lits(s.b);
        if (!span_has_lit(la, make_lit(s.pivot, false)))
          step_fail(t, "first premise lacks positive pivot");
        if (!span_has_lit(lb, make_lit(s.pivot, true)))
          step_fail(t, "second premise lacks negative pivot");
        if (!merge_resolvent(la, lb, s.pivot, scratch)) step_fail(t, "tautological resolvent");
        if (!std::equal(stored.begin(), stored.end(), scratch.begin(), scratch.end()))
          step_fail(t, "stored resolvent differs from recomputation");
        refs[s.a]++;
        refs[s.b]++;
        lastuse[s.a] = t;
        lastuse[s.b] = t;
        break;
      }
      case StepKind::weaken: {
        if (s.a < 0 || s.a >= t) step_fail(t, "dangling premise reference");
        auto la = proof.lits(s.a);
        size_t j = 0;
        for (Lit l : la) {
          while (j < stored.size() && stored[j] != l) ++j;
          if (j == stored.size()) step_fail(t, "weaken target misses premise literal");
          ++j;
        }
        refs[s.a]++;
        lastuse[s.a] = t;
        break;
      }
    }
    lastuse[t] = std::max(lastuse[t], t);
    m.width = std::max(m.width, static_cast<int32_t>(stored.size()));
    m.pigeon_width = std::max(m.pigeon_width, pigeon_width(proof.clause(t), bm));
  }
  for (int64_t t = 0; t < S; ++t)
    if (refs[t] > 1) m.tree_like = false;
  // Peak live count: step t is live on [t, lastuse(t)].
  std::vector<int32_t> delta(S + 2, 0);
  for (int64_t t = 0; t < S; ++t) {
    delta[t] += 1;
    delta[lastuse[t] + 1] -= 1;
  }
  int64_t live = 0;
  for (int64_t t = 0; t <= S; ++t) {
    live += delta[t];
    m.clause_space = std::max(m.clause_space, live);
  }
  return m;
}

ResolutionProof restrict_resolution(const ResolutionProof& proof, const CnfFormula& f,
                                    const Restriction& rho,
                                    const RestrictedCnf& restricted) {
  ResolutionProof out;
  const int64_t S = proof.size();
  std::vector<int32_t> map(S, -1);
  std::vector<Lit> scratch;
  for (int64_t t = 0; t < S; ++t) {
    const Step& s = proof.steps[t];
    // Restrict the stored clause: satisfied -> dropped; else false literals
    // are deleted.
    bool satisfied = false;
    scratch.clear();
    for (Lit l : proof.lits(t)) {
      auto it = rho.assign.find(f.vars.name(lit_index(l)));
      if (it == rho.assign.end()) {
        scratch.push_back(l);
      } else if (it->second != lit_negative(l)) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    Clause target{scratch};
    switch (s.kind) {
      case StepKind::axiom: {
        int32_t ci = restricted.clause_map.at(s.a);
        if (ci < 0) step_fail(t, "internal: unsatisfied axiom mapped to satisfied clause");
        map[t] = out.add_axiom(restricted.formula, ci);
        break;
      }
      case StepKind::weaken: {
        int32_t m = map[s.a];
        if (m < 0) step_fail(t, "internal: weaken premise unexpectedly satisfied");
        if (out.clause(m) == target)
          map[t] = m;
        else
          map[t] = out.add_weaken(m, target);
        break;
      }
      case StepKind::resolve: {
        VarId pv = f.vars.name(s.pivot);
        auto it = rho.assign.find(pv);
        if (it == rho.assign.end()) {
          if (map[s.a] < 0 || map[s.b] < 0)
            step_fail(t, "internal: live resolvent with satisfied premise");
          map[t] = out.add_resolve(map[s.a], map[s.b], s.pivot);
        } else {
          int32_t src = it->second ? s.b : s.a;  // premise losing its pivot literal
          int32_t m = map[src];
          if (m < 0) step_fail(t, "internal: surviving premise was satisfied");
          if (out.clause(m) == target)
            map[t] = m;
          else
            map[t] = out.add_weaken(m, target);
        }
        break;
      }
    }
  }
  // Elision can map the original conclusion to an interior step, leaving
  // unrelated later steps behind it; cut the proof at the conclusion's image
  // so a refutation stays a refutation.
  if (S > 0 && map[S - 1] >= 0) {
    out.steps.resize(static_cast<size_t>(map[S - 1]) + 1);
    const Step& e = out.steps.back();
    out.arena.resize(static_cast<size_t>(e.off) + e.len);
  }
  return out;
}

std::string proof_to_text(const ResolutionProof& proof, const CnfFormula& f) {
  std::ostringstream os;
  for (int64_t t = 0; t < proof.size(); ++t) {
    const Step& s = proof.steps[t];
    os << t << " ";
    switch (s.kind) {
      case StepKind::axiom:
        os << "axiom " << s.a;
        break;
      case StepKind::resolve:
        os << "res " << s.a << " " << s.b << " " << to_string(f.vars.name(s.pivot));
        break;
      case StepKind::weaken: {
        os << "weak " << s.a;
        for (Lit l : proof.lits(t))
          os << " " << (lit_negative(l) ? "-" : "") << to_string(f.vars.name(lit_index(l)));
        break;
      }
    }
    os << "\n";
  }
  return os.str();
}

ResolutionProof parse_proof(const std::string& text, const CnfFormula& f) {
  ResolutionProof out;
  std::istringstream in(text);
  std::string line;
  int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    int64_t idx;
    std::string kind;
    if (!(ls >> idx)) continue;  // blank line
    if (!(ls >> kind)) throw std::runtime_error("proof line " + std::to_string(lineno) + ": missing kind");
    if (idx != out.size())
      throw std::runtime_error("proof line " + std::to_string(lineno) + ": index out of order");
    if (kind == "axiom") {
      int32_t ci;
      if (!(ls >> ci)) throw std::runtime_error("proof: bad axiom line");
      out.add_axiom(f, ci);
    } else if (kind == "res") {
      int32_t a, b;
      std::string var;
      if (!(ls >> a >> b >> var)) throw std::runtime_error("proof: bad res line");
      int32_t pivot = f.vars.find(parse_var(var));
      if (pivot < 0) throw std::runtime_error("proof: unknown pivot " + var);
      out.add_resolve(a, b, pivot);
    } else if (kind == "weak") {
      int32_t a;
      if (!(ls >> a)) throw std::runtime_error("proof: bad weak line");
      std::vector<Lit> lits;
      std::string tok;
      while (ls >> tok) {
        bool negv = tok[0] == '-';
        if (negv) tok = tok.substr(1);
        int32_t vi = f.vars.find(parse_var(tok));
        if (vi < 0) throw std::runtime_error("proof: unknown variable " + tok);
        lits.push_back(make_lit(vi, negv));
      }
      out.add_weaken(a, make_clause(std::move(lits)));
    } else {
      throw std::runtime_error("proof line " + std::to_string(lineno) + ": unknown kind " + kind);
    }
  }
  return out;
}

}  // namespace pigeon
