#include <stdexcept>
#include <unordered_map>

#include "pigeon/formulas.hpp"
#include "pigeon/rational.hpp"
#include "pigeon/resolution.hpp"

namespace pigeon {

namespace {

// Backward induction over map-sequence prefixes (v_1..v_k, w_1..w_k).
// p-levels derive, for each prefix V of length t-1, the clause
//   PC(V) = OR_{s<t} -p[s, v_s]
// from its n children PC(V + [v]); q-levels then derive PC(V) for full V
// from leaf clauses  PC(V) | OR_s -q[v_s, w_s]  over w-sequences. A level
// whose row v_t already occurred as v_u is not expanded: its child with
// w_t = w_u carries an identical clause (the q-literal is already present),
// so the subtree is pruned to that single child.
struct Builder {
  const CnfFormula& f;
  ResolutionProof proof;
  std::unordered_map<Clause, int32_t, ClauseHash> axiom_index;
  int32_t k, n;

  Builder(const CnfFormula& formula) : f(formula), k(formula.k), n(formula.n) {
    for (int32_t i = 0; i < static_cast<int32_t>(f.clauses.size()); ++i)
      axiom_index.emplace(f.clauses[i], i);
  }

  int32_t var(VarKind kind, int32_t i, int32_t j) const {
    int32_t idx = f.vars.find(kind == VarKind::RR ? make_rr(i, j) : VarId{kind, i, j});
    if (idx < 0) throw std::runtime_error("erphp construction: missing variable");
    return idx;
  }
  Lit lit(VarKind kind, int32_t i, int32_t j, bool neg) {
    return make_lit(var(kind, i, j), neg);
  }

  int32_t axiom(std::vector<Lit> lits) {
    auto it = axiom_index.find(make_clause(std::move(lits)));
    if (it == axiom_index.end())
      throw std::runtime_error("erphp construction: expected axiom not in formula");
    return proof.add_axiom(f, it->second);
  }

  // Derives PC(prefix) using pigeon t = |prefix| + 1.
  int32_t p_node(std::vector<int32_t>& vprefix) {
    int32_t t = static_cast<int32_t>(vprefix.size()) + 1;
    int32_t cur = axiom({lit(VarKind::P, t, 1, false), lit(VarKind::P, t, 2, false),
                         lit(VarKind::Y, t, 2, false)});
    cur = proof.add_resolve(cur, child(vprefix, 1), var(VarKind::P, t, 1));
    cur = proof.add_resolve(cur, child(vprefix, 2), var(VarKind::P, t, 2));
    for (int32_t v = 2; v <= n - 3; ++v) {
      int32_t ax = axiom({lit(VarKind::Y, t, v, true), lit(VarKind::P, t, v + 1, false),
                          lit(VarKind::Y, t, v + 1, false)});
      cur = proof.add_resolve(cur, ax, var(VarKind::Y, t, v));
      cur = proof.add_resolve(cur, child(vprefix, v + 1), var(VarKind::P, t, v + 1));
    }
    int32_t ax = axiom({lit(VarKind::Y, t, n - 2, true), lit(VarKind::P, t, n - 1, false),
                        lit(VarKind::P, t, n, false)});
    cur = proof.add_resolve(cur, ax, var(VarKind::Y, t, n - 2));
    cur = proof.add_resolve(cur, child(vprefix, n - 1), var(VarKind::P, t, n - 1));
    cur = proof.add_resolve(cur, child(vprefix, n), var(VarKind::P, t, n));
    return cur;
  }

  // Child of a p-level: PC(prefix + [v]).
  int32_t child(std::vector<int32_t>& vprefix, int32_t v) {
    vprefix.push_back(v);
    int32_t res;
    if (static_cast<int32_t>(vprefix.size()) == k) {
      std::vector<int32_t> w;
      res = q_node(vprefix, w);
    } else {
      res = p_node(vprefix);
    }
    vprefix.pop_back();
    return res;
  }

  // Derives PC(V) | OR_{s < t} -q[v_s, w_s] using row v* = V[t-1].
  int32_t q_node(const std::vector<int32_t>& V, std::vector<int32_t>& w) {
    int32_t t = static_cast<int32_t>(w.size()) + 1;
    if (t > k) return leaf(V, w);
    int32_t vstar = V[t - 1];
    for (int32_t u = 0; u < t - 1; ++u) {
      if (V[u] == vstar) {
        // Pruned: the child's extra q-literal is already in the clause.
        w.push_back(w[u]);
        int32_t res = q_node(V, w);
        w.pop_back();
        return res;
      }
    }
    int32_t im = axiom({lit(VarKind::P, t, vstar, true), lit(VarKind::R, vstar, 0, false)});
    int32_t qa = axiom({lit(VarKind::R, vstar, 0, true), lit(VarKind::Q, vstar, 1, false),
                        lit(VarKind::Z, vstar, 1, false)});
    int32_t cur = proof.add_resolve(im, qa, var(VarKind::R, vstar, 0));
    cur = proof.add_resolve(cur, q_child(V, w, 1), var(VarKind::Q, vstar, 1));
    for (int32_t j = 1; j <= k - 4; ++j) {
      int32_t ax = axiom({lit(VarKind::Z, vstar, j, true), lit(VarKind::Q, vstar, j + 1, false),
                          lit(VarKind::Z, vstar, j + 1, false)});
      cur = proof.add_resolve(cur, ax, var(VarKind::Z, vstar, j));
      cur = proof.add_resolve(cur, q_child(V, w, j + 1), var(VarKind::Q, vstar, j + 1));
    }
    int32_t ax = axiom({lit(VarKind::Z, vstar, k - 3, true), lit(VarKind::Q, vstar, k - 2, false),
                        lit(VarKind::Q, vstar, k - 1, false)});
    cur = proof.add_resolve(cur, ax, var(VarKind::Z, vstar, k - 3));
    cur = proof.add_resolve(cur, q_child(V, w, k - 2), var(VarKind::Q, vstar, k - 2));
    cur = proof.add_resolve(cur, q_child(V, w, k - 1), var(VarKind::Q, vstar, k - 1));
    return cur;
  }

  int32_t q_child(const std::vector<int32_t>& V, std::vector<int32_t>& w, int32_t wt) {
    w.push_back(wt);
    int32_t res = q_node(V, w);
    w.pop_back();
    return res;
  }

  // Leaf: derive PC(V) | OR_s -q[v_s, w_s] from an injectivity violation.
  int32_t leaf(const std::vector<int32_t>& V, const std::vector<int32_t>& w) {
    std::vector<Lit> target_lits;
    for (int32_t s = 0; s < k; ++s) {
      target_lits.push_back(lit(VarKind::P, s + 1, V[s], true));
      target_lits.push_back(lit(VarKind::Q, V[s], w[s], true));
    }
    Clause target = make_clause(std::move(target_lits));
    // Case 1: a repeated row v_u = v_u' collides two pigeons on one row.
    for (int32_t u = 0; u < k; ++u)
      for (int32_t u2 = u + 1; u2 < k; ++u2)
        if (V[u] == V[u2]) {
          int32_t ax = axiom({lit(VarKind::P, u + 1, V[u], true),
                              lit(VarKind::P, u2 + 1, V[u], true)});
          return proof.add_weaken(ax, target);
        }
    // Case 2: V injective, so two w-values collide in [k-1].
    for (int32_t u = 0; u < k; ++u)
      for (int32_t u2 = u + 1; u2 < k; ++u2)
        if (w[u] == w[u2]) {
          int32_t v1 = V[u], v2 = V[u2], wc = w[u];
          int32_t lo = std::min(v1, v2), hi = std::max(v1, v2);
          int32_t rp = axiom({lit(VarKind::R, v1, 0, true), lit(VarKind::R, v2, 0, true),
                              lit(VarKind::RR, lo, hi, false)});
          int32_t qi = axiom({lit(VarKind::RR, lo, hi, true), lit(VarKind::Q, v1, wc, true),
                              lit(VarKind::Q, v2, wc, true)});
          int32_t cur = proof.add_resolve(rp, qi, var(VarKind::RR, lo, hi));
          int32_t im1 = axiom({lit(VarKind::P, u + 1, v1, true), lit(VarKind::R, v1, 0, false)});
          cur = proof.add_resolve(im1, cur, var(VarKind::R, v1, 0));
          int32_t im2 = axiom({lit(VarKind::P, u2 + 1, v2, true), lit(VarKind::R, v2, 0, false)});
          cur = proof.add_resolve(im2, cur, var(VarKind::R, v2, 0));
          return proof.add_weaken(cur, target);
        }
    throw std::runtime_error("erphp construction: leaf without collision");
  }
};

// Exact step count of the construction, used as the admission guard.
Integer estimate_steps(int32_t k, int32_t n) {
  // p-side: (3n-5) steps per node, n^{t-1} nodes on level t.
  Integer p_steps = 0, level = 1;
  for (int32_t t = 1; t <= k; ++t) {
    p_steps += level * (3 * n - 5);
    level *= n;
  }
  // q-side: walk each V; expanded levels branch (k-1)-fold.
  Integer q_steps = 0;
  std::vector<int32_t> V(k, 1);
  while (true) {
    bool repeat_v = false;
    Integer nodes = 1, own = 0;
    for (int32_t t = 0; t < k; ++t) {
      bool fresh = true;
      for (int32_t u = 0; u < t; ++u)
        if (V[u] == V[t]) fresh = false;
      if (!fresh) {
        repeat_v = true;
        continue;
      }
      own += nodes * (3 * k - 4);
      nodes *= (k - 1);
    }
    q_steps += own + nodes * (repeat_v ? 2 : 8);
    int32_t pos = k - 1;
    while (pos >= 0 && V[pos] == n) V[pos--] = 1;
    if (pos < 0) break;
    V[pos]++;
  }
  return p_steps + q_steps;
}

}  // namespace

ResolutionProof construct_erphp_refutation(int32_t k, int32_t n, int64_t max_steps) {
  if (k < 4 || n < 4)
    throw std::runtime_error("construct_erphp_refutation: k >= 4 and n >= 4 required");
  Integer est = estimate_steps(k, n);
  if (est > max_steps)
    throw std::runtime_error("construct_erphp_refutation: estimated " + est.str() +
                             " steps exceeds budget " + std::to_string(max_steps));
  CnfFormula f = gen_erphp(k, n);
  Builder b(f);
  b.proof.steps.reserve(static_cast<size_t>(est));
  std::vector<int32_t> empty_prefix;
  b.p_node(empty_prefix);
  return std::move(b.proof);
}

}  // namespace pigeon
