#include "pigeon/saturation.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pigeon {

namespace {

struct Parent {
  int32_t pos = -1;  // premise holding the pivot positively
  int32_t neg = -1;
  int32_t pivot = -1;
};

// Transparent hashing so candidate resolvents can be looked up as raw
// literal spans without materializing a Clause first.
struct LitSpanHash {
  using is_transparent = void;
  size_t operator()(std::span<const Lit> s) const {
    uint64_t h = 1469598103934665603ull;
    for (Lit l : s) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(l));
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
  size_t operator()(const Clause& c) const { return (*this)(std::span<const Lit>(c.lits)); }
};

struct LitSpanEq {
  using is_transparent = void;
  bool operator()(const Clause& a, const Clause& b) const { return a.lits == b.lits; }
  bool operator()(std::span<const Lit> s, const Clause& c) const {
    return std::equal(s.begin(), s.end(), c.lits.begin(), c.lits.end());
  }
  bool operator()(const Clause& c, std::span<const Lit> s) const { return (*this)(s, c); }
};

// Occurrence bucket: active clauses sharing one literal and one block mask,
// so a whole bucket can be skipped by a single popcount when a pigeon-width
// bound is active.
struct Bucket {
  uint32_t mask;
  std::vector<int32_t> ids;
};

struct Engine {
  std::vector<Clause> clauses;
  std::vector<Parent> parents;
  std::vector<uint32_t> masks;
  std::unordered_map<Clause, int32_t, LitSpanHash, LitSpanEq> index;
  std::vector<std::vector<Bucket>> occur;  // literal (2*var+sign) -> buckets
  std::vector<uint32_t> var_bit;           // block bit per variable
  int64_t derived = 0;
  int32_t empty_id = -1;

  static size_t lit_key(Lit l) {
    return 2 * static_cast<size_t>(lit_index(l)) + (lit_negative(l) ? 1 : 0);
  }

  // Blocks are folded into a 32-bit mask; blocks past 31 share the top bit,
  // which can only undercount a union, so the prefilter stays conservative
  // and the exact pigeon_width check below remains authoritative.
  uint32_t clause_mask(const Clause& c) const {
    uint32_t m = 0;
    for (Lit l : c.lits) m |= var_bit[lit_index(l)];
    return m;
  }

  void run(const CnfFormula& f, const SaturationBound& bound, const SaturationOptions& opts) {
    BlockMap default_blocks;
    const BlockMap* bm = bound.blocks;
    if (bound.pigeon_width >= 0 && bm == nullptr) {
      default_blocks = pigeon_blocks(f);
      bm = &default_blocks;
    }
    var_bit.assign(f.vars.size(), 0);
    if (bound.pigeon_width >= 0) {
      for (int32_t v = 0; v < static_cast<int32_t>(f.vars.size()); ++v) {
        int32_t b = bm->block_of(v);
        if (b >= 0) var_bit[v] = 1u << std::min(b, 31);
      }
    }
    occur.assign(2 * f.vars.size(), {});
    using Entry = std::pair<int32_t, int32_t>;  // (width, id), min-heap
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

    for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
      const Clause& c = f.clauses[ci];
      int32_t id = static_cast<int32_t>(clauses.size());
      clauses.push_back(c);
      parents.push_back({});
      masks.push_back(clause_mask(c));
      index.emplace(c, id);
      if (c.lits.empty()) empty_id = id;
      queue.push({c.width(), id});
    }
    if (empty_id >= 0) return;

    std::vector<Lit> scratch;
    while (!queue.empty()) {
      int32_t id = queue.top().second;
      queue.pop();
      // A clause admitted earlier can be subsumed by a shorter one admitted
      // after it; such clauses only generate redundant resolvents.
      if (opts.subsumption && subsumed(clauses[id].lits)) continue;
      // Resolve the activated clause against all previously activated ones
      // sharing a complementary literal, then activate it.
      for (size_t li = 0; li < clauses[id].lits.size(); ++li) {
        Lit l = clauses[id].lits[li];
        const int32_t pivot = lit_index(l);
        const uint32_t keep = ~var_bit[pivot];
        for (const Bucket& bucket : occur[lit_key(negate_lit(l))]) {
          if (bound.pigeon_width >= 0 &&
              std::popcount((masks[id] | bucket.mask) & keep) > bound.pigeon_width)
            continue;  // every resolvent in this bucket exceeds the bound
          for (int32_t other : bucket.ids) {
            const Clause& a = lit_negative(l) ? clauses[other] : clauses[id];
            const Clause& b = lit_negative(l) ? clauses[id] : clauses[other];
            if (!merge_resolvent(a, b, pivot, scratch)) continue;  // tautology
            if (bound.width >= 0 && static_cast<int32_t>(scratch.size()) > bound.width)
              continue;
            if (bound.pigeon_width >= 0 && exact_pw(scratch, *bm) > bound.pigeon_width) continue;
            if (index.find(std::span<const Lit>(scratch)) != index.end()) continue;
            if (opts.subsumption && subsumed(scratch)) continue;
            int32_t rid = static_cast<int32_t>(clauses.size());
            Parent p;
            p.pivot = pivot;
            p.pos = lit_negative(l) ? other : id;
            p.neg = lit_negative(l) ? id : other;
            clauses.push_back(Clause{scratch});
            parents.push_back(p);
            masks.push_back(clause_mask(clauses.back()));
            index.emplace(clauses.back(), rid);
            if (++derived > opts.max_derived)
              throw std::runtime_error("saturate_bounded: derived-clause budget of " +
                                       std::to_string(opts.max_derived) + " exceeded");
            if (clauses.back().lits.empty()) {
              empty_id = rid;
              return;
            }
            queue.push({clauses.back().width(), rid});
          }
        }
      }
      activate(id);
    }
  }

  void activate(int32_t id) {
    for (Lit l : clauses[id].lits) {
      std::vector<Bucket>& buckets = occur[lit_key(l)];
      Bucket* slot = nullptr;
      for (Bucket& b : buckets)
        if (b.mask == masks[id]) {
          slot = &b;
          break;
        }
      if (!slot) {
        buckets.push_back({masks[id], {}});
        slot = &buckets.back();
      }
      slot->ids.push_back(id);
    }
  }

  // Writes the resolvent of a (pivot positive) and b (pivot negative) into
  // out; false when the merge is tautological.
  static bool merge_resolvent(const Clause& a, const Clause& b, int32_t pivot,
                              std::vector<Lit>& out) {
    out.clear();
    size_t i = 0, j = 0;
    while (i < a.lits.size() || j < b.lits.size()) {
      Lit la = i < a.lits.size() ? a.lits[i] : 0;
      Lit lb = j < b.lits.size() ? b.lits[j] : 0;
      Lit pick;
      if (j == b.lits.size() || (i < a.lits.size() && lit_index(la) <= lit_index(lb))) {
        if (j < b.lits.size() && lit_index(la) == lit_index(lb) && la != lb &&
            lit_index(la) != pivot)
          return false;
        pick = la;
        ++i;
        if (j < b.lits.size() && la == lb) ++j;
      } else {
        pick = lb;
        ++j;
      }
      if (lit_index(pick) != pivot) out.push_back(pick);
    }
    return true;
  }

  // Exact pigeon-width; the folded mask is exact unless the overflow bit
  // is involved, in which case fall back to the block map.
  int32_t exact_pw(const std::vector<Lit>& lits, const BlockMap& bm) const {
    uint32_t m = 0;
    for (Lit l : lits) m |= var_bit[lit_index(l)];
    if (m >> 31) {
      Clause c{lits};
      return pigeon_width(c, bm);
    }
    return std::popcount(m);
  }

  // Forward subsumption against activated clauses only: any nonempty
  // subsuming clause shares a literal with r, so the occurrence lists of
  // r's literals cover all candidates. Buckets whose mask is not contained
  // in r's mask cannot hold a subset of r.
  bool subsumed(const std::vector<Lit>& r) const {
    uint32_t rm = 0;
    for (Lit l : r) rm |= var_bit[lit_index(l)];
    for (Lit l : r)
      for (const Bucket& bucket : occur[lit_key(l)]) {
        if (bucket.mask & ~rm) continue;
        for (int32_t cid : bucket.ids)
          if (clauses[cid].lits.size() <= r.size() && span_subset(clauses[cid].lits, r))
            return true;
      }
    return false;
  }

  static bool span_subset(const std::vector<Lit>& small, const std::vector<Lit>& big) {
    size_t j = 0;
    for (Lit l : small) {
      while (j < big.size() && lit_index(big[j]) < lit_index(l)) ++j;
      if (j == big.size() || big[j] != l) return false;
      ++j;
    }
    return true;
  }
};

}  // namespace

SaturationResult saturate_bounded(const CnfFormula& f, const SaturationBound& bound,
                                  const SaturationOptions& opts) {
  Engine e;
  e.run(f, bound, opts);
  return {e.empty_id >= 0, e.derived};
}

ResolutionProof extract_bounded_refutation(const CnfFormula& f, const SaturationBound& bound,
                                           const SaturationOptions& opts) {
  Engine e;
  e.run(f, bound, opts);
  if (e.empty_id < 0)
    throw std::runtime_error("extract_bounded_refutation: not refutable within the bound");
  // Parent ids precede children, so ascending id order is already
  // topological for the needed subgraph.
  std::vector<bool> needed(e.clauses.size(), false);
  std::vector<int32_t> stack{e.empty_id};
  while (!stack.empty()) {
    int32_t id = stack.back();
    stack.pop_back();
    if (needed[id]) continue;
    needed[id] = true;
    if (e.parents[id].pivot >= 0) {
      stack.push_back(e.parents[id].pos);
      stack.push_back(e.parents[id].neg);
    }
  }
  ResolutionProof proof;
  std::vector<int32_t> map(e.clauses.size(), -1);
  for (size_t id = 0; id < e.clauses.size(); ++id) {
    if (!needed[id]) continue;
    const Parent& p = e.parents[id];
    if (p.pivot < 0)
      map[id] = proof.add_axiom(f, static_cast<int32_t>(id));  // input ids are clause indices
    else
      map[id] = proof.add_resolve(map[p.pos], map[p.neg], p.pivot);
  }
  return proof;
}

}  // namespace pigeon
