#include "pigeon/game.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace pigeon {

namespace {

// Defendant for tphp: keep a partial matching of the rows mentioned in the
// record into the k-1 holes and answer queries consistently with it (q[v,w]
// true iff row v sits in hole w, z[v,w] true iff it sits beyond w). A fresh
// row takes the lowest free hole; once none is left the prosecutor already
// holds k rows on record and any answer will do.
struct MatchingDefendant {
  int32_t holes;                        // k - 1
  std::map<int32_t, int32_t> match;     // block (row) -> hole
  std::vector<bool> used;

  explicit MatchingDefendant(int32_t k) : holes(k - 1), used(k, false) {}

  bool answer(const VarId& v, int32_t block) {
    auto it = match.find(block);
    if (it == match.end()) {
      int32_t h = 1;
      while (h <= holes && used[h - 1]) ++h;
      if (h > holes) return false;
      used[h - 1] = true;
      it = match.emplace(block, h).first;
    }
    return v.kind == VarKind::Q ? v.j == it->second : it->second > v.j;
  }

  void keep_only(const std::set<int32_t>& mentioned) {
    for (auto it = match.begin(); it != match.end();) {
      if (mentioned.count(it->first)) {
        ++it;
      } else {
        used[it->second - 1] = false;
        it = match.erase(it);
      }
    }
  }
};

}  // namespace

int32_t prosecutor_game(const ResolutionProof& proof, const CnfFormula& f, const BlockMap* bm) {
  if (!proof.is_refutation())
    throw std::runtime_error("prosecutor_game: proof is not a refutation");
  BlockMap default_blocks;
  if (bm == nullptr) {
    default_blocks = pigeon_blocks(f);
    bm = &default_blocks;
  }
  MatchingDefendant defendant(f.k);
  const bool tphp = f.family == Family::tphp;

  // The record is kept implicitly minimal: it is always exactly the
  // negation of the current clause, plus the queried pivot for one move.
  std::set<int32_t> mentioned;  // blocks of the current record
  auto blocks_of = [&](int32_t step) {
    mentioned.clear();
    for (Lit l : proof.lits(step)) {
      int32_t b = bm->block_of(lit_index(l));
      if (b >= 0) mentioned.insert(b);
    }
  };

  int32_t cur = static_cast<int32_t>(proof.size()) - 1;
  blocks_of(cur);
  int32_t best = static_cast<int32_t>(mentioned.size());
  while (proof.steps[cur].kind != StepKind::axiom) {
    const Step& s = proof.steps[cur];
    if (s.kind == StepKind::weaken) {
      cur = s.a;  // the premise is falsified by a sub-record; just forget
    } else {
      int32_t pb = bm->block_of(s.pivot);
      bool extra = pb >= 0 && !mentioned.count(pb);
      if (extra) mentioned.insert(pb);
      best = std::max(best, static_cast<int32_t>(mentioned.size()));
      bool ans = tphp ? defendant.answer(f.vars.name(s.pivot), pb) : false;
      cur = ans ? s.b : s.a;  // the premise whose pivot literal the answer falsifies
    }
    blocks_of(cur);
    best = std::max(best, static_cast<int32_t>(mentioned.size()));
    if (tphp) defendant.keep_only(mentioned);
  }
  return best;
}

}  // namespace pigeon
