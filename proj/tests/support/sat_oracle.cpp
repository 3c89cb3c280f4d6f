#include "sat_oracle.hpp"

namespace pigeon::testing {

namespace {

enum : int8_t { kUnset = -1 };

struct Solver {
  const std::vector<Clause>& clauses;
  std::vector<int8_t> value;  // per var: kUnset, 0, 1

  bool lit_true(Lit l) const {
    int8_t v = value[lit_index(l)];
    return v != kUnset && (v == 1) != lit_negative(l);
  }
  bool lit_false(Lit l) const {
    int8_t v = value[lit_index(l)];
    return v != kUnset && (v == 1) == lit_negative(l);
  }

  // Returns false on conflict. trail collects assigned vars for undo.
  bool propagate(std::vector<int32_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& c : clauses) {
        int32_t unassigned = 0;
        Lit last = 0;
        bool sat = false;
        for (Lit l : c.lits) {
          if (lit_true(l)) {
            sat = true;
            break;
          }
          if (!lit_false(l)) {
            ++unassigned;
            last = l;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          value[lit_index(last)] = lit_negative(last) ? 0 : 1;
          trail.push_back(lit_index(last));
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    std::vector<int32_t> trail;
    if (!propagate(trail)) {
      for (int32_t v : trail) value[v] = kUnset;
      return false;
    }
    int32_t branch = -1;
    for (size_t v = 0; v < value.size(); ++v)
      if (value[v] == kUnset) {
        branch = static_cast<int32_t>(v);
        break;
      }
    if (branch < 0) return true;
    for (int8_t b : {1, 0}) {
      value[branch] = b;
      if (search()) return true;
      value[branch] = kUnset;
    }
    for (int32_t v : trail) value[v] = kUnset;
    return false;
  }
};

}  // namespace

std::optional<std::vector<bool>> solve(const CnfFormula& f) {
  Solver s{f.clauses, std::vector<int8_t>(f.vars.size(), kUnset)};
  if (!s.search()) return std::nullopt;
  std::vector<bool> out(s.value.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = s.value[i] == 1;
  return out;
}

}  // namespace pigeon::testing
