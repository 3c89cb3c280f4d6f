#include "pigeon/clause.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pigeon {

int32_t VarTable::intern(const VarId& v) {
  auto it = index.find(v);
  if (it != index.end()) return it->second;
  int32_t idx = static_cast<int32_t>(names.size());
  names.push_back(v);
  index.emplace(v, idx);
  return idx;
}

int32_t VarTable::find(const VarId& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

Clause make_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
    if (lit_index(a) != lit_index(b)) return lit_index(a) < lit_index(b);
    return a < b;
  });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 1; i < lits.size(); ++i) {
    if (lit_index(lits[i - 1]) == lit_index(lits[i]))
      throw std::runtime_error("tautological clause: variable " +
                               std::to_string(lit_index(lits[i])) +
                               " occurs with both polarities");
  }
  return Clause{std::move(lits)};
}

bool clause_has_lit(const Clause& c, Lit l) {
  return std::binary_search(c.lits.begin(), c.lits.end(), l, [](Lit a, Lit b) {
    if (lit_index(a) != lit_index(b)) return lit_index(a) < lit_index(b);
    return a < b;
  });
}

bool clause_has_var(const Clause& c, int32_t idx) {
  return clause_has_lit(c, make_lit(idx, false)) || clause_has_lit(c, make_lit(idx, true));
}

bool clause_subset(const Clause& a, const Clause& b) {
  size_t j = 0;
  for (Lit l : a.lits) {
    while (j < b.lits.size() && lit_index(b.lits[j]) < lit_index(l)) ++j;
    if (j == b.lits.size() || b.lits[j] != l) return false;
    ++j;
  }
  return true;
}

std::optional<Clause> resolve_clauses(const Clause& a, const Clause& b, int32_t pivot) {
  std::vector<Lit> out;
  out.reserve(a.lits.size() + b.lits.size());
  size_t i = 0, j = 0;
  auto keep = [&](Lit l) { return lit_index(l) != pivot; };
  while (i < a.lits.size() || j < b.lits.size()) {
    if (j == b.lits.size() || (i < a.lits.size() && lit_index(a.lits[i]) <= lit_index(b.lits[j]))) {
      if (j < b.lits.size() && lit_index(a.lits[i]) == lit_index(b.lits[j])) {
        if (a.lits[i] != b.lits[j]) {
          if (keep(a.lits[i])) return std::nullopt;  // tautological merge
          ++i;
          continue;
        }
      }
      if (keep(a.lits[i])) out.push_back(a.lits[i]);
      ++i;
    } else {
      if (keep(b.lits[j])) out.push_back(b.lits[j]);
      ++j;
    }
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Clause{std::move(out)};
}

size_t ClauseHash::operator()(const Clause& c) const {
  // FNV-1a over the literal words.
  uint64_t h = 1469598103934665603ull;
  for (Lit l : c.lits) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(l));
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::custom: return "custom";
    case Family::php: return "php";
    case Family::tphp: return "tphp";
    case Family::rphp: return "rphp";
    case Family::erphp: return "erphp";
  }
  return "?";
}

namespace {

void fail(const std::string& msg) { throw std::runtime_error("invalid formula: " + msg); }

// Census entry: count of variables per kind.
std::unordered_map<VarKind, int64_t> kind_census(const VarTable& t) {
  std::unordered_map<VarKind, int64_t> census;
  for (const VarId& v : t.names) census[v.kind]++;
  return census;
}

void expect_kind(const std::unordered_map<VarKind, int64_t>& census, VarKind k, int64_t want) {
  static const char* kind_names[] = {"p", "y", "r", "rr", "q", "z", "x"};
  auto it = census.find(k);
  int64_t got = it == census.end() ? 0 : it->second;
  if (got != want)
    fail("census: expected " + std::to_string(want) + " variables of kind " +
         kind_names[static_cast<int>(k)] + ", found " + std::to_string(got));
}

}  // namespace

void validate_formula(const CnfFormula& f) {
  const int32_t nv = f.vars.size();
  if (static_cast<int32_t>(f.vars.index.size()) != nv) fail("variable table index out of sync");
  for (int32_t i = 0; i < nv; ++i) {
    auto it = f.vars.index.find(f.vars.names[i]);
    if (it == f.vars.index.end() || it->second != i) fail("variable table index out of sync");
  }
  std::set<std::vector<Lit>> seen;
  for (const Clause& c : f.clauses) {
    for (size_t i = 0; i < c.lits.size(); ++i) {
      int32_t idx = lit_index(c.lits[i]);
      if (idx < 0 || idx >= nv) fail("literal index out of range");
      if (i > 0 && lit_index(c.lits[i - 1]) >= idx) fail("clause literals not canonical");
    }
    if (!seen.insert(c.lits).second)
      fail("duplicate clause " + clause_to_string(c, f.vars));
  }

  auto census = kind_census(f.vars);
  const int64_t k = f.k, n = f.n;
  auto pairs = [](int64_t m) { return m * (m - 1) / 2; };
  switch (f.family) {
    case Family::custom:
      break;
    case Family::php:
      expect_kind(census, VarKind::X, k * (k - 1));
      if (static_cast<int64_t>(f.clauses.size()) != k + (k - 1) * pairs(k))
        fail("php clause count");
      break;
    case Family::tphp:
      expect_kind(census, VarKind::Q, k * (k - 1));
      expect_kind(census, VarKind::Z, k == 3 ? 0 : k * (k - 3));
      if (static_cast<int64_t>(f.clauses.size()) !=
          (k == 3 ? k : k * (k - 2)) + (k - 1) * pairs(k))
        fail("tphp clause count");
      break;
    case Family::rphp:
      expect_kind(census, VarKind::P, k * n);
      expect_kind(census, VarKind::R, n);
      expect_kind(census, VarKind::Q, n * (k - 1));
      if (static_cast<int64_t>(f.clauses.size()) !=
          k + pairs(k) * n + k * n + n + pairs(n) * (k - 1))
        fail("rphp clause count");
      break;
    case Family::erphp:
      expect_kind(census, VarKind::P, k * n);
      expect_kind(census, VarKind::Y, k * (n - 3));
      expect_kind(census, VarKind::R, n);
      expect_kind(census, VarKind::RR, pairs(n));
      expect_kind(census, VarKind::Q, n * (k - 1));
      expect_kind(census, VarKind::Z, n * (k - 3));
      if (static_cast<int64_t>(f.clauses.size()) !=
          k * (n - 2) + n * (k - 2) + pairs(k) * n + k * n + pairs(n) + pairs(n) * (k - 1))
        fail("erphp clause count");
      break;
  }
}

BlockMap pigeon_blocks(const CnfFormula& f) {
  BlockMap bm;
  bm.block.reserve(f.vars.size());
  for (const VarId& v : f.vars.names) {
    switch (v.kind) {
      case VarKind::P:
      case VarKind::Y:
      case VarKind::Q:
      case VarKind::Z:
      case VarKind::X:
        bm.block.push_back(v.i);
        break;
      case VarKind::R:
      case VarKind::RR:
        bm.block.push_back(-1);
        break;
    }
  }
  return bm;
}

BlockMap single_block(const CnfFormula& f) {
  BlockMap bm;
  bm.block.assign(f.vars.size(), 1);
  return bm;
}

int32_t pigeon_width(const Clause& c, const BlockMap& bm) {
  std::set<int32_t> blocks;
  for (Lit l : c.lits) {
    int32_t b = bm.block_of(lit_index(l));
    if (b >= 0) blocks.insert(b);
  }
  return static_cast<int32_t>(blocks.size());
}

std::string clause_to_string(const Clause& c, const VarTable& vars) {
  if (c.lits.empty()) return "{}";
  std::string out = "{";
  for (size_t i = 0; i < c.lits.size(); ++i) {
    if (i) out += " | ";
    if (lit_negative(c.lits[i])) out += "-";
    out += to_string(vars.name(lit_index(c.lits[i])));
  }
  out += "}";
  return out;
}

}  // namespace pigeon
