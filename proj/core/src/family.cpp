#include "pigeon/consistency.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace pigeon {

namespace {

// Position of v in a sorted scope; -1 if absent.
int32_t pos_of(const std::vector<VarId>& vars, const VarId& v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) return -1;
  return static_cast<int32_t>(it - vars.begin());
}

std::string bits_string(uint64_t mask, int32_t width) {
  if (width == 0) return "-";
  std::string s(width, '0');
  for (int32_t i = 0; i < width; ++i)
    if (mask >> i & 1) s[i] = '1';
  return s;
}

std::string pigeons_to_string(const std::vector<int32_t>& key) {
  std::string s = "{";
  for (size_t i = 0; i < key.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(key[i]);
  }
  return s + "}";
}

// All subsets of the sorted universe with at most `bound` elements, lex
// order, the empty set first.
template <typename T, typename Fn>
void for_subsets(const std::vector<T>& universe, int32_t bound, Fn&& fn) {
  std::vector<T> cur;
  auto rec = [&](auto&& self, size_t start) -> void {
    fn(cur);
    if (static_cast<int32_t>(cur.size()) >= bound) return;
    for (size_t i = start; i < universe.size(); ++i) {
      cur.push_back(universe[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::string varset_to_string(const std::vector<VarId>& vars) {
  std::string s = "{";
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += to_string(vars[i]);
  }
  return s + "}";
}

DistributionFamily matching_family(int32_t k) {
  if (k < 2) throw std::runtime_error("matching_family: need k >= 2");
  DistributionFamily fam;
  fam.pigeon_keyed = true;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (std::popcount(mask) > k - 1) continue;
    std::vector<int32_t> key;
    for (int32_t v = 1; v <= k; ++v)
      if (mask >> (v - 1) & 1) key.push_back(v);
    LocalDistribution d;
    for (int32_t v : key) {
      for (int32_t w = 1; w <= k - 1; ++w) d.vars.push_back(VarId{VarKind::Q, v, w});
      for (int32_t w = 1; w <= k - 3; ++w) d.vars.push_back(VarId{VarKind::Z, v, w});
    }
    std::sort(d.vars.begin(), d.vars.end());
    Rational prob = 1;
    for (size_t t = 0; t < key.size(); ++t) prob /= Rational(k - 1 - static_cast<int32_t>(t));
    std::vector<int32_t> hole(key.size(), 0);
    std::vector<bool> used(k, false);
    auto emit = [&](auto&& self, size_t t) -> void {
      if (t == key.size()) {
        uint64_t bits = 0;
        for (size_t idx = 0; idx < d.vars.size(); ++idx) {
          const VarId& v = d.vars[idx];
          const int32_t phi =
              hole[std::lower_bound(key.begin(), key.end(), v.i) - key.begin()];
          const bool on = v.kind == VarKind::Q ? phi == v.j : phi > v.j;
          if (on) bits |= uint64_t{1} << idx;
        }
        d.support.push_back({bits, prob});
        return;
      }
      for (int32_t h = 1; h <= k - 1; ++h) {
        if (used[h]) continue;
        used[h] = true;
        hole[t] = h;
        self(self, t + 1);
        used[h] = false;
      }
    };
    emit(emit, 0);
    std::sort(d.support.begin(), d.support.end());
    fam.by_pigeons.emplace(std::move(key), std::move(d));
  }
  return fam;
}

namespace {

// Every variable of f whose pigeon block lies in the key, sorted.
std::vector<VarId> pigeon_scope(const CnfFormula& f, const BlockMap& bm,
                                const std::vector<int32_t>& key) {
  std::vector<VarId> vars;
  for (int32_t idx = 0; idx < f.vars.size(); ++idx) {
    const int32_t b = bm.block_of(idx);
    if (b >= 0 && std::binary_search(key.begin(), key.end(), b))
      vars.push_back(f.vars.name(idx));
  }
  std::sort(vars.begin(), vars.end());
  return vars;
}

// Shared per-key audit; returns false when the support masks cannot be
// trusted (the H1/H2 passes then skip the key).
bool audit_key(const std::string& label, const LocalDistribution& d,
               const std::vector<VarId>& expected_scope, std::vector<std::string>& out) {
  bool usable = true;
  if (d.vars != expected_scope) {
    out.push_back("key " + label + ": scope does not match the keying");
    usable = false;
  }
  for (size_t i = 1; i < d.vars.size(); ++i)
    if (!(d.vars[i - 1] < d.vars[i])) {
      out.push_back("key " + label + ": unsorted scope");
      usable = false;
      break;
    }
  if (d.vars.size() >= 64) {
    out.push_back("key " + label + ": scope too wide for 64-bit masks");
    return false;
  }
  const int32_t width = static_cast<int32_t>(d.vars.size());
  const uint64_t limit = uint64_t{1} << width;
  Rational sum = 0;
  for (size_t i = 0; i < d.support.size(); ++i) {
    const auto& [mask, p] = d.support[i];
    if (mask >= limit) {
      out.push_back("key " + label + ": support mask " + std::to_string(mask) +
                    " out of range");
      usable = false;
    }
    if (i > 0 && !(d.support[i - 1].first < mask))
      out.push_back("key " + label + ": unsorted support");
    if (!(p > 0))
      out.push_back("key " + label + ": nonpositive probability " + to_string(p) +
                    " at assignment " + bits_string(mask, width));
    sum += p;
  }
  if (sum != 1)
    out.push_back("key " + label + ": probabilities sum to " + to_string(sum));
  return usable;
}

void audit_h1(const std::string& label, const LocalDistribution& d, const CnfFormula& f,
              std::vector<std::string>& out) {
  const int32_t width = static_cast<int32_t>(d.vars.size());
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const Clause& c = f.clauses[ci];
    std::vector<std::pair<int32_t, bool>> where;  // scope position, negated
    bool inside = true;
    for (Lit l : c.lits) {
      const int32_t p = pos_of(d.vars, f.vars.name(lit_index(l)));
      if (p < 0) {
        inside = false;
        break;
      }
      where.push_back({p, lit_negative(l)});
    }
    if (!inside) continue;
    for (const auto& [mask, prob] : d.support) {
      bool sat = false;
      for (const auto& [p, neg] : where)
        if ((mask >> p & 1) != static_cast<uint64_t>(neg)) {
          sat = true;
          break;
        }
      if (!sat)
        out.push_back("H1: key " + label + " assignment " + bits_string(mask, width) +
                      " falsifies clause " + std::to_string(ci));
    }
  }
}

void audit_h2(const std::string& la, const LocalDistribution& a, const std::string& lb,
              const LocalDistribution& b, std::vector<std::string>& out) {
  std::vector<int32_t> pos(a.vars.size());
  for (size_t i = 0; i < a.vars.size(); ++i) {
    pos[i] = pos_of(b.vars, a.vars[i]);
    if (pos[i] < 0) {
      out.push_back("H2: key " + la + " scope not contained in key " + lb);
      return;
    }
  }
  std::map<uint64_t, Rational> proj;
  for (const auto& [mask, p] : b.support) {
    uint64_t sub = 0;
    for (size_t i = 0; i < pos.size(); ++i)
      if (mask >> pos[i] & 1) sub |= uint64_t{1} << i;
    proj[sub] += p;
  }
  std::map<uint64_t, Rational> own;
  for (const auto& [mask, p] : a.support) own[mask] += p;
  const int32_t width = static_cast<int32_t>(a.vars.size());
  for (const auto& [mask, p] : proj) {
    auto it = own.find(mask);
    const Rational q = it == own.end() ? Rational(0) : it->second;
    if (p != q)
      out.push_back("H2: key " + la + " vs " + lb + ": assignment " +
                    bits_string(mask, width) + " has marginal " + to_string(p) +
                    " but probability " + to_string(q));
    if (it != own.end()) own.erase(it);
  }
  for (const auto& [mask, q] : own)
    if (q != 0)
      out.push_back("H2: key " + la + " vs " + lb + ": assignment " +
                    bits_string(mask, width) + " has marginal 0 but probability " +
                    to_string(q));
}

}  // namespace

ConsistencyReport check_consistency(const DistributionFamily& fam, const CnfFormula& f,
                                    const HSpec& h) {
  ConsistencyReport rep;
  auto& out = rep.violations;
  if (fam.pigeon_keyed != h.pigeon_sets) {
    out.push_back("key scheme does not match the H specification");
    return rep;
  }
  if ((fam.pigeon_keyed && !fam.by_vars.empty()) ||
      (!fam.pigeon_keyed && !fam.by_pigeons.empty())) {
    out.push_back("both key maps are populated");
    return rep;
  }

  struct KeyView {
    std::string label;
    const LocalDistribution* dist;
    bool usable;
  };
  std::vector<KeyView> keys;

  if (fam.pigeon_keyed) {
    const BlockMap bm = pigeon_blocks(f);
    std::vector<int32_t> universe;
    for (int32_t idx = 0; idx < f.vars.size(); ++idx)
      if (bm.block_of(idx) >= 0) universe.push_back(bm.block_of(idx));
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (universe.size() > 24) {
      out.push_back("pigeon universe too large to audit");
      return rep;
    }
    for_subsets(universe, h.bound, [&](const std::vector<int32_t>& key) {
      if (!fam.by_pigeons.count(key))
        out.push_back("missing key " + pigeons_to_string(key));
    });
    for (const auto& [key, d] : fam.by_pigeons) {
      const std::string label = pigeons_to_string(key);
      for (int32_t v : key)
        if (!std::binary_search(universe.begin(), universe.end(), v))
          out.push_back("key " + label + ": pigeon block outside the formula");
      const bool usable = audit_key(label, d, pigeon_scope(f, bm, key), out);
      keys.push_back({label, &d, usable});
    }
  } else {
    std::vector<VarId> universe;
    for (int32_t idx = 0; idx < f.vars.size(); ++idx) universe.push_back(f.vars.name(idx));
    std::sort(universe.begin(), universe.end());
    if (universe.size() > 16 && h.bound > 1) {
      out.push_back("variable universe too large to audit");
      return rep;
    }
    for_subsets(universe, h.bound, [&](const std::vector<VarId>& key) {
      if (!fam.by_vars.count(key)) out.push_back("missing key " + varset_to_string(key));
    });
    for (const auto& [key, d] : fam.by_vars) {
      const std::string label = varset_to_string(key);
      for (const VarId& v : key)
        if (!std::binary_search(universe.begin(), universe.end(), v))
          out.push_back("key " + label + ": variable outside the formula");
      const bool usable = audit_key(label, d, key, out);
      keys.push_back({label, &d, usable});
    }
  }

  for (const KeyView& kv : keys)
    if (kv.usable) audit_h1(kv.label, *kv.dist, f, out);

  // H2 over every comparable pair; comparability is scope inclusion, which
  // audit_h2 re-derives from the scopes themselves.
  for (size_t i = 0; i < keys.size(); ++i) {
    if (!keys[i].usable) continue;
    for (size_t j = 0; j < keys.size(); ++j) {
      if (i == j || !keys[j].usable) continue;
      const auto& a = *keys[i].dist;
      const auto& b = *keys[j].dist;
      if (a.vars.size() >= b.vars.size()) continue;
      if (!std::includes(b.vars.begin(), b.vars.end(), a.vars.begin(), a.vars.end()))
        continue;
      audit_h2(keys[i].label, a, keys[j].label, b, out);
    }
  }
  return rep;
}

Rational family_marginal(const DistributionFamily& fam, const std::vector<VarId>& X) {
  std::vector<VarId> want = X;
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  if (want.empty()) return 1;
  const LocalDistribution* d = nullptr;
  if (fam.pigeon_keyed) {
    std::vector<int32_t> key;
    for (const VarId& v : want) {
      const int32_t b = pigeon_block(v);
      if (b < 0)
        throw std::runtime_error("family_marginal: variable " + to_string(v) +
                                 " carries no pigeon block");
      key.push_back(b);
    }
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto it = fam.by_pigeons.find(key);
    if (it == fam.by_pigeons.end())
      throw std::runtime_error("family_marginal: pigeon set " + pigeons_to_string(key) +
                               " is outside the family's index sets");
    d = &it->second;
  } else {
    auto it = fam.by_vars.find(want);
    if (it == fam.by_vars.end())
      throw std::runtime_error("family_marginal: variable set " + varset_to_string(want) +
                               " is outside the family's index sets");
    d = &it->second;
  }
  uint64_t need = 0;
  for (const VarId& v : want) {
    const int32_t p = pos_of(d->vars, v);
    if (p < 0)
      throw std::runtime_error("family_marginal: variable " + to_string(v) +
                               " is missing from its key's scope");
    need |= uint64_t{1} << p;
  }
  Rational a = 0;
  for (const auto& [mask, p] : d->support)
    if ((mask & need) == need) a += p;
  return a;
}

RefuteReport refute_certificate_against_family(const Certificate& c,
                                               const PolynomialSystem& S,
                                               const DistributionFamily& fam) {
  if (c.flavor == CertFlavor::lasserre)
    throw std::runtime_error(
        "refute_certificate_against_family: square terms have no family average");
  Certificate plain;
  const Certificate* use = &c;
  if (c.flavor == CertFlavor::sar) {
    plain = sar_to_sa(c);
    use = &plain;
  }
  RefuteReport rep;
  if (!(use->target == poly_const(-1))) {
    rep.outcome = RefuteOutcome::certificate_invalid;
    rep.detail = "target is not the constant -1";
    return rep;
  }
  try {
    verify_certificate(*use, S);
  } catch (const std::runtime_error& e) {
    rep.outcome = RefuteOutcome::certificate_invalid;
    rep.detail = e.what();
    return rep;
  }
  // The averages are linear in the monomial supports and the expansions add
  // up to the verified target, so the term averages total exactly -1; a
  // consistent family would also make each one nonnegative, which is
  // impossible, and the first negative average convicts the family.
  std::map<std::vector<VarId>, Rational> memo;
  for (size_t i = 0; i < use->terms.size(); ++i) {
    const Polynomial p = expand_term(use->terms[i], S);
    Rational val = 0;
    for (const auto& [mono, coef] : p.terms) {
      std::vector<VarId> X;
      for (const auto& [av, e] : mono.factors) X.push_back(av.var);
      auto it = memo.find(X);
      if (it == memo.end()) it = memo.emplace(X, family_marginal(fam, X)).first;
      val += coef * it->second;
    }
    if (val < 0) {
      rep.outcome = RefuteOutcome::family_inconsistent;
      rep.detail = "term " + std::to_string(i) + " has negative family average " +
                   to_string(val);
      return rep;
    }
  }
  throw std::logic_error(
      "refute_certificate_against_family: nonnegative term averages sum to -1");
}

DistributionFamily moebius_family(const SetFunctional& a) {
  auto it0 = a.values.find({});
  if (it0 == a.values.end() || it0->second != 1)
    throw std::runtime_error("moebius_family: the functional must map the empty set to 1");
  DistributionFamily fam;
  fam.pigeon_keyed = false;
  for (const auto& [X, ax] : a.values) {
    if (X.size() > 20)
      throw std::runtime_error("moebius_family: key " + varset_to_string(X) + " too wide");
    LocalDistribution d;
    d.vars = X;
    const int32_t n = static_cast<int32_t>(X.size());
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      std::vector<VarId> Y;
      for (int32_t i = 0; i < n; ++i)
        if (mask >> i & 1) Y.push_back(X[i]);
      const Rational p = moebius(a.values, X, Y);
      if (p < 0)
        throw std::runtime_error("moebius_family: negative mass " + to_string(p) +
                                 " at key " + varset_to_string(X) + " assignment " +
                                 bits_string(mask, n));
      if (p > 0) d.support.push_back({mask, p});
    }
    fam.by_vars.emplace(X, std::move(d));
  }
  return fam;
}

namespace {

// Splits "{a,b,c}" at depth-zero commas; brackets inside entries nest.
std::vector<std::string> split_braced(const std::string& s, const std::string& what) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::runtime_error("family text: malformed " + what + " '" + s + "'");
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::vector<VarId> parse_varset(const std::string& s) {
  std::vector<VarId> vars;
  for (const std::string& piece : split_braced(s, "variable set"))
    vars.push_back(parse_var(piece));
  return vars;
}

void dump_support(std::ostringstream& out, const LocalDistribution& d) {
  for (const auto& [mask, p] : d.support)
    out << "assign " << bits_string(mask, static_cast<int32_t>(d.vars.size())) << " prob "
        << to_fraction_string(p) << "\n";
}

}  // namespace

std::string family_to_text(const DistributionFamily& fam) {
  std::ostringstream out;
  out << "family " << (fam.pigeon_keyed ? "pigeon-keyed" : "varset-keyed") << "\n";
  if (fam.pigeon_keyed) {
    for (const auto& [key, d] : fam.by_pigeons) {
      out << "key " << pigeons_to_string(key) << " vars " << varset_to_string(d.vars)
          << "\n";
      dump_support(out, d);
    }
  } else {
    for (const auto& [key, d] : fam.by_vars) {
      out << "key " << varset_to_string(key) << "\n";
      dump_support(out, d);
    }
  }
  return out.str();
}

DistributionFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  DistributionFamily fam;
  LocalDistribution* cur = nullptr;
  bool seen_header = false;
  int32_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [lineno](const std::string& what) -> void {
      throw std::runtime_error("family line " + std::to_string(lineno) + ": " + what);
    };
    if (!seen_header) {
      std::string scheme;
      ls >> scheme;
      if (word != "family") fail("missing family header");
      if (scheme == "pigeon-keyed")
        fam.pigeon_keyed = true;
      else if (scheme == "varset-keyed")
        fam.pigeon_keyed = false;
      else
        fail("unknown key scheme '" + scheme + "'");
      seen_header = true;
    } else if (word == "key") {
      std::string keystr;
      ls >> keystr;
      if (fam.pigeon_keyed) {
        std::vector<int32_t> key;
        for (const std::string& piece : split_braced(keystr, "pigeon set"))
          key.push_back(static_cast<int32_t>(std::stol(piece)));
        std::string varsword, scopestr;
        if (!(ls >> varsword >> scopestr) || varsword != "vars")
          fail("pigeon keys need a vars clause");
        if (fam.by_pigeons.count(key)) fail("duplicate key");
        cur = &fam.by_pigeons[key];
        cur->vars = parse_varset(scopestr);
      } else {
        std::vector<VarId> key = parse_varset(keystr);
        if (fam.by_vars.count(key)) fail("duplicate key");
        cur = &fam.by_vars[key];
        cur->vars = key;
      }
    } else if (word == "assign") {
      if (!cur) fail("assign before any key");
      std::string bits, probword, frac;
      if (!(ls >> bits >> probword >> frac) || probword != "prob")
        fail("malformed assign line");
      uint64_t mask = 0;
      if (bits == "-") {
        if (!cur->vars.empty()) fail("empty assignment against a nonempty scope");
      } else {
        if (bits.size() != cur->vars.size()) fail("assignment width differs from the scope");
        for (size_t i = 0; i < bits.size(); ++i) {
          if (bits[i] == '1')
            mask |= uint64_t{1} << i;
          else if (bits[i] != '0')
            fail("assignment bits must be 0 or 1");
        }
      }
      cur->support.push_back({mask, parse_rational(frac)});
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (!seen_header) throw std::runtime_error("family text: missing family header");
  return fam;
}

}  // namespace pigeon
