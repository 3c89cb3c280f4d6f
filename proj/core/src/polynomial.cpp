#include "pigeon/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pigeon {

int32_t Monomial::degree() const {
  int32_t d = 0;
  for (auto& [v, e] : factors) d += e;
  return d;
}

bool Monomial::mentions(const AlgVar& v) const {
  for (auto& [w, e] : factors)
    if (w == v) return true;
  return false;
}

Monomial monomial_one() { return Monomial{}; }

Monomial monomial_from(const std::vector<AlgVar>& vars) {
  Monomial m;
  for (const AlgVar& v : vars) m = mul(m, Monomial{{{v, 1}}});
  return m;
}

Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() ||
        (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
  int32_t da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    const auto& [va, ea] = a.factors[i];
    const auto& [vb, eb] = b.factors[j];
    if (va < vb) return 1;   // a has exponent on an earlier variable
    if (vb < va) return -1;
    if (ea != eb) return ea > eb ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.factors.size()) return 1;
  if (j < b.factors.size()) return -1;
  return 0;
}

int32_t Polynomial::degree() const {
  // Leading term is degree-maximal under grlex-descending iteration.
  return terms.empty() ? 0 : terms.begin()->first.degree();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (auto& [m, c] : o.terms) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial poly_zero() { return Polynomial{}; }

Polynomial poly_const(const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms.emplace(monomial_one(), c);
  return p;
}

Polynomial poly_one() { return poly_const(1); }

Polynomial poly_var(const AlgVar& v) {
  Polynomial p;
  p.terms.emplace(Monomial{{{v, 1}}}, Rational(1));
  return p;
}

Polynomial poly_var(const VarId& v) { return poly_var(AlgVar{v, false}); }

Polynomial poly_term(const Rational& c, const Monomial& m) {
  Polynomial p;
  if (c != 0) p.terms.emplace(m, c);
  return p;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
  a += b;
  return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
  a -= b;
  return a;
}

Polynomial operator-(const Polynomial& a) { return scale(Rational(-1), a); }

Polynomial scale(const Rational& c, const Polynomial& p) {
  Polynomial out;
  if (c == 0) return out;
  for (auto& [m, coef] : p.terms) out.terms.emplace(m, c * coef);
  return out;
}

Polynomial mul_monomial(const Polynomial& p, const Monomial& m) {
  Polynomial out;
  for (auto& [mm, c] : p.terms) out.terms.emplace(mul(mm, m), c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      Monomial m = mul(ma, mb);
      auto it = out.terms.find(m);
      if (it == out.terms.end()) {
        out.terms.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  return out;
}

Polynomial expand(const std::vector<Polynomial>& factors) {
  Polynomial out = poly_one();
  for (const Polynomial& f : factors) out = out * f;
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<AlgVar, Polynomial>& map) {
  Polynomial out;
  for (auto& [m, c] : p.terms) {
    Polynomial term = poly_const(c);
    Monomial untouched;
    for (auto& [v, e] : m.factors) {
      auto it = map.find(v);
      if (it == map.end()) {
        untouched.factors.emplace_back(v, e);
      } else {
        for (int32_t t = 0; t < e; ++t) term = term * it->second;
      }
    }
    out += mul_monomial(term, untouched);
  }
  return out;
}

Polynomial multilinearize(const Polynomial& p) {
  Polynomial out;
  for (auto& [m, c] : p.terms) {
    Monomial flat = m;
    for (auto& [v, e] : flat.factors) e = 1;
    auto it = out.terms.find(flat);
    if (it == out.terms.end()) {
      out.terms.emplace(std::move(flat), c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

Polynomial restrict_poly(const Polynomial& p,
                         const std::unordered_map<VarId, bool, VarIdHash>& assignment,
                         Convention conv) {
  Polynomial out;
  for (auto& [m, c] : p.terms) {
    Rational coef = c;
    Monomial kept;
    for (auto& [v, e] : m.factors) {
      auto it = assignment.find(v.var);
      if (it == assignment.end()) {
        kept.factors.emplace_back(v, e);
        continue;
      }
      int val = (conv == Convention::semialgebraic) == it->second ? 1 : 0;
      if (v.twin) val = 1 - val;
      if (val == 0) {
        coef = 0;
        break;
      }
      // val == 1: the factor disappears.
    }
    if (coef == 0) continue;
    auto it = out.terms.find(kept);
    if (it == out.terms.end()) {
      out.terms.emplace(std::move(kept), coef);
    } else {
      it->second += coef;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

Rational evaluate(const Polynomial& p,
                  const std::unordered_map<VarId, Rational, VarIdHash>& values) {
  Rational total = 0;
  for (auto& [m, c] : p.terms) {
    Rational prod = c;
    for (auto& [v, e] : m.factors) {
      auto it = values.find(v.var);
      if (it == values.end())
        throw std::runtime_error("evaluate: no value for " + to_string(v.var));
      Rational val = v.twin ? Rational(1) - it->second : it->second;
      for (int32_t t = 0; t < e && prod != 0; ++t) prod *= val;
    }
    total += prod;
  }
  return total;
}

int32_t pigeon_block(const VarId& v) {
  switch (v.kind) {
    case VarKind::P:
    case VarKind::Y:
    case VarKind::Q:
    case VarKind::Z:
    case VarKind::X:
      return v.i;
    case VarKind::R:
    case VarKind::RR:
      return -1;
  }
  return -1;
}

AlgBlockMap alg_pigeon_blocks() {
  return [](const VarId& v) { return pigeon_block(v); };
}

AlgBlockMap alg_single_block() {
  return [](const VarId&) { return 1; };
}

int32_t block_degree(const Polynomial& p, const AlgBlockMap& bm, bool strict) {
  int32_t best = 0;
  for (auto& [m, c] : p.terms) {
    std::vector<int32_t> blocks;
    for (auto& [v, e] : m.factors) {
      int32_t b = bm(v.var);
      if (b < 0) {
        if (strict)
          throw std::runtime_error("block_degree: unblocked variable " + to_string(v.var));
        continue;
      }
      blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    best = std::max(best, static_cast<int32_t>(blocks.size()));
  }
  return best;
}

int32_t pigeon_degree(const Polynomial& p) {
  return block_degree(p, alg_pigeon_blocks(), false);
}

Rational moebius(const std::map<std::vector<VarId>, Rational>& a,
                 const std::vector<VarId>& X, const std::vector<VarId>& Y) {
  std::vector<VarId> extra;
  for (const VarId& v : X)
    if (!std::binary_search(Y.begin(), Y.end(), v)) extra.push_back(v);
  if (Y.size() + extra.size() != X.size())
    throw std::runtime_error("moebius: Y is not a subset of X");
  if (extra.size() > 30) throw std::runtime_error("moebius: ground set too large");
  Rational total = 0;
  for (uint32_t mask = 0; mask < (1u << extra.size()); ++mask) {
    std::vector<VarId> Z = Y;
    for (size_t i = 0; i < extra.size(); ++i)
      if (mask & (1u << i)) Z.push_back(extra[i]);
    std::sort(Z.begin(), Z.end());
    auto it = a.find(Z);
    if (it == a.end()) throw std::runtime_error("moebius: missing value a(Z)");
    int bits = __builtin_popcount(mask);
    total += (bits % 2 == 0) ? it->second : -it->second;
  }
  return total;
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (auto& [v, e] : m.factors) {
    if (!out.empty()) out += "*";
    out += to_string(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.terms.empty()) return "0/1";
  std::string out;
  for (auto& [m, c] : p.terms) {
    if (!out.empty()) out += " + ";
    out += to_fraction_string(c);
    if (!m.factors.empty()) out += "*" + to_string(m);
  }
  return out;
}

namespace {

// One term: [coef][*]factor[*factor...], coef = int or int/int.
void parse_term(const std::string& text, Polynomial& into) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == '*') {
      parts.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.empty() || parts[0].empty())
    throw std::runtime_error("polynomial: empty term in input");

  Rational coef = 1;
  size_t first_factor = 0;
  const std::string& head = parts[0];
  bool head_is_coef = head.find('[') == std::string::npos;
  if (head_is_coef) {
    coef = parse_rational(head);
    first_factor = 1;
    if (parts.size() == 1) {
      into += poly_const(coef);
      return;
    }
  }
  Monomial m;
  for (size_t i = first_factor; i < parts.size(); ++i) {
    std::string f = parts[i];
    int32_t exp = 1;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      exp = std::stoi(f.substr(caret + 1));
      f = f.substr(0, caret);
      if (exp < 1) throw std::runtime_error("polynomial: exponent must be positive");
    }
    m = mul(m, Monomial{{{parse_alg_var(f), exp}}});
  }
  into += poly_term(coef, m);
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
  Polynomial out;
  size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    size_t next = text.find(" + ", pos);
    std::string chunk =
        next == std::string::npos ? text.substr(pos) : text.substr(pos, next - pos);
    // Trim.
    size_t b = chunk.find_first_not_of(" \t\r\n");
    size_t e = chunk.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) {
      parse_term(chunk.substr(b, e - b + 1), out);
      any = true;
    }
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  if (!any) throw std::runtime_error("polynomial: empty input");
  return out;
}

}  // namespace pigeon
