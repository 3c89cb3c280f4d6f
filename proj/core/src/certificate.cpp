#include "pigeon/semialgebraic.hpp"

#include <sstream>
#include <stdexcept>

#include "pigeon/encode.hpp"

namespace pigeon {

namespace {

[[noreturn]] void fail(int64_t term, const std::string& msg) {
  throw std::runtime_error("certificate term " + std::to_string(term) + ": " + msg);
}

bool poly_has_twin(const Polynomial& p) {
  for (const auto& [m, c] : p.terms)
    for (const auto& [v, e] : m.factors)
      if (v.twin) return true;
  return false;
}

// Flavor gates and index ranges for one term.
void check_term(const CertTerm& t, int64_t idx, CertFlavor flavor, int64_t inputs) {
  if (t.alpha < 0) fail(idx, "negative coefficient " + to_fraction_string(t.alpha));
  if (flavor != CertFlavor::sar) {
    for (const AlgVar& v : t.mul)
      if (v.twin) fail(idx, "twin multiplier outside SAR flavor");
    for (const AlgVar& v : t.inv)
      if (v.twin) fail(idx, "twin multiplier outside SAR flavor");
  }
  switch (t.base) {
    case CertBase::initial:
      if (t.input < 0 || t.input >= inputs) fail(idx, "initial index out of range");
      break;
    case CertBase::boolean_up:
    case CertBase::boolean_down:
      if (t.var.twin && flavor != CertFlavor::sar)
        fail(idx, "twin Boolean base outside SAR flavor");
      break;
    case CertBase::comp_up:
    case CertBase::comp_down:
      if (flavor != CertFlavor::sar) fail(idx, "complementarity base requires SAR flavor");
      if (t.var.twin) fail(idx, "complementarity base on a twin");
      break;
    case CertBase::square:
      if (flavor != CertFlavor::lasserre) fail(idx, "square base requires Lasserre flavor");
      if (poly_has_twin(t.square)) fail(idx, "twin variable in a square");
      break;
    case CertBase::one:
      break;
  }
}

Polynomial base_poly(const CertTerm& t, const PolynomialSystem& S) {
  switch (t.base) {
    case CertBase::initial:
      return S.polys.at(t.input);
    case CertBase::boolean_up:
      return poly_term(1, Monomial{{{t.var, 2}}}) - poly_var(t.var);
    case CertBase::boolean_down:
      return poly_var(t.var) - poly_term(1, Monomial{{{t.var, 2}}});
    case CertBase::one:
      return poly_one();
    case CertBase::comp_up:
      return poly_one() - poly_var(AlgVar{t.var.var, false}) -
             poly_var(AlgVar{t.var.var, true});
    case CertBase::comp_down:
      return poly_var(AlgVar{t.var.var, false}) + poly_var(AlgVar{t.var.var, true}) -
             poly_one();
    case CertBase::square:
      return t.square * t.square;
  }
  throw std::logic_error("unreachable certificate base");
}

}  // namespace

std::string flavor_name(CertFlavor f) {
  switch (f) {
    case CertFlavor::sa: return "SA";
    case CertFlavor::sar: return "SAR";
    case CertFlavor::lasserre: return "LAS";
  }
  throw std::logic_error("unreachable certificate flavor");
}

PolynomialSystem sa_system(const CnfFormula& f) {
  PolynomialSystem S;
  S.polys.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) S.polys.push_back(encode_clause(c, f.vars, EncodeMode::S));
  return S;
}

Polynomial expand_term(const CertTerm& t, const PolynomialSystem& S) {
  Polynomial p = mul_monomial(base_poly(t, S), monomial_from(t.mul));
  for (const AlgVar& v : t.inv) p = p * (poly_one() - poly_var(v));
  return scale(t.alpha, p);
}

CertMetrics verify_certificate(const Certificate& c, const PolynomialSystem& S) {
  if (c.flavor != CertFlavor::sar && poly_has_twin(c.target))
    throw std::runtime_error("certificate target: twin variable outside SAR flavor");
  CertMetrics m;
  Polynomial sum;
  for (size_t i = 0; i < c.terms.size(); ++i) {
    check_term(c.terms[i], static_cast<int64_t>(i), c.flavor,
               static_cast<int64_t>(S.polys.size()));
    Polynomial p = expand_term(c.terms[i], S);
    m.rank = std::max(m.rank, p.degree());
    m.size += static_cast<int64_t>(p.term_count());
    m.pigeon_rank = std::max(m.pigeon_rank, pigeon_degree(p));
    sum += p;
  }
  if (!(sum == c.target))
    throw std::runtime_error("certificate: expansion does not match target; residual " +
                             to_string(sum - c.target));
  return m;
}

PolynomialSystem restrict_sa_system(const PolynomialSystem& S, const Restriction& rho) {
  PolynomialSystem out;
  out.polys.reserve(S.polys.size());
  for (const Polynomial& p : S.polys)
    out.polys.push_back(restrict_poly(p, rho.assign, Convention::semialgebraic));
  return out;
}

Certificate restrict_certificate(const Certificate& c, const Restriction& rho) {
  Certificate out;
  out.flavor = c.flavor;
  out.target = restrict_poly(c.target, rho.assign, Convention::semialgebraic);
  for (const CertTerm& t : c.terms) {
    CertTerm r;
    r.alpha = t.alpha;
    r.base = t.base;
    r.input = t.input;
    r.var = t.var;
    bool dead = false;
    for (const AlgVar& v : t.mul) {
      auto it = rho.assign.find(v.var);
      if (it == rho.assign.end()) {
        r.mul.push_back(v);
      } else if (v.twin == it->second) {  // factor evaluates to 0
        dead = true;
      }
    }
    for (const AlgVar& v : t.inv) {
      auto it = rho.assign.find(v.var);
      if (it == rho.assign.end()) {
        r.inv.push_back(v);
      } else if (v.twin != it->second) {  // 1 - v with v = 1
        dead = true;
      }
    }
    switch (t.base) {
      case CertBase::boolean_up:
      case CertBase::boolean_down:
      case CertBase::comp_up:
      case CertBase::comp_down:
        // b^2 - b and 1 - b - (1-b) vanish on assigned variables.
        if (rho.assign.count(t.var.var)) dead = true;
        break;
      case CertBase::square:
        r.square = restrict_poly(t.square, rho.assign, Convention::semialgebraic);
        if (r.square.is_zero()) dead = true;
        break;
      case CertBase::initial:
      case CertBase::one:
        break;
    }
    if (!dead) out.terms.push_back(std::move(r));
  }
  return out;
}

std::string certificate_to_text(const Certificate& c) {
  std::ostringstream os;
  os << "flavor " << flavor_name(c.flavor) << "\n";
  os << "target " << to_string(c.target) << "\n";
  auto list = [&os](const std::vector<AlgVar>& vs) {
    os << '[';
    for (size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << to_string(vs[i]);
    os << ']';
  };
  for (const CertTerm& t : c.terms) {
    os << "term " << to_fraction_string(t.alpha) << " mul ";
    list(t.mul);
    os << " inv ";
    list(t.inv);
    os << " base ";
    switch (t.base) {
      case CertBase::initial: os << "initial " << t.input; break;
      case CertBase::boolean_up: os << "bool+ " << to_string(t.var); break;
      case CertBase::boolean_down: os << "bool- " << to_string(t.var); break;
      case CertBase::one: os << "one"; break;
      case CertBase::comp_up: os << "comp+ " << to_string(t.var.var); break;
      case CertBase::comp_down: os << "comp- " << to_string(t.var.var); break;
      case CertBase::square: os << "square { " << to_string(t.square) << " }"; break;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void line_fail(int64_t line, const std::string& msg) {
  throw std::runtime_error("certificate line " + std::to_string(line) + ": " + msg);
}

// Parses "[a b c]" emitted as space-separated tokens; every variable token
// itself ends in ']', so the closing token is the one ending in "]]" (or a
// bare "[]" for the empty list).
std::vector<AlgVar> parse_list(std::istringstream& is, int64_t line) {
  std::string tok;
  if (!(is >> tok)) line_fail(line, "missing multiplier list");
  std::vector<AlgVar> out;
  if (tok == "[]") return out;
  if (tok.empty() || tok.front() != '[') line_fail(line, "expected '[' in multiplier list");
  tok.erase(tok.begin());
  while (true) {
    if (tok.size() >= 2 && tok.ends_with("]]")) {
      tok.pop_back();
      out.push_back(parse_alg_var(tok));
      return out;
    }
    out.push_back(parse_alg_var(tok));
    if (!(is >> tok)) line_fail(line, "unterminated multiplier list");
  }
}

Rational parse_fraction(const std::string& tok, int64_t line) {
  size_t slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rational(tok);
    return Rational(boost::multiprecision::cpp_int(tok.substr(0, slash)),
                    boost::multiprecision::cpp_int(tok.substr(slash + 1)));
  } catch (const std::exception&) {
    line_fail(line, "bad coefficient '" + tok + "'");
  }
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string raw;
  int64_t line = 0;
  bool seen_flavor = false, seen_target = false;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(raw);
    std::string head;
    is >> head;
    if (!seen_flavor) {
      if (head != "flavor") line_fail(line, "expected flavor header");
      std::string fl;
      if (!(is >> fl)) line_fail(line, "missing flavor");
      if (fl == "SA") c.flavor = CertFlavor::sa;
      else if (fl == "SAR") c.flavor = CertFlavor::sar;
      else if (fl == "LAS") c.flavor = CertFlavor::lasserre;
      else line_fail(line, "unknown flavor '" + fl + "'");
      seen_flavor = true;
      std::string rest;
      if (is >> rest) line_fail(line, "trailing tokens");
      continue;
    }
    if (!seen_target) {
      if (head != "target") line_fail(line, "expected target header");
      std::string poly;
      std::getline(is, poly);
      try {
        c.target = parse_polynomial(poly);
      } catch (const std::exception& e) {
        line_fail(line, std::string("bad target polynomial: ") + e.what());
      }
      seen_target = true;
      continue;
    }
    if (head != "term") line_fail(line, "expected term line");
    CertTerm t;
    std::string tok;
    if (!(is >> tok)) line_fail(line, "missing coefficient");
    t.alpha = parse_fraction(tok, line);
    if (!(is >> tok) || tok != "mul") line_fail(line, "expected 'mul'");
    t.mul = parse_list(is, line);
    if (!(is >> tok) || tok != "inv") line_fail(line, "expected 'inv'");
    t.inv = parse_list(is, line);
    if (!(is >> tok) || tok != "base") line_fail(line, "expected 'base'");
    if (!(is >> tok)) line_fail(line, "missing base kind");
    try {
      if (tok == "initial") {
        t.base = CertBase::initial;
        if (!(is >> t.input)) line_fail(line, "bad initial index");
      } else if (tok == "bool+" || tok == "bool-") {
        t.base = tok == "bool+" ? CertBase::boolean_up : CertBase::boolean_down;
        if (!(is >> tok)) line_fail(line, "missing Boolean variable");
        t.var = parse_alg_var(tok);
      } else if (tok == "comp+" || tok == "comp-") {
        t.base = tok == "comp+" ? CertBase::comp_up : CertBase::comp_down;
        if (!(is >> tok)) line_fail(line, "missing complementarity variable");
        t.var = AlgVar{parse_var(tok), false};
      } else if (tok == "one") {
        t.base = CertBase::one;
      } else if (tok == "square") {
        t.base = CertBase::square;
        std::string rest;
        std::getline(is, rest);
        size_t open = rest.find('{'), close = rest.rfind('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
          line_fail(line, "square polynomial must be braced");
        t.square = parse_polynomial(rest.substr(open + 1, close - open - 1));
        if (rest.find_first_not_of(" \t\r", close + 1) != std::string::npos)
          line_fail(line, "trailing tokens");
        c.terms.push_back(std::move(t));
        continue;
      } else {
        line_fail(line, "unknown base kind '" + tok + "'");
      }
    } catch (const std::runtime_error& e) {
      std::string what = e.what();
      if (what.rfind("certificate line", 0) == 0) throw;
      line_fail(line, what);
    }
    std::string rest;
    if (is >> rest) line_fail(line, "trailing tokens");
    c.terms.push_back(std::move(t));
  }
  if (!seen_flavor || !seen_target)
    throw std::runtime_error("certificate line " + std::to_string(line) +
                             ": missing flavor or target header");
  return c;
}

}  // namespace pigeon
