#include "pigeon/pcr.hpp"

#include <sstream>
#include <stdexcept>

#include "pigeon/encode.hpp"

namespace pigeon {

namespace {

[[noreturn]] void fail(int64_t idx, const std::string& msg) {
  throw std::runtime_error("pcr step " + std::to_string(idx) + ": " + msg);
}

void check_premise(int64_t idx, int32_t p, size_t limit) {
  if (p < 0 || static_cast<size_t>(p) >= limit) fail(idx, "premise " + std::to_string(p) + " out of range");
}

// Expected polynomial of one step given the previously derived ones.
Polynomial recompute(const PcrStep& s, int64_t idx, const std::vector<Polynomial>& prior,
                     const PolynomialSystem& S) {
  switch (s.kind) {
    case PcrStepKind::boolean_axiom: {
      Polynomial x = poly_var(s.var);
      return x * x - x;
    }
    case PcrStepKind::complementarity: {
      if (s.var.twin) fail(idx, "complementarity variable must not be a twin");
      return poly_one() - poly_var(AlgVar{s.var.var, false}) - poly_var(AlgVar{s.var.var, true});
    }
    case PcrStepKind::initial:
      if (s.input < 0 || static_cast<size_t>(s.input) >= S.polys.size())
        fail(idx, "initial index " + std::to_string(s.input) + " out of range");
      return S.polys[static_cast<size_t>(s.input)];
    case PcrStepKind::lin_comb:
      check_premise(idx, s.a, prior.size());
      check_premise(idx, s.b, prior.size());
      return scale(s.alpha, prior[static_cast<size_t>(s.a)]) +
             scale(s.beta, prior[static_cast<size_t>(s.b)]);
    case PcrStepKind::mult:
      check_premise(idx, s.a, prior.size());
      return poly_var(s.var) * prior[static_cast<size_t>(s.a)];
  }
  fail(idx, "unknown step kind");
}

int32_t push_step(PcrProof& p, PcrStep s, const PolynomialSystem* S) {
  int64_t idx = static_cast<int64_t>(p.steps.size());
  static const PolynomialSystem empty_system{};
  Polynomial q = recompute(s, idx, p.polys, S ? *S : empty_system);
  p.steps.push_back(std::move(s));
  p.polys.push_back(std::move(q));
  return static_cast<int32_t>(idx);
}

}  // namespace

int32_t PcrProof::add_boolean_axiom(const AlgVar& v) {
  PcrStep s;
  s.kind = PcrStepKind::boolean_axiom;
  s.var = v;
  return push_step(*this, std::move(s), nullptr);
}

int32_t PcrProof::add_complementarity(const VarId& v) {
  PcrStep s;
  s.kind = PcrStepKind::complementarity;
  s.var = AlgVar{v, false};
  return push_step(*this, std::move(s), nullptr);
}

int32_t PcrProof::add_initial(const PolynomialSystem& S, int32_t input) {
  PcrStep s;
  s.kind = PcrStepKind::initial;
  s.input = input;
  return push_step(*this, std::move(s), &S);
}

int32_t PcrProof::add_lin_comb(int32_t a, int32_t b, const Rational& alpha, const Rational& beta) {
  PcrStep s;
  s.kind = PcrStepKind::lin_comb;
  s.a = a;
  s.b = b;
  s.alpha = alpha;
  s.beta = beta;
  return push_step(*this, std::move(s), nullptr);
}

int32_t PcrProof::add_mult(int32_t a, const AlgVar& v) {
  PcrStep s;
  s.kind = PcrStepKind::mult;
  s.a = a;
  s.var = v;
  return push_step(*this, std::move(s), nullptr);
}

namespace {

bool is_prime_u64(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t mod_of(const Integer& v, uint64_t p) {
  Integer m = v % Integer(p);
  if (m < 0) m += Integer(p);
  return m.convert_to<uint64_t>();
}

// Inverse mod a prime via the extended Euclid algorithm; a in [1, p).
uint64_t inv_mod(uint64_t a, uint64_t p) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

}  // namespace

Polynomial poly_mod(const Polynomial& p, uint64_t prime) {
  Polynomial r;
  for (const auto& [m, c] : p.terms) {
    uint64_t den = mod_of(denominator(c), prime);
    if (den == 0)
      throw std::runtime_error("poly_mod: denominator of " + to_fraction_string(c) +
                               " not invertible mod " + std::to_string(prime));
    uint64_t v = mod_of(numerator(c), prime) * inv_mod(den, prime) % prime;
    if (v != 0) r.terms.emplace(m, Rational(v));
  }
  return r;
}

PcrMetrics verify_pcr(const PcrProof& proof, const PolynomialSystem& S,
                      std::optional<uint64_t> prime) {
  if (proof.polys.size() != proof.steps.size())
    throw std::runtime_error("pcr proof: steps and polynomials out of sync");
  if (prime) {
    if (*prime >= (uint64_t{1} << 31)) throw std::runtime_error("pcr field: prime must fit in 31 bits");
    if (!is_prime_u64(*prime))
      throw std::runtime_error("pcr field: " + std::to_string(*prime) + " is not prime");
  }
  auto reduce = [&](const Polynomial& q) { return prime ? poly_mod(q, *prime) : q; };

  PcrMetrics m;
  std::vector<Polynomial> derived;
  derived.reserve(proof.steps.size());
  for (size_t t = 0; t < proof.steps.size(); ++t) {
    Polynomial expected = reduce(recompute(proof.steps[t], static_cast<int64_t>(t), derived, S));
    Polynomial found = reduce(proof.polys[t]);
    if (expected != found)
      fail(static_cast<int64_t>(t), "rule recomputation mismatch; expected " +
                                        to_string(expected) + ", found " + to_string(found));
    m.size += static_cast<int64_t>(found.term_count());
    m.degree = std::max(m.degree, found.degree());
    m.pigeon_degree = std::max(m.pigeon_degree, block_degree(found, alg_pigeon_blocks()));
    derived.push_back(std::move(found));
  }
  return m;
}

PolynomialSystem pcr_system(const CnfFormula& f) {
  PolynomialSystem S;
  S.polys.reserve(f.clauses.size());
  for (const Clause& c : f.clauses) S.polys.push_back(encode_clause(c, f.vars, EncodeMode::PcrMonomial));
  return S;
}

PolynomialSystem restrict_system(const PolynomialSystem& S, const Restriction& rho) {
  PolynomialSystem r;
  r.polys.reserve(S.polys.size());
  for (const Polynomial& p : S.polys) r.polys.push_back(restrict_poly(p, rho.assign, Convention::pcr));
  return r;
}

PcrProof restrict_pcr(const PcrProof& proof, const PolynomialSystem& S, const Restriction& rho) {
  PolynomialSystem Srho = restrict_system(S, rho);
  PcrProof out;
  std::vector<int32_t> map(proof.steps.size(), -1);
  int32_t zero = -1;
  // Derives the zero polynomial once; bootstraps from a Boolean axiom when
  // nothing has been emitted yet.
  auto zero_step = [&](const VarId& seed) {
    if (zero >= 0) return zero;
    int32_t j = out.steps.empty() ? out.add_boolean_axiom(AlgVar{seed, false}) : 0;
    zero = out.add_lin_comb(j, j, 1, -1);
    return zero;
  };
  // PCR truth values: true = 0, false = 1; twins complement.
  auto factor_value = [&](const AlgVar& v) {
    bool truth = rho.assign.at(v.var);
    if (v.twin) truth = !truth;
    return truth ? 0 : 1;
  };

  for (size_t t = 0; t < proof.steps.size(); ++t) {
    const PcrStep& s = proof.steps[t];
    switch (s.kind) {
      case PcrStepKind::boolean_axiom:
      case PcrStepKind::complementarity:
        map[t] = rho.assign.count(s.var.var)
                     ? zero_step(s.var.var)
                     : (s.kind == PcrStepKind::boolean_axiom ? out.add_boolean_axiom(s.var)
                                                             : out.add_complementarity(s.var.var));
        break;
      case PcrStepKind::initial:
        map[t] = out.add_initial(Srho, s.input);
        break;
      case PcrStepKind::lin_comb:
        map[t] = out.add_lin_comb(map.at(static_cast<size_t>(s.a)), map.at(static_cast<size_t>(s.b)),
                                  s.alpha, s.beta);
        break;
      case PcrStepKind::mult:
        if (!rho.assign.count(s.var.var)) {
          map[t] = out.add_mult(map.at(static_cast<size_t>(s.a)), s.var);
        } else if (factor_value(s.var) == 1) {
          map[t] = map.at(static_cast<size_t>(s.a));
        } else {
          map[t] = zero_step(s.var.var);
        }
        break;
    }
  }
  // Copy elision can leave unreferenced steps behind the conclusion's image;
  // cut there so a refutation stays a refutation.
  if (!map.empty()) {
    size_t keep = static_cast<size_t>(map.back()) + 1;
    out.steps.resize(keep);
    out.polys.resize(keep);
  }
  return out;
}

std::string pcr_to_text(const PcrProof& p) {
  if (p.polys.size() != p.steps.size())
    throw std::runtime_error("pcr proof: steps and polynomials out of sync");
  std::ostringstream os;
  for (size_t t = 0; t < p.steps.size(); ++t) {
    const PcrStep& s = p.steps[t];
    os << t << ' ';
    switch (s.kind) {
      case PcrStepKind::boolean_axiom:
        os << "bool " << to_string(s.var);
        break;
      case PcrStepKind::complementarity:
        os << "comp " << to_string(s.var.var);
        break;
      case PcrStepKind::initial:
        os << "init " << s.input;
        break;
      case PcrStepKind::lin_comb:
        os << "lin " << s.a << ' ' << s.b << ' ' << to_fraction_string(s.alpha) << ' '
           << to_fraction_string(s.beta);
        break;
      case PcrStepKind::mult:
        os << "mult " << s.a << ' ' << to_string(s.var);
        break;
    }
    os << " : " << to_string(p.polys[t]) << '\n';
  }
  return os.str();
}

PcrProof parse_pcr(const std::string& text) {
  PcrProof p;
  std::istringstream in(text);
  std::string line;
  int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto err = [&](const std::string& msg) -> std::runtime_error {
      return std::runtime_error("pcr line " + std::to_string(lineno) + ": " + msg);
    };
    size_t colon = line.find(" : ");
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw err("missing ' : ' separator");
    }
    std::istringstream ls(line.substr(0, colon));
    int64_t idx;
    std::string kind;
    if (!(ls >> idx >> kind)) throw err("missing index or kind");
    if (idx != static_cast<int64_t>(p.steps.size())) throw err("index out of order");
    PcrStep s;
    std::string tok, tok2;
    if (kind == "bool") {
      if (!(ls >> tok)) throw err("bad bool line");
      s.kind = PcrStepKind::boolean_axiom;
      s.var = parse_alg_var(tok);
    } else if (kind == "comp") {
      if (!(ls >> tok)) throw err("bad comp line");
      s.kind = PcrStepKind::complementarity;
      s.var = AlgVar{parse_var(tok), false};
    } else if (kind == "init") {
      s.kind = PcrStepKind::initial;
      if (!(ls >> s.input)) throw err("bad init line");
    } else if (kind == "lin") {
      s.kind = PcrStepKind::lin_comb;
      if (!(ls >> s.a >> s.b >> tok >> tok2)) throw err("bad lin line");
      s.alpha = parse_rational(tok);
      s.beta = parse_rational(tok2);
    } else if (kind == "mult") {
      s.kind = PcrStepKind::mult;
      if (!(ls >> s.a >> tok)) throw err("bad mult line");
      s.var = parse_alg_var(tok);
    } else {
      throw err("unknown kind " + kind);
    }
    if (ls >> tok) throw err("trailing tokens");
    p.steps.push_back(std::move(s));
    try {
      p.polys.push_back(parse_polynomial(line.substr(colon + 3)));
    } catch (const std::exception& e) {
      throw err(e.what());
    }
  }
  return p;
}

}  // namespace pigeon
