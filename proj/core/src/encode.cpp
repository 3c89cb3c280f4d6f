#include "pigeon/encode.hpp"

#include <stdexcept>

namespace pigeon {

Polynomial encode_clause(const Clause& c, const VarTable& vars, EncodeMode mode) {
  std::vector<VarId> pos, neg;
  for (Lit l : c.lits)
    (lit_negative(l) ? neg : pos).push_back(vars.name(lit_index(l)));

  switch (mode) {
    case EncodeMode::S: {
      Polynomial p = poly_const(-1);
      for (const VarId& v : pos) p += poly_var(v);
      for (const VarId& v : neg) p += poly_one() - poly_var(v);
      return p;
    }
    case EncodeMode::Sprime: {
      Polynomial p = poly_const(-1);
      for (const VarId& v : pos) p += poly_var(v);
      for (const VarId& v : neg) p += poly_var(AlgVar{v, true});
      return p;
    }
    case EncodeMode::M: {
      std::vector<Polynomial> factors;
      for (const VarId& v : pos) factors.push_back(poly_one() - poly_var(v));
      for (const VarId& v : neg) factors.push_back(poly_var(v));
      return -expand(factors);
    }
    case EncodeMode::Mprime: {
      std::vector<AlgVar> fs;
      for (const VarId& v : pos) fs.push_back(AlgVar{v, true});
      for (const VarId& v : neg) fs.push_back(AlgVar{v, false});
      return -poly_term(1, monomial_from(fs));
    }
    case EncodeMode::PcrMonomial: {
      std::vector<AlgVar> fs;
      for (const VarId& v : pos) fs.push_back(AlgVar{v, false});
      for (const VarId& v : neg) fs.push_back(AlgVar{v, true});
      return poly_term(1, monomial_from(fs));
    }
  }
  throw std::runtime_error("encode_clause: bad mode");
}

PolynomialSystem gen_aphp(int32_t k) {
  if (k < 2) throw std::runtime_error("gen_aphp: k >= 2 required");
  auto x = [](int32_t v, int32_t w) { return poly_var(VarId{VarKind::X, v, w}); };
  PolynomialSystem sys;
  for (int32_t v = 1; v <= k; ++v) {
    Polynomial p = poly_one();
    for (int32_t w = 1; w < k; ++w) p -= x(v, w);
    sys.polys.push_back(p);
  }
  for (int32_t w = 1; w < k; ++w)
    for (int32_t v = 1; v <= k; ++v)
      for (int32_t v2 = v + 1; v2 <= k; ++v2) sys.polys.push_back(x(v, w) * x(v2, w));
  for (int32_t v = 1; v <= k; ++v)
    for (int32_t w = 1; w < k; ++w)
      for (int32_t w2 = w + 1; w2 < k; ++w2) sys.polys.push_back(x(v, w) * x(v, w2));
  return sys;
}

}  // namespace pigeon
