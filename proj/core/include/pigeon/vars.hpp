#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pigeon {

// Variable kinds across all formula families:
//   P(u,v)  pigeon u maps to value v          (relativized families)
//   Y(u,v)  extension chain for wide P-clauses
//   R(v)    value v is in the image
//   RR(v,v') pair variable r_{v,v'}, stored with v < v'
//   Q(v,w)  pigeon v sits in hole w
//   Z(v,w)  extension chain for wide Q-clauses
//   X(u,w)  direct pigeon-to-hole variable (PHP / APHP)
enum class VarKind : uint8_t { P, Y, R, RR, Q, Z, X };

struct VarId {
  VarKind kind = VarKind::X;
  int32_t i = 0;  // first index; for R the only index
  int32_t j = 0;  // second index; 0 when unused

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

// A variable or its twin. Twins are first-class objects in algebraic
// contexts only; CNF clauses never contain them.
struct AlgVar {
  VarId var;
  bool twin = false;

  friend auto operator<=>(const AlgVar&, const AlgVar&) = default;
};

struct Literal {
  VarId var;
  bool neg = false;
  bool twin = false;  // always false inside CNF clauses

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Structured-name grammar: p[u,v] y[u,v] r[v] rr[v,v'] q[v,w] z[v,w]
// x[u,w]; twins carry a prime suffix on the kind: q'[v,w].
std::string to_string(const VarId& v);
std::string to_string(const AlgVar& v);
VarId parse_var(std::string_view s);
AlgVar parse_alg_var(std::string_view s);

// rr indices are unordered; the constructor sorts them.
VarId make_rr(int v1, int v2);

struct VarIdHash {
  size_t operator()(const VarId& v) const {
    uint64_t x = (static_cast<uint64_t>(v.kind) << 60) ^
                 (static_cast<uint64_t>(static_cast<uint32_t>(v.i)) << 30) ^
                 static_cast<uint64_t>(static_cast<uint32_t>(v.j));
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return static_cast<size_t>(x);
  }
};

}  // namespace pigeon
