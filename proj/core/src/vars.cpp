#include "pigeon/vars.hpp"

#include <algorithm>
#include <stdexcept>

namespace pigeon {

namespace {

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::P: return "p";
    case VarKind::Y: return "y";
    case VarKind::R: return "r";
    case VarKind::RR: return "rr";
    case VarKind::Q: return "q";
    case VarKind::Z: return "z";
    case VarKind::X: return "x";
  }
  throw std::logic_error("bad VarKind");
}

[[noreturn]] void bad_name(std::string_view s) {
  throw std::runtime_error("bad variable name: '" + std::string(s) + "'");
}

}  // namespace

std::string to_string(const VarId& v) {
  std::string out = kind_name(v.kind);
  out += '[';
  out += std::to_string(v.i);
  if (v.kind != VarKind::R) {
    out += ',';
    out += std::to_string(v.j);
  }
  out += ']';
  return out;
}

std::string to_string(const AlgVar& v) {
  std::string out = kind_name(v.var.kind);
  if (v.twin) out += '\'';
  std::string rest = to_string(v.var);
  return out + rest.substr(rest.find('['));
}

VarId make_rr(int v1, int v2) {
  if (v1 == v2) throw std::invalid_argument("rr indices must differ");
  if (v1 > v2) std::swap(v1, v2);
  return VarId{VarKind::RR, v1, v2};
}

AlgVar parse_alg_var(std::string_view s) {
  size_t br = s.find('[');
  if (br == std::string_view::npos || s.back() != ']') bad_name(s);
  std::string_view head = s.substr(0, br);
  bool twin = false;
  if (!head.empty() && head.back() == '\'') {
    twin = true;
    head.remove_suffix(1);
  }
  VarKind kind;
  if (head == "p") kind = VarKind::P;
  else if (head == "y") kind = VarKind::Y;
  else if (head == "r") kind = VarKind::R;
  else if (head == "rr") kind = VarKind::RR;
  else if (head == "q") kind = VarKind::Q;
  else if (head == "z") kind = VarKind::Z;
  else if (head == "x") kind = VarKind::X;
  else bad_name(s);

  std::string_view body = s.substr(br + 1, s.size() - br - 2);
  auto parse_int = [&](std::string_view t) -> int32_t {
    if (t.empty()) bad_name(s);
    int32_t value = 0;
    for (char c : t) {
      if (c < '0' || c > '9') bad_name(s);
      value = value * 10 + (c - '0');
    }
    return value;
  };
  size_t comma = body.find(',');
  VarId v;
  v.kind = kind;
  if (kind == VarKind::R) {
    if (comma != std::string_view::npos) bad_name(s);
    v.i = parse_int(body);
  } else {
    if (comma == std::string_view::npos) bad_name(s);
    v.i = parse_int(body.substr(0, comma));
    v.j = parse_int(body.substr(comma + 1));
    if (kind == VarKind::RR && v.i >= v.j) bad_name(s);
  }
  return AlgVar{v, twin};
}

VarId parse_var(std::string_view s) {
  AlgVar a = parse_alg_var(s);
  if (a.twin) bad_name(s);
  return a.var;
}

}  // namespace pigeon
