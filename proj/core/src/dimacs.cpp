#include "pigeon/dimacs.hpp"

#include <sstream>
#include <stdexcept>

namespace pigeon {

std::string export_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "c family " << family_name(f.family) << " k " << f.k << " n " << f.n << "\n";
  for (int32_t i = 0; i < f.vars.size(); ++i)
    out << "c " << (i + 1) << " = " << to_string(f.vars.name(i)) << "\n";
  out << "p cnf " << f.vars.size() << " " << f.clauses.size() << "\n";
  for (const Clause& c : f.clauses) {
    for (Lit l : c.lits) out << l << " ";
    out << "0\n";
  }
  return out.str();
}

CnfFormula import_dimacs(const std::string& text) {
  std::istringstream in(text);
  CnfFormula f;
  int64_t nvars = -1, nclauses = -1;
  std::string line;
  std::vector<std::vector<Lit>> raw;
  std::vector<Lit> current;
  std::vector<std::pair<int64_t, VarId>> names;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string a, b, cstr;
      if (!(ls >> a)) continue;
      if (a == "family") {
        std::string tag;
        ls >> tag >> b >> f.k >> cstr >> f.n;
        for (Family fam : {Family::custom, Family::php, Family::tphp, Family::rphp, Family::erphp})
          if (family_name(fam) == tag) f.family = fam;
      } else if ((ls >> b >> cstr) && b == "=") {
        names.emplace_back(std::stoll(a), parse_var(cstr));
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> nvars >> nclauses) || fmt != "cnf")
        throw std::runtime_error("dimacs: malformed p-line");
      continue;
    }
    // Clause data: the already-read token plus the rest of the line.
    do {
      int64_t v = std::stoll(tok);
      if (v == 0) {
        raw.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(static_cast<Lit>(v));
      }
    } while (ls >> tok);
  }
  if (!current.empty()) throw std::runtime_error("dimacs: unterminated clause");
  if (nvars < 0) throw std::runtime_error("dimacs: missing p-line");
  if (static_cast<int64_t>(raw.size()) != nclauses)
    throw std::runtime_error("dimacs: clause count mismatch");

  std::vector<VarId> by_index(nvars, VarId{VarKind::X, 0, 0});
  std::vector<bool> named(nvars, false);
  for (auto& [idx, name] : names) {
    if (idx < 1 || idx > nvars) throw std::runtime_error("dimacs: name index out of range");
    by_index[idx - 1] = name;
    named[idx - 1] = true;
  }
  for (int64_t i = 0; i < nvars; ++i) {
    if (!named[i]) by_index[i] = VarId{VarKind::X, static_cast<int32_t>(i + 1), 0};
    if (f.vars.intern(by_index[i]) != static_cast<int32_t>(i))
      throw std::runtime_error("dimacs: duplicate variable name " + to_string(by_index[i]));
  }
  for (auto& lits : raw) {
    for (Lit l : lits)
      if (lit_index(l) >= nvars) throw std::runtime_error("dimacs: literal out of range");
    f.clauses.push_back(make_clause(std::move(lits)));
  }
  validate_formula(f);
  return f;
}

}  // namespace pigeon
