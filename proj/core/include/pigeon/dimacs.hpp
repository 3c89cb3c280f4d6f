#pragma once

#include <string>

#include "pigeon/clause.hpp"

namespace pigeon {

// DIMACS CNF with comment headers: `c family <tag> k <k> n <n>` and one
// `c <int> = <structured-name>` line per variable, then the p-line and the
// 0-terminated clauses in formula order.
std::string export_dimacs(const CnfFormula& f);

// Inverse of export_dimacs. Unnamed variables get placeholder names
// x[<dimacs-index>,0]; a missing family header yields Family::custom.
// Throws std::runtime_error on malformed input.
CnfFormula import_dimacs(const std::string& text);

}  // namespace pigeon
