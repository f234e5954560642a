#pragma once

#include <map>
#include <string>

#include "mll/formula.hpp"
#include "mll/structure.hpp"

namespace mll {

using Assignment = std::map<std::string, ElementId, std::less<>>;

// Tarskian satisfaction; quantifiers range over the whole universe of m.
// Throws SymbolError for an unbound free variable or a symbol outside m's
// signature, and PreconditionError if an assigned value is not in m.
bool evaluate(const FinStructure& m, const Formula& phi, const Assignment& a = {});

// Satisfaction in the substructure induced on `within`, elements still
// addressed by their index in m: quantifiers range over `within` only.
// Throws PreconditionError if `within` misses a constant or an assigned value.
bool evaluate_within(const FinStructure& m, Subset within, const Formula& phi, const Assignment& a = {});

}  // namespace mll
