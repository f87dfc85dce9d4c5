#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace ctxfam {

using Variable = std::string;
using Value = std::string;

/// A finite set of variables, kept sorted and duplicate-free.
using VarSet = std::vector<Variable>;

/// Sorts and de-duplicates. Throws ContractError on an empty variable name.
VarSet make_varset(std::vector<Variable> vars);
VarSet make_varset(std::initializer_list<const char*> vars);

bool is_subset(const VarSet& sub, const VarSet& super);
bool contains(const VarSet& set, const Variable& var);
VarSet intersect(const VarSet& a, const VarSet& b);
VarSet unite(const VarSet& a, const VarSet& b);

/// Space separated, in set order.
std::string join(const VarSet& vars, const char* separator = " ");

}  // namespace ctxfam
