#include "ctxfam/varset.hpp"

#include <algorithm>
#include <iterator>

#include "ctxfam/errors.hpp"

namespace ctxfam {

VarSet make_varset(std::vector<Variable> vars) {
  for (const auto& v : vars) {
    if (v.empty()) throw ContractError("variable names must be nonempty");
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

VarSet make_varset(std::initializer_list<const char*> vars) {
  return make_varset(std::vector<Variable>(vars.begin(), vars.end()));
}

bool is_subset(const VarSet& sub, const VarSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool contains(const VarSet& set, const Variable& var) {
  return std::binary_search(set.begin(), set.end(), var);
}

VarSet intersect(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet unite(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string join(const VarSet& vars, const char* separator) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += separator;
    out += vars[i];
  }
  return out;
}

}  // namespace ctxfam
