#include "ctxfam/fd.hpp"

#include "ctxfam/errors.hpp"

namespace ctxfam {

FD FD::make(VarSet lhs, VarSet rhs) {
  FD fd{make_varset(std::move(lhs)), make_varset(std::move(rhs))};
  if (fd.lhs.empty() || fd.rhs.empty()) throw ContractError("dependency sides must be nonempty");
  return fd;
}

FD FD::unary(const Variable& x, const Variable& y) { return make({x}, {y}); }

FD FD::cd(VarSet vars) {
  auto v = make_varset(std::move(vars));
  return make(v, v);
}

VarSet FD::vars() const { return unite(lhs, rhs); }

std::string FD::to_string() const { return join(lhs) + " -> " + join(rhs); }

}  // namespace ctxfam
