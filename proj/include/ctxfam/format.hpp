#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ctxfam/family.hpp"
#include "ctxfam/fd.hpp"

namespace ctxfam {

/// Syntax tree of a family file:
///
///   monoid B|N|Q
///   context v1 v2 ...
///   val1 val2 ... [: weight]
///
/// `#` starts a comment. Rows follow the variable order of their context
/// line; weights default to 1.
struct FamilyDocument {
  MonoidKind kind = MonoidKind::Boolean;
  /// Relations in block order, over sorted variables.
  std::vector<KRelation> relations;
  /// Line of each `context` header.
  std::vector<std::size_t> lines;
};

/// Throws ParseError with the position of the first problem.
FamilyDocument parse_family_document(std::string_view text);

/// Validates local consistency. The contexts must be pairwise incomparable
/// (ContractError otherwise).
LocalCheck validate_document(const FamilyDocument& document);

/// parse_family_document + validate_document; a violation is reported as a
/// ContractError carrying its description.
ContextualFamily parse_family(std::string_view text);

/// Canonical text: sorted variables, rows in relation order, a weight on
/// every row except for B.
std::string serialize_family(const ContextualFamily& family);

/// `A [B ...] -> C [D ...]` or `cd A B [C ...]`; variables are identifiers.
FD parse_fd(std::string_view text);

/// One dependency per line, `#` comments, duplicates dropped (first
/// occurrence kept).
std::vector<FD> parse_fd_document(std::string_view text);

std::string serialize_fds(const std::vector<FD>& fds);

}  // namespace ctxfam
