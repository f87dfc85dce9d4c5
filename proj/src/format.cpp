#include "ctxfam/format.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ctxfam/errors.hpp"

namespace ctxfam {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<Token> tokenize(std::string_view line, std::size_t offset = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), offset + start + 1});
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Block {
  std::vector<Variable> header;  // as written
  std::vector<std::size_t> order;  // header position of each sorted variable
  std::size_t line;
  KRelation relation;
};

}  // namespace

FamilyDocument parse_family_document(std::string_view text) {
  FamilyDocument doc;
  bool seen_monoid = false;
  std::vector<Block> blocks;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    const auto body = strip_comment(lines[n]);
    const auto tokens = tokenize(body);
    if (tokens.empty()) continue;
    const auto& head = tokens[0];

    if (head.text == "monoid") {
      if (seen_monoid) throw ParseError(lineno, head.column, "duplicate monoid declaration");
      if (!blocks.empty()) throw ParseError(lineno, head.column, "monoid must be declared before the first context");
      if (tokens.size() != 2) throw ParseError(lineno, head.column, "expected 'monoid B|N|Q'");
      const auto kind = parse_kind(tokens[1].text);
      if (!kind) throw ParseError(lineno, tokens[1].column, "unknown monoid '" + tokens[1].text + "'");
      doc.kind = *kind;
      seen_monoid = true;
      continue;
    }

    if (head.text == "context") {
      std::vector<Variable> header;
      std::set<Variable> seen;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (!is_identifier(tokens[k].text)) {
          throw ParseError(lineno, tokens[k].column, "'" + tokens[k].text + "' is not a variable name");
        }
        if (!seen.insert(tokens[k].text).second) {
          throw ParseError(lineno, tokens[k].column, "variable '" + tokens[k].text + "' repeated");
        }
        header.push_back(tokens[k].text);
      }
      const VarSet sorted = make_varset(header);
      for (const auto& b : blocks) {
        if (b.relation.vars() == sorted) throw ParseError(lineno, head.column, "context declared twice");
      }
      std::vector<std::size_t> order;
      for (const auto& v : sorted) {
        order.push_back(static_cast<std::size_t>(std::find(header.begin(), header.end(), v) - header.begin()));
      }
      blocks.push_back({std::move(header), std::move(order), lineno, KRelation(sorted, doc.kind)});
      continue;
    }

    if (blocks.empty()) throw ParseError(lineno, head.column, "row before the first context");
    auto& block = blocks.back();
    const auto colon = body.find(':');
    const auto values = tokenize(body.substr(0, colon));
    MonoidValue weight = MonoidValue::one(doc.kind);
    if (colon != std::string_view::npos) {
      const auto rest = tokenize(body.substr(colon + 1), colon + 1);
      if (rest.size() != 1) throw ParseError(lineno, colon + 1, "expected one weight after ':'");
      try {
        weight = MonoidValue::parse(rest[0].text, doc.kind);
      } catch (const Error& e) {
        throw ParseError(lineno, rest[0].column, e.what());
      }
    }
    if (values.size() != block.header.size()) {
      const std::size_t column = values.empty() ? head.column : values.back().column;
      throw ParseError(lineno, column,
                       "row has " + std::to_string(values.size()) + " values, context has " +
                           std::to_string(block.header.size()) + " variables");
    }
    Tuple row;
    for (auto pos : block.order) row.push_back(values[pos].text);
    block.relation.add_row(std::move(row), weight);
  }
  for (auto& b : blocks) {
    doc.relations.push_back(std::move(b.relation));
    doc.lines.push_back(b.line);
  }
  return doc;
}

LocalCheck validate_document(const FamilyDocument& document) {
  std::vector<VarSet> contexts;
  for (const auto& r : document.relations) contexts.push_back(r.vars());
  return check_local_consistency(ContextSet(std::move(contexts)), document.kind, document.relations);
}

ContextualFamily parse_family(std::string_view text) {
  const auto doc = parse_family_document(text);
  auto checked = validate_document(doc);
  if (auto* violation = std::get_if<ConsistencyViolation>(&checked)) {
    std::vector<VarSet> contexts;
    for (const auto& r : doc.relations) contexts.push_back(r.vars());
    throw ContractError(violation->describe(ContextSet(std::move(contexts))));
  }
  return std::get<ContextualFamily>(std::move(checked));
}

std::string serialize_family(const ContextualFamily& family) {
  std::string out = "monoid ";
  out += kind_name(family.kind());
  out += '\n';
  for (const auto& rel : family.relations()) {
    out += "\ncontext";
    for (const auto& v : rel.vars()) out += ' ' + v;
    out += '\n';
    for (const auto& [row, weight] : rel.rows()) {
      std::string line;
      for (const auto& value : row) {
        if (!line.empty()) line += ' ';
        line += value;
      }
      if (family.kind() != MonoidKind::Boolean) line += (line.empty() ? ": " : " : ") + weight.to_string();
      out += line + '\n';
    }
  }
  return out;
}

namespace {

FD parse_fd_tokens(const std::vector<Token>& tokens, std::size_t lineno) {
  auto check_var = [&](const Token& t) {
    if (!is_identifier(t.text)) throw ParseError(lineno, t.column, "'" + t.text + "' is not a variable name");
    return t.text;
  };
  if (tokens.front().text == "cd") {
    if (tokens.size() < 2) throw ParseError(lineno, tokens[0].column, "a CD needs at least one variable");
    std::vector<Variable> vars;
    for (std::size_t k = 1; k < tokens.size(); ++k) vars.push_back(check_var(tokens[k]));
    return FD::cd(make_varset(std::move(vars)));
  }
  const auto arrow = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.text == "->"; });
  if (arrow == tokens.end()) throw ParseError(lineno, tokens.back().column, "expected '->'");
  if (arrow == tokens.begin()) throw ParseError(lineno, arrow->column, "missing left-hand side");
  if (arrow + 1 == tokens.end()) throw ParseError(lineno, arrow->column, "missing right-hand side");
  std::vector<Variable> lhs, rhs;
  for (auto it = tokens.begin(); it != arrow; ++it) lhs.push_back(check_var(*it));
  for (auto it = arrow + 1; it != tokens.end(); ++it) {
    if (it->text == "->") throw ParseError(lineno, it->column, "more than one '->'");
    rhs.push_back(check_var(*it));
  }
  return FD::make(make_varset(std::move(lhs)), make_varset(std::move(rhs)));
}

// Splits "x->y" style tokens so the arrow need not be surrounded by spaces.
std::vector<Token> split_arrows(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const auto& t : tokens) {
    std::size_t start = 0;
    for (;;) {
      const auto at = t.text.find("->", start);
      if (at == std::string::npos) break;
      if (at > start) out.push_back({t.text.substr(start, at - start), t.column + start});
      out.push_back({"->", t.column + at});
      start = at + 2;
    }
    if (start < t.text.size()) out.push_back({t.text.substr(start), t.column + start});
  }
  return out;
}

}  // namespace

FD parse_fd(std::string_view text) {
  const auto tokens = split_arrows(tokenize(strip_comment(text)));
  if (tokens.empty()) throw ParseError(1, 1, "empty dependency");
  return parse_fd_tokens(tokens, 1);
}

std::vector<FD> parse_fd_document(std::string_view text) {
  std::vector<FD> out;
  std::set<FD> seen;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tokens = split_arrows(tokenize(strip_comment(lines[n])));
    if (tokens.empty()) continue;
    FD fd = parse_fd_tokens(tokens, n + 1);
    if (seen.insert(fd).second) out.push_back(std::move(fd));
  }
  return out;
}

std::string serialize_fds(const std::vector<FD>& fds) {
  std::string out;
  for (const auto& fd : fds) {
    out += fd.is_cd() ? "cd " + join(fd.lhs) : fd.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace ctxfam
