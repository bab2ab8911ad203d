#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nmifc/ast.hpp"

namespace nmifc {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t line_, std::size_t col_, std::vector<std::string> exp)
      : std::runtime_error(std::move(msg)), line(line_), col(col_), expected(std::move(exp)) {}
  std::size_t line, col;  // 1-based
  std::vector<std::string> expected;
};

struct ParseOptions {
  /// Permit runtime-only forms in source: etav values and brackets.
  bool allow_runtime_forms = false;
};

ExprPtr parse_expr(const std::string& text, const ParseOptions& opts = {});
TypePtr parse_type(const std::string& text);

/// A program file: optional leading `#lattice <path>` / `#pc <principal>`
/// directives, then one expression.
struct Program {
  std::optional<std::string> lattice_path;
  PrincipalPtr pc;  // null if no #pc directive
  ExprPtr body;
};

Program parse_program(const std::string& text, const ParseOptions& opts = {});

std::string print_expr(const ExprPtr& e);
std::string print_type(const TypePtr& t);

/// JSON export of ASTs (schema in docs/ast-json.md).
std::string expr_to_json(const ExprPtr& e, bool pretty = false);
std::string type_to_json(const TypePtr& t, bool pretty = false);

}  // namespace nmifc
