#pragma once

#include "nmifc/ast.hpp"

namespace nmifc {

/// Capture-avoiding term substitution e[x := v].
ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& v);

/// Type substitution t[X := ty] and its lifting over terms.
TypePtr substitute_type(const TypePtr& t, const std::string& X, const TypePtr& ty);
ExprPtr substitute_type_expr(const ExprPtr& e, const std::string& X, const TypePtr& ty);

/// Alpha equivalence. High sets compare by name; pc hints are ignored.
bool alpha_equivalent(const ExprPtr& a, const ExprPtr& b);
bool alpha_equivalent_type(const TypePtr& a, const TypePtr& b);

/// Structural equality of types with principals compared by tree shape and
/// bound type variables compared up to renaming (used for tests; the checker
/// itself compares labels by mutual acts-for).
bool same_type_tree(const TypePtr& a, const TypePtr& b);

}  // namespace nmifc
