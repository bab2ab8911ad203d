#pragma once

#include <memory>
#include <set>
#include <string>

#include "nmifc/principal.hpp"

namespace nmifc {

class HighSet;
using HighSetPtr = std::shared_ptr<const HighSet>;

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// Types: unit, type variables, sums, products, pc-annotated functions,
/// type quantification, and labeled monadic types `says[l] t`.
class Type {
 public:
  enum class Kind { unit, var, sum, prod, fn, forall, says };

  static TypePtr unit();
  static TypePtr var(std::string name);
  static TypePtr sum(TypePtr l, TypePtr r);
  static TypePtr prod(TypePtr l, TypePtr r);
  static TypePtr fn(TypePtr arg, PrincipalPtr pc, TypePtr res);
  static TypePtr forall(std::string binder, PrincipalPtr pc, TypePtr body);
  static TypePtr says(PrincipalPtr label, TypePtr body);

  Kind kind() const { return kind_; }
  /// Variable name, or the binder of a forall.
  const std::string& name() const { return name_; }
  /// Left component of sum/prod, or the argument type of fn.
  const TypePtr& lhs() const { return lhs_; }
  /// Right component of sum/prod, result of fn, body of forall/says.
  const TypePtr& rhs() const { return rhs_; }
  /// pc of fn/forall, or the says label.
  const PrincipalPtr& label() const { return label_; }

 private:
  Type(Kind k, std::string name, TypePtr l, TypePtr r, PrincipalPtr lab)
      : kind_(k), name_(std::move(name)), lhs_(std::move(l)), rhs_(std::move(r)),
        label_(std::move(lab)) {}

  Kind kind_;
  std::string name_;
  TypePtr lhs_, rhs_;
  PrincipalPtr label_;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expressions of the full language, including the runtime-only protected
/// value form (vunitm), instrumentation brackets, and adversary holes.
class Expr {
 public:
  enum class Kind {
    var,      // x
    unit,     // ()
    pair,     // <a, b>
    inj,      // inj1/inj2 [annot] a
    lam,      // lam (x : type) [label] . a
    tlam,     // tlam X [label] . a
    app,      // a b
    tapp,     // a [type]
    proj,     // proj1/proj2 a
    case_,    // case a of inj1 x . b | inj2 y . c
    unitm,    // eta[label] a
    vunitm,   // etav[label] a       (runtime protected value)
    bindm,    // bind x = a in b
    decl,     // decl a to label
    endorse,  // endorse a to label
    bracket,  // [[a : H]]           (harness instrumentation)
    hole      // [hole index : H] or [hole index : H : type]
  };

  static ExprPtr var(std::string name, std::size_t pos = 0);
  static ExprPtr unit(std::size_t pos = 0);
  static ExprPtr pair(ExprPtr a, ExprPtr b, std::size_t pos = 0);
  /// index is 1 or 2; annot, when present, is the full sum type.
  static ExprPtr inj(int index, TypePtr annot, ExprPtr a, std::size_t pos = 0);
  static ExprPtr lam(std::string binder, TypePtr ty, PrincipalPtr pc, ExprPtr body,
                     std::size_t pos = 0);
  static ExprPtr tlam(std::string binder, PrincipalPtr pc, ExprPtr body, std::size_t pos = 0);
  static ExprPtr app(ExprPtr f, ExprPtr arg, std::size_t pos = 0);
  static ExprPtr tapp(ExprPtr f, TypePtr ty, std::size_t pos = 0);
  static ExprPtr proj(int index, ExprPtr a, std::size_t pos = 0);
  static ExprPtr case_(ExprPtr scrut, std::string binder1, ExprPtr body1, std::string binder2,
                       ExprPtr body2, std::size_t pos = 0);
  static ExprPtr unitm(PrincipalPtr label, ExprPtr a, std::size_t pos = 0);
  static ExprPtr vunitm(PrincipalPtr label, ExprPtr v, std::size_t pos = 0);
  static ExprPtr bindm(std::string binder, ExprPtr rhs, ExprPtr body, std::size_t pos = 0);
  static ExprPtr decl(ExprPtr a, PrincipalPtr to, std::size_t pos = 0);
  static ExprPtr endorse(ExprPtr a, PrincipalPtr to, std::size_t pos = 0);
  /// pc_hint records a pc the bracket body is known to type at (joined with
  /// the ambient pc when checking); evaluation maintains it across bracket
  /// rewrites. May be null for parsed terms.
  static ExprPtr bracket(ExprPtr body, HighSetPtr high, PrincipalPtr pc_hint = nullptr,
                         std::size_t pos = 0);
  static ExprPtr hole(int index, HighSetPtr high, TypePtr ascription = nullptr,
                      std::size_t pos = 0);

  Kind kind() const { return kind_; }
  std::size_t pos() const { return pos_; }
  /// var name; binder of lam/tlam/bindm; first case binder.
  const std::string& name() const { return name_; }
  /// Second case binder.
  const std::string& name2() const { return name2_; }
  /// 1 or 2 for inj/proj; hole index.
  int index() const { return index_; }
  /// lam annotation, tapp argument, inj annotation (may be null), hole
  /// ascription (may be null).
  const TypePtr& type() const { return type_; }
  /// lam/tlam pc, unitm/vunitm label, decl/endorse target, bracket pc hint.
  const PrincipalPtr& label() const { return label_; }
  /// Principal subexpression: pair lhs, inj/proj/unitm/vunitm/decl/endorse
  /// body, lam/tlam body, app/tapp function, case scrutinee, bindm rhs,
  /// bracket body.
  const ExprPtr& a() const { return a_; }
  /// pair rhs, app argument, case branch 1, bindm body.
  const ExprPtr& b() const { return b_; }
  /// case branch 2.
  const ExprPtr& c() const { return c_; }
  /// bracket/hole high set.
  const HighSetPtr& high() const { return high_; }

 private:
  Expr(Kind k, std::size_t pos) : kind_(k), pos_(pos) {}
  static std::shared_ptr<Expr> alloc(Kind k, std::size_t pos);

  Kind kind_;
  std::size_t pos_;
  std::string name_, name2_;
  int index_ = 0;
  TypePtr type_;
  PrincipalPtr label_;
  ExprPtr a_, b_, c_;
  HighSetPtr high_;
};

/// Value predicate: unit, lambdas, pairs/injections of values, protected
/// values with value payloads, and bracketed values.
bool is_value(const Expr& e);
bool is_value(const ExprPtr& e);

/// Free term variables / free type variables.
std::set<std::string> free_vars(const Expr& e);
std::set<std::string> free_type_vars_expr(const Expr& e);
std::set<std::string> free_type_vars(const Type& t);

/// Collects every identifier occurring in the term (free, bound, or type
/// variable); used to pick fresh names.
void all_names(const Expr& e, std::set<std::string>& out);
void all_names(const Type& t, std::set<std::string>& out);

/// A name based on `base` not present in `used`; inserts the result.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace nmifc
