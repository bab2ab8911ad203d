#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nmifc/lattice.hpp"
#include "nmifc/syntax.hpp"

namespace nmifc {

enum class TypeErrorKind {
  UnboundVar,
  PcMismatch,
  ProtectFail,
  DeclPremise,
  EndorsePremise,
  Shape,
  HoleContext,
};

std::string type_error_kind_name(TypeErrorKind k);

/// Thrown by type_of on the first failing premise. The label fields are
/// filled for the downgrade rules (and for pc checks where they apply);
/// absent labels are null.
class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string premise, std::size_t pos,
            PrincipalPtr from = nullptr, PrincipalPtr to = nullptr, PrincipalPtr pc = nullptr)
      : std::runtime_error(type_error_kind_name(kind) + ": " + premise),
        kind_(kind),
        premise_(std::move(premise)),
        pos_(pos),
        from_(std::move(from)),
        to_(std::move(to)),
        pc_(std::move(pc)) {}

  TypeErrorKind kind() const { return kind_; }
  const std::string& premise() const { return premise_; }
  std::size_t pos() const { return pos_; }
  const PrincipalPtr& from() const { return from_; }
  const PrincipalPtr& to() const { return to_; }
  const PrincipalPtr& pc() const { return pc_; }

 private:
  TypeErrorKind kind_;
  std::string premise_;
  std::size_t pos_;
  PrincipalPtr from_, to_, pc_;
};

/// JSON diagnostic {kind, premise, labels{from,to,pc}, span{offset,line,col}}.
/// Line and column are 1-based, derived from the source the expression was
/// parsed from (pass the same text; an empty string yields line 1, col 1).
std::string type_error_json(const TypeError& err, const std::string& source);

/// Persistent typing context: ordered term bindings, type variables in scope,
/// and the program-counter label. Extension copies; binding a duplicate name
/// is a Shape error (parsing uniquifies binders, so this only fires on
/// hand-built ASTs).
class TypingCtx {
 public:
  explicit TypingCtx(PrincipalPtr pc) : pc_(std::move(pc)) {}

  const PrincipalPtr& pc() const { return pc_; }
  TypingCtx with_pc(PrincipalPtr pc) const;
  TypingCtx with_var(const std::string& name, TypePtr ty, std::size_t pos = 0) const;
  TypingCtx with_tyvar(const std::string& name, std::size_t pos = 0) const;

  const TypePtr* lookup(const std::string& name) const;
  bool has_tyvar(const std::string& name) const;
  const std::vector<std::pair<std::string, TypePtr>>& vars() const { return vars_; }

 private:
  PrincipalPtr pc_;
  std::vector<std::pair<std::string, TypePtr>> vars_;
  std::vector<std::string> tyvars_;
};

struct CheckOptions {
  /// Accept bracket and hole nodes (their high sets must be resolved).
  /// Ordinary checking rejects both as Shape errors.
  bool runtime_forms = false;
};

/// Structural type equality up to label equivalence under d (says labels and
/// function/forall pc annotations compared as mutual acts-for, binders up to
/// alpha).
bool type_equal(const DelegationSet& d, const TypePtr& a, const TypePtr& b);

/// The protection relation: unit is always protected, says(l2, t) is
/// protected by l when l flows to l2, products componentwise. Sums,
/// functions, quantified types, and type variables are never protected.
bool protects(const DelegationSet& d, const PrincipalPtr& l, const TypePtr& t);

/// Greatest label protecting t (the protecting set is downward closed in the
/// flow order, so one witness decides membership in any upward-closed set).
/// Null when no label protects t.
PrincipalPtr protection_witness(const TypePtr& t);

class HighSet;

/// True when some member of h protects t. Since h is upward closed it
/// suffices to test the greatest protecting label.
bool high_type(const HighSet& h, const TypePtr& t);

struct DowngradeCheck {
  bool ok = false;
  /// Schema of the first failing premise, in surface syntax (empty when ok):
  /// decl    "l'^<- = l^<-" | "pc <= l" | "l'^-> <= l^-> \/ view((l' \/ pc)^<-)"
  /// endorse "l'^-> = l^->" | "pc <= l" | "l'^<- <= l^<- \/ voice((l' \/ pc)^->)"
  std::string premise;
};

enum class DowngradeKind { decl, endorse };

/// Evaluates the three non-typing premises of the declassification or
/// endorsement rule in isolation; l_from is the label on the says type being
/// downgraded, l_to the target.
DowngradeCheck downgrade_ok(const DelegationSet& d, DowngradeKind kind, const PrincipalPtr& l_from,
                            const PrincipalPtr& l_to, const PrincipalPtr& pc);

/// Syntax-directed typing. Returns the unique type or throws TypeError with
/// the first failing premise.
TypePtr type_of(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e,
                const CheckOptions& opts = {});

}  // namespace nmifc
