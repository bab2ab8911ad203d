#pragma once

#include <functional>
#include <string>

#include "nmifc/ast.hpp"
#include "nmifc/lattice.hpp"

namespace nmifc {

/// An upward-closed set of labels, given intensionally by a membership
/// predicate. Parsed programs may reference a high set by name alone
/// (unresolved); the harness supplies the predicate before type checking or
/// evaluating brackets.
class HighSet {
 public:
  explicit HighSet(std::string name) : name_(std::move(name)) {}
  HighSet(std::string name, std::function<bool(const PrincipalPtr&)> member)
      : name_(std::move(name)), member_(std::move(member)) {}

  const std::string& name() const { return name_; }
  bool resolved() const { return static_cast<bool>(member_); }

  bool member(const PrincipalPtr& l) const {
    if (!member_) throw std::logic_error("high set '" + name_ + "' has no membership predicate");
    return member_(l);
  }

  /// Same name bound to a predicate.
  HighSetPtr with_member(std::function<bool(const PrincipalPtr&)> member) const {
    return std::make_shared<HighSet>(name_, std::move(member));
  }

 private:
  std::string name_;
  std::function<bool(const PrincipalPtr&)> member_;
};

/// Upward closure of finitely many generator labels: member(l) iff some
/// generator flows to l.
HighSetPtr generated_high_set(std::string name, const DelegationSet& d,
                              std::vector<PrincipalPtr> generators);

/// Rebinds every high set named in `names` throughout the term to `h`
/// (brackets and holes); other names are left alone.
ExprPtr resolve_high_sets(const ExprPtr& e, const std::string& name, const HighSetPtr& h);

/// True when the term contains a bracket or hole whose high set lacks a
/// predicate.
bool has_unresolved_high_sets(const ExprPtr& e);

}  // namespace nmifc
