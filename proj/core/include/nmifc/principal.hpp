#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace nmifc {

/// Security aspect selected by a projection: confidentiality (p^->) or
/// integrity (p^<-).
enum class Aspect { conf, integ };

Aspect opposite(Aspect a);

/// Short symbolic name for an aspect: "->" or "<-".
const char* aspect_arrow(Aspect a);

class Principal;
using PrincipalPtr = std::shared_ptr<const Principal>;

/// Immutable principal expression: atomic names, top, bot, aspect
/// projections, authority conjunction p&q / disjunction p|q, and the
/// information-flow join \/ and meet /\.
///
/// Semantic equality is decided by the lattice operations, never by tree
/// shape; nodes are freely shared.
class Principal {
 public:
  enum class Kind { atom, top, bot, proj, conj, disj, flow_join, flow_meet };

  static PrincipalPtr atom(std::string name);
  static PrincipalPtr top();
  static PrincipalPtr bot();
  static PrincipalPtr proj(PrincipalPtr p, Aspect a);
  static PrincipalPtr conj(PrincipalPtr l, PrincipalPtr r);
  static PrincipalPtr disj(PrincipalPtr l, PrincipalPtr r);
  static PrincipalPtr join(PrincipalPtr l, PrincipalPtr r);
  static PrincipalPtr meet(PrincipalPtr l, PrincipalPtr r);

  Kind kind() const { return kind_; }
  /// Atom name; valid only for Kind::atom.
  const std::string& name() const { return name_; }
  /// Projection aspect; valid only for Kind::proj.
  Aspect aspect() const { return aspect_; }
  /// Child of a projection, or left operand of a binary node.
  const PrincipalPtr& lhs() const { return lhs_; }
  /// Right operand of a binary node.
  const PrincipalPtr& rhs() const { return rhs_; }

  /// Number of nodes in the expression tree.
  std::size_t size() const;

 private:
  Principal(Kind k, std::string name, Aspect a, PrincipalPtr l, PrincipalPtr r)
      : kind_(k), name_(std::move(name)), aspect_(a), lhs_(std::move(l)), rhs_(std::move(r)) {}

  Kind kind_;
  std::string name_;
  Aspect aspect_ = Aspect::conf;
  PrincipalPtr lhs_, rhs_;
};

/// Canonical concrete syntax: atoms as identifiers, `top`, `bot`, postfix
/// `^->` / `^<-`, infix `&`, `|`, `\/`, `/\`; projection binds tightest, then
/// `&`, then `|`, then `\/` and `/\`.
std::string to_string(const Principal& p);
std::string to_string(const PrincipalPtr& p);

struct PrincipalParseError : std::runtime_error {
  PrincipalParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), pos(position) {}
  std::size_t pos;
};

/// Parses a whole string as a principal. Throws PrincipalParseError.
PrincipalPtr parse_principal(const std::string& text);

/// Parses the longest principal starting at `text[pos]`, advancing `pos` past
/// it (useful for query strings holding several principals in a row).
PrincipalPtr parse_principal_prefix(const std::string& text, std::size_t& pos);

/// Structural tree equality (not semantic equivalence).
bool same_tree(const Principal& a, const Principal& b);

}  // namespace nmifc
