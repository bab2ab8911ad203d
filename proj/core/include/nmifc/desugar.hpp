#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nmifc/typecheck.hpp"

namespace nmifc {

class DesugarError : public std::runtime_error {
 public:
  explicit DesugarError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One hole occurrence after desugaring. The hole became
///   bind yp = y in (yp z1 ... zk)
/// with y left free; substitute an attack value for y to close it.
struct HoleSite {
  int index;         // surface index of the hole
  std::string var;   // the fresh free variable y
  PrincipalPtr pc;   // pc at the hole (the attack's pc)
  TypePtr type;      // the hole's ascribed type
  TypePtr var_type;  // type of y: says(pc, tz1 -[pc]-> ... -> type)
  std::vector<std::pair<std::string, TypePtr>> captured;  // the zs, outermost first
  HighSetPtr high;
  TypingCtx ctx;  // context at the hole, pc included; types attacks
};

struct Desugared {
  ExprPtr expr;  // hole-free; each site's var occurs free
  std::vector<HoleSite> holes;  // ordered by surface index 1..n
};

/// Replaces every hole with the bind-and-apply form, recording one site per
/// hole. ctx supplies the program's inputs and top-level pc; every variable
/// in scope at a hole (inputs included) is captured. Hole indices must be
/// exactly 1..n with no repeats, every hole needs a type ascription, and
/// holes inside the program must type (their enclosing binds are typed to
/// find the pc they run at).
Desugared desugar_holes(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e);

/// Builds the substitution value for one site from an attack expression:
///   w = etav[pc] (lam (z1 : tz1) [pc] . ... lam (zk : tzk) [pc] . a)
/// after checking the attack types at the site's context with the hole's
/// type.
ExprPtr synthesize_attack_value(const DelegationSet& d, const HoleSite& site, const ExprPtr& a);

/// desugar_holes plus substitution of every synthesized value; attacks[i]
/// fills the hole with surface index i+1.
ExprPtr fill_holes(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e,
                   const std::vector<ExprPtr>& attacks);

}  // namespace nmifc
