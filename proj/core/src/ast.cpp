#include "nmifc/ast.hpp"

namespace nmifc {

TypePtr Type::unit() {
  static const TypePtr u(new Type(Kind::unit, "", nullptr, nullptr, nullptr));
  return u;
}

TypePtr Type::var(std::string name) {
  return TypePtr(new Type(Kind::var, std::move(name), nullptr, nullptr, nullptr));
}

TypePtr Type::sum(TypePtr l, TypePtr r) {
  return TypePtr(new Type(Kind::sum, "", std::move(l), std::move(r), nullptr));
}

TypePtr Type::prod(TypePtr l, TypePtr r) {
  return TypePtr(new Type(Kind::prod, "", std::move(l), std::move(r), nullptr));
}

TypePtr Type::fn(TypePtr arg, PrincipalPtr pc, TypePtr res) {
  return TypePtr(new Type(Kind::fn, "", std::move(arg), std::move(res), std::move(pc)));
}

TypePtr Type::forall(std::string binder, PrincipalPtr pc, TypePtr body) {
  return TypePtr(new Type(Kind::forall, std::move(binder), nullptr, std::move(body), std::move(pc)));
}

TypePtr Type::says(PrincipalPtr label, TypePtr body) {
  return TypePtr(new Type(Kind::says, "", nullptr, std::move(body), std::move(label)));
}

std::shared_ptr<Expr> Expr::alloc(Kind k, std::size_t pos) {
  return std::shared_ptr<Expr>(new Expr(k, pos));
}

ExprPtr Expr::var(std::string name, std::size_t pos) {
  auto e = alloc(Kind::var, pos);
  e->name_ = std::move(name);
  return e;
}

ExprPtr Expr::unit(std::size_t pos) { return alloc(Kind::unit, pos); }

ExprPtr Expr::pair(ExprPtr a, ExprPtr b, std::size_t pos) {
  auto e = alloc(Kind::pair, pos);
  e->a_ = std::move(a);
  e->b_ = std::move(b);
  return e;
}

ExprPtr Expr::inj(int index, TypePtr annot, ExprPtr a, std::size_t pos) {
  auto e = alloc(Kind::inj, pos);
  e->index_ = index;
  e->type_ = std::move(annot);
  e->a_ = std::move(a);
  return e;
}

ExprPtr Expr::lam(std::string binder, TypePtr ty, PrincipalPtr pc, ExprPtr body, std::size_t pos) {
  auto e = alloc(Kind::lam, pos);
  e->name_ = std::move(binder);
  e->type_ = std::move(ty);
  e->label_ = std::move(pc);
  e->a_ = std::move(body);
  return e;
}

ExprPtr Expr::tlam(std::string binder, PrincipalPtr pc, ExprPtr body, std::size_t pos) {
  auto e = alloc(Kind::tlam, pos);
  e->name_ = std::move(binder);
  e->label_ = std::move(pc);
  e->a_ = std::move(body);
  return e;
}

ExprPtr Expr::app(ExprPtr f, ExprPtr arg, std::size_t pos) {
  auto e = alloc(Kind::app, pos);
  e->a_ = std::move(f);
  e->b_ = std::move(arg);
  return e;
}

ExprPtr Expr::tapp(ExprPtr f, TypePtr ty, std::size_t pos) {
  auto e = alloc(Kind::tapp, pos);
  e->a_ = std::move(f);
  e->type_ = std::move(ty);
  return e;
}

ExprPtr Expr::proj(int index, ExprPtr a, std::size_t pos) {
  auto e = alloc(Kind::proj, pos);
  e->index_ = index;
  e->a_ = std::move(a);
  return e;
}

ExprPtr Expr::case_(ExprPtr scrut, std::string binder1, ExprPtr body1, std::string binder2,
                    ExprPtr body2, std::size_t pos) {
  auto e = alloc(Kind::case_, pos);
  e->a_ = std::move(scrut);
  e->name_ = std::move(binder1);
  e->b_ = std::move(body1);
  e->name2_ = std::move(binder2);
  e->c_ = std::move(body2);
  return e;
}

ExprPtr Expr::unitm(PrincipalPtr label, ExprPtr a, std::size_t pos) {
  auto e = alloc(Kind::unitm, pos);
  e->label_ = std::move(label);
  e->a_ = std::move(a);
  return e;
}

ExprPtr Expr::vunitm(PrincipalPtr label, ExprPtr v, std::size_t pos) {
  auto e = alloc(Kind::vunitm, pos);
  e->label_ = std::move(label);
  e->a_ = std::move(v);
  return e;
}

ExprPtr Expr::bindm(std::string binder, ExprPtr rhs, ExprPtr body, std::size_t pos) {
  auto e = alloc(Kind::bindm, pos);
  e->name_ = std::move(binder);
  e->a_ = std::move(rhs);
  e->b_ = std::move(body);
  return e;
}

ExprPtr Expr::decl(ExprPtr a, PrincipalPtr to, std::size_t pos) {
  auto e = alloc(Kind::decl, pos);
  e->a_ = std::move(a);
  e->label_ = std::move(to);
  return e;
}

ExprPtr Expr::endorse(ExprPtr a, PrincipalPtr to, std::size_t pos) {
  auto e = alloc(Kind::endorse, pos);
  e->a_ = std::move(a);
  e->label_ = std::move(to);
  return e;
}

ExprPtr Expr::bracket(ExprPtr body, HighSetPtr high, PrincipalPtr pc_hint, std::size_t pos) {
  auto e = alloc(Kind::bracket, pos);
  e->a_ = std::move(body);
  e->high_ = std::move(high);
  e->label_ = std::move(pc_hint);
  return e;
}

ExprPtr Expr::hole(int index, HighSetPtr high, TypePtr ascription, std::size_t pos) {
  auto e = alloc(Kind::hole, pos);
  e->index_ = index;
  e->high_ = std::move(high);
  e->type_ = std::move(ascription);
  return e;
}

bool is_value(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::unit:
    case Expr::Kind::lam:
    case Expr::Kind::tlam:
      return true;
    case Expr::Kind::pair:
      return is_value(*e.a()) && is_value(*e.b());
    case Expr::Kind::inj:
    case Expr::Kind::vunitm:
    case Expr::Kind::bracket:
      return is_value(*e.a());
    default:
      return false;
  }
}

bool is_value(const ExprPtr& e) { return is_value(*e); }

namespace {

void free_vars_rec(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::var:
      if (!bound.count(e.name())) out.insert(e.name());
      return;
    case Expr::Kind::unit:
    case Expr::Kind::hole:
      return;
    case Expr::Kind::lam:
    case Expr::Kind::tlam:
    case Expr::Kind::bindm: {
      if (e.kind() == Expr::Kind::bindm) free_vars_rec(*e.a(), bound, out);
      const ExprPtr& body = e.kind() == Expr::Kind::bindm ? e.b() : e.a();
      const bool fresh = bound.insert(e.name()).second;
      // Type binders live in a separate namespace, but tracking them in the
      // same bound set is harmless for term variables.
      free_vars_rec(*body, bound, out);
      if (fresh) bound.erase(e.name());
      return;
    }
    case Expr::Kind::case_: {
      free_vars_rec(*e.a(), bound, out);
      const bool f1 = bound.insert(e.name()).second;
      free_vars_rec(*e.b(), bound, out);
      if (f1) bound.erase(e.name());
      const bool f2 = bound.insert(e.name2()).second;
      free_vars_rec(*e.c(), bound, out);
      if (f2) bound.erase(e.name2());
      return;
    }
    default:
      if (e.a()) free_vars_rec(*e.a(), bound, out);
      if (e.b()) free_vars_rec(*e.b(), bound, out);
      if (e.c()) free_vars_rec(*e.c(), bound, out);
      return;
  }
}

void free_tyvars_type(const Type& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Type::Kind::var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Type::Kind::forall: {
      const bool fresh = bound.insert(t.name()).second;
      free_tyvars_type(*t.rhs(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    default:
      if (t.lhs()) free_tyvars_type(*t.lhs(), bound, out);
      if (t.rhs()) free_tyvars_type(*t.rhs(), bound, out);
      return;
  }
}

void free_tyvars_expr(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  if (e.kind() == Expr::Kind::tlam) {
    const bool fresh = bound.insert(e.name()).second;
    free_tyvars_expr(*e.a(), bound, out);
    if (fresh) bound.erase(e.name());
    return;
  }
  if (e.type()) free_tyvars_type(*e.type(), bound, out);
  if (e.a()) free_tyvars_expr(*e.a(), bound, out);
  if (e.b()) free_tyvars_expr(*e.b(), bound, out);
  if (e.c()) free_tyvars_expr(*e.c(), bound, out);
}

void names_of_principal(const Principal& p, std::set<std::string>& out) {
  if (p.kind() == Principal::Kind::atom) out.insert(p.name());
  if (p.lhs()) names_of_principal(*p.lhs(), out);
  if (p.rhs()) names_of_principal(*p.rhs(), out);
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  free_vars_rec(e, bound, out);
  return out;
}

std::set<std::string> free_type_vars(const Type& t) {
  std::set<std::string> bound, out;
  free_tyvars_type(t, bound, out);
  return out;
}

std::set<std::string> free_type_vars_expr(const Expr& e) {
  std::set<std::string> bound, out;
  free_tyvars_expr(e, bound, out);
  return out;
}

void all_names(const Type& t, std::set<std::string>& out) {
  if (t.kind() == Type::Kind::var || t.kind() == Type::Kind::forall) out.insert(t.name());
  if (t.label()) names_of_principal(*t.label(), out);
  if (t.lhs()) all_names(*t.lhs(), out);
  if (t.rhs()) all_names(*t.rhs(), out);
}

void all_names(const Expr& e, std::set<std::string>& out) {
  if (!e.name().empty()) out.insert(e.name());
  if (!e.name2().empty()) out.insert(e.name2());
  if (e.type()) all_names(*e.type(), out);
  if (e.label()) names_of_principal(*e.label(), out);
  if (e.a()) all_names(*e.a(), out);
  if (e.b()) all_names(*e.b(), out);
  if (e.c()) all_names(*e.c(), out);
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (!used.count(base)) {
    used.insert(base);
    return base;
  }
  for (unsigned long k = 1;; k++) {
    std::string cand = base + "_" + std::to_string(k);
    if (!used.count(cand)) {
      used.insert(cand);
      return cand;
    }
  }
}

}  // namespace nmifc
