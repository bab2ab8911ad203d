#include "nmifc/subst.hpp"

#include <map>

#include "nmifc/highset.hpp"

namespace nmifc {

namespace {

// Shared machinery for term and type substitution: when a binder would
// capture a free name of the payload, the binder is renamed first.

struct TermSubst {
  const std::string& x;
  const ExprPtr& v;
  std::set<std::string> fv_v;

  TermSubst(const std::string& x_, const ExprPtr& v_) : x(x_), v(v_) { fv_v = free_vars(*v_); }

  ExprPtr go(const ExprPtr& e) {
    switch (e->kind()) {
      case Expr::Kind::var:
        return e->name() == x ? v : e;
      case Expr::Kind::unit:
      case Expr::Kind::hole:
        return e;
      case Expr::Kind::pair:
        return Expr::pair(go(e->a()), go(e->b()), e->pos());
      case Expr::Kind::inj:
        return Expr::inj(e->index(), e->type(), go(e->a()), e->pos());
      case Expr::Kind::lam: {
        auto [binder, body] = under_binder(e->name(), e->a());
        if (binder == e->name() && body == e->a()) return e;
        return Expr::lam(binder, e->type(), e->label(), body, e->pos());
      }
      case Expr::Kind::tlam: {
        // Type binders cannot capture term variables; recurse directly.
        return Expr::tlam(e->name(), e->label(), go(e->a()), e->pos());
      }
      case Expr::Kind::app:
        return Expr::app(go(e->a()), go(e->b()), e->pos());
      case Expr::Kind::tapp:
        return Expr::tapp(go(e->a()), e->type(), e->pos());
      case Expr::Kind::proj:
        return Expr::proj(e->index(), go(e->a()), e->pos());
      case Expr::Kind::case_: {
        ExprPtr scrut = go(e->a());
        auto [b1, body1] = under_binder(e->name(), e->b());
        auto [b2, body2] = under_binder(e->name2(), e->c());
        return Expr::case_(scrut, b1, body1, b2, body2, e->pos());
      }
      case Expr::Kind::unitm:
        return Expr::unitm(e->label(), go(e->a()), e->pos());
      case Expr::Kind::vunitm:
        return Expr::vunitm(e->label(), go(e->a()), e->pos());
      case Expr::Kind::bindm: {
        ExprPtr rhs = go(e->a());
        auto [binder, body] = under_binder(e->name(), e->b());
        return Expr::bindm(binder, rhs, body, e->pos());
      }
      case Expr::Kind::decl:
        return Expr::decl(go(e->a()), e->label(), e->pos());
      case Expr::Kind::endorse:
        return Expr::endorse(go(e->a()), e->label(), e->pos());
      case Expr::Kind::bracket:
        return Expr::bracket(go(e->a()), e->high(), e->label(), e->pos());
    }
    return e;
  }

 private:
  // Substitute under one binder, renaming it if it captures.
  std::pair<std::string, ExprPtr> under_binder(const std::string& binder, const ExprPtr& body) {
    if (binder == x) return {binder, body};  // shadowed
    if (fv_v.count(binder) && free_vars(*body).count(x)) {
      std::set<std::string> used;
      all_names(*body, used);
      used.insert(fv_v.begin(), fv_v.end());
      used.insert(x);
      std::string fresh = fresh_name(binder, used);
      ExprPtr renamed = substitute(body, binder, Expr::var(fresh));
      return {fresh, go(renamed)};
    }
    return {binder, go(body)};
  }
};

struct TypeSubst {
  const std::string& X;
  const TypePtr& ty;
  std::set<std::string> fv_ty;

  TypeSubst(const std::string& X_, const TypePtr& ty_) : X(X_), ty(ty_) {
    fv_ty = free_type_vars(*ty_);
  }

  TypePtr go(const TypePtr& t) {
    if (!t) return t;
    switch (t->kind()) {
      case Type::Kind::unit:
        return t;
      case Type::Kind::var:
        return t->name() == X ? ty : t;
      case Type::Kind::sum:
        return Type::sum(go(t->lhs()), go(t->rhs()));
      case Type::Kind::prod:
        return Type::prod(go(t->lhs()), go(t->rhs()));
      case Type::Kind::fn:
        return Type::fn(go(t->lhs()), t->label(), go(t->rhs()));
      case Type::Kind::forall: {
        if (t->name() == X) return t;
        if (fv_ty.count(t->name()) && free_type_vars(*t->rhs()).count(X)) {
          std::set<std::string> used;
          all_names(*t->rhs(), used);
          used.insert(fv_ty.begin(), fv_ty.end());
          used.insert(X);
          std::string fresh = fresh_name(t->name(), used);
          TypePtr renamed = substitute_type(t->rhs(), t->name(), Type::var(fresh));
          return Type::forall(fresh, t->label(), go(renamed));
        }
        return Type::forall(t->name(), t->label(), go(t->rhs()));
      }
      case Type::Kind::says:
        return Type::says(t->label(), go(t->rhs()));
    }
    return t;
  }

  ExprPtr go_expr(const ExprPtr& e) {
    switch (e->kind()) {
      case Expr::Kind::var:
      case Expr::Kind::unit:
        return e;
      case Expr::Kind::pair:
        return Expr::pair(go_expr(e->a()), go_expr(e->b()), e->pos());
      case Expr::Kind::inj:
        return Expr::inj(e->index(), go(e->type()), go_expr(e->a()), e->pos());
      case Expr::Kind::lam:
        return Expr::lam(e->name(), go(e->type()), e->label(), go_expr(e->a()), e->pos());
      case Expr::Kind::tlam: {
        if (e->name() == X) return e;
        if (fv_ty.count(e->name()) && free_type_vars_expr(*e->a()).count(X)) {
          std::set<std::string> used;
          all_names(*e->a(), used);
          used.insert(fv_ty.begin(), fv_ty.end());
          used.insert(X);
          std::string fresh = fresh_name(e->name(), used);
          ExprPtr renamed = substitute_type_expr(e->a(), e->name(), Type::var(fresh));
          return Expr::tlam(fresh, e->label(), go_expr(renamed), e->pos());
        }
        return Expr::tlam(e->name(), e->label(), go_expr(e->a()), e->pos());
      }
      case Expr::Kind::app:
        return Expr::app(go_expr(e->a()), go_expr(e->b()), e->pos());
      case Expr::Kind::tapp:
        return Expr::tapp(go_expr(e->a()), go(e->type()), e->pos());
      case Expr::Kind::proj:
        return Expr::proj(e->index(), go_expr(e->a()), e->pos());
      case Expr::Kind::case_:
        return Expr::case_(go_expr(e->a()), e->name(), go_expr(e->b()), e->name2(),
                           go_expr(e->c()), e->pos());
      case Expr::Kind::unitm:
        return Expr::unitm(e->label(), go_expr(e->a()), e->pos());
      case Expr::Kind::vunitm:
        return Expr::vunitm(e->label(), go_expr(e->a()), e->pos());
      case Expr::Kind::bindm:
        return Expr::bindm(e->name(), go_expr(e->a()), go_expr(e->b()), e->pos());
      case Expr::Kind::decl:
        return Expr::decl(go_expr(e->a()), e->label(), e->pos());
      case Expr::Kind::endorse:
        return Expr::endorse(go_expr(e->a()), e->label(), e->pos());
      case Expr::Kind::bracket:
        return Expr::bracket(go_expr(e->a()), e->high(), e->label(), e->pos());
      case Expr::Kind::hole:
        return Expr::hole(e->index(), e->high(), go(e->type()), e->pos());
    }
    return e;
  }
};

using Pairing = std::map<std::string, std::string>;

bool alpha_type(const TypePtr& a, const TypePtr& b, Pairing& ab, Pairing& ba) {
  if (!a || !b) return !a && !b;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Type::Kind::unit:
      return true;
    case Type::Kind::var: {
      auto ia = ab.find(a->name());
      auto ib = ba.find(b->name());
      if (ia == ab.end() && ib == ba.end()) return a->name() == b->name();  // both free
      return ia != ab.end() && ib != ba.end() && ia->second == b->name() &&
             ib->second == a->name();
    }
    case Type::Kind::sum:
    case Type::Kind::prod:
      return alpha_type(a->lhs(), b->lhs(), ab, ba) && alpha_type(a->rhs(), b->rhs(), ab, ba);
    case Type::Kind::fn:
      return same_tree(*a->label(), *b->label()) && alpha_type(a->lhs(), b->lhs(), ab, ba) &&
             alpha_type(a->rhs(), b->rhs(), ab, ba);
    case Type::Kind::forall: {
      if (!same_tree(*a->label(), *b->label())) return false;
      Pairing ab2 = ab, ba2 = ba;
      ab2[a->name()] = b->name();
      ba2[b->name()] = a->name();
      return alpha_type(a->rhs(), b->rhs(), ab2, ba2);
    }
    case Type::Kind::says:
      return same_tree(*a->label(), *b->label()) && alpha_type(a->rhs(), b->rhs(), ab, ba);
  }
  return false;
}

bool alpha_expr(const ExprPtr& a, const ExprPtr& b, Pairing& ab, Pairing& ba, Pairing& tab,
                Pairing& tba) {
  if (a->kind() != b->kind()) return false;
  auto labels_eq = [&] {
    if (!a->label() || !b->label()) return !a->label() && !b->label();
    return same_tree(*a->label(), *b->label());
  };
  switch (a->kind()) {
    case Expr::Kind::var: {
      auto ia = ab.find(a->name());
      auto ib = ba.find(b->name());
      if (ia == ab.end() && ib == ba.end()) return a->name() == b->name();
      return ia != ab.end() && ib != ba.end() && ia->second == b->name() &&
             ib->second == a->name();
    }
    case Expr::Kind::unit:
      return true;
    case Expr::Kind::pair:
    case Expr::Kind::app:
      return alpha_expr(a->a(), b->a(), ab, ba, tab, tba) &&
             alpha_expr(a->b(), b->b(), ab, ba, tab, tba);
    case Expr::Kind::inj:
      return a->index() == b->index() && alpha_type(a->type(), b->type(), tab, tba) &&
             alpha_expr(a->a(), b->a(), ab, ba, tab, tba);
    case Expr::Kind::lam: {
      if (!labels_eq() || !alpha_type(a->type(), b->type(), tab, tba)) return false;
      Pairing ab2 = ab, ba2 = ba;
      ab2[a->name()] = b->name();
      ba2[b->name()] = a->name();
      return alpha_expr(a->a(), b->a(), ab2, ba2, tab, tba);
    }
    case Expr::Kind::tlam: {
      if (!labels_eq()) return false;
      Pairing tab2 = tab, tba2 = tba;
      tab2[a->name()] = b->name();
      tba2[b->name()] = a->name();
      return alpha_expr(a->a(), b->a(), ab, ba, tab2, tba2);
    }
    case Expr::Kind::tapp:
      return alpha_type(a->type(), b->type(), tab, tba) &&
             alpha_expr(a->a(), b->a(), ab, ba, tab, tba);
    case Expr::Kind::proj:
      return a->index() == b->index() && alpha_expr(a->a(), b->a(), ab, ba, tab, tba);
    case Expr::Kind::case_: {
      if (!alpha_expr(a->a(), b->a(), ab, ba, tab, tba)) return false;
      Pairing ab1 = ab, ba1 = ba;
      ab1[a->name()] = b->name();
      ba1[b->name()] = a->name();
      if (!alpha_expr(a->b(), b->b(), ab1, ba1, tab, tba)) return false;
      Pairing ab2 = ab, ba2 = ba;
      ab2[a->name2()] = b->name2();
      ba2[b->name2()] = a->name2();
      return alpha_expr(a->c(), b->c(), ab2, ba2, tab, tba);
    }
    case Expr::Kind::unitm:
    case Expr::Kind::vunitm:
    case Expr::Kind::decl:
    case Expr::Kind::endorse:
      return labels_eq() && alpha_expr(a->a(), b->a(), ab, ba, tab, tba);
    case Expr::Kind::bindm: {
      if (!alpha_expr(a->a(), b->a(), ab, ba, tab, tba)) return false;
      Pairing ab2 = ab, ba2 = ba;
      ab2[a->name()] = b->name();
      ba2[b->name()] = a->name();
      return alpha_expr(a->b(), b->b(), ab2, ba2, tab, tba);
    }
    case Expr::Kind::bracket:
      // pc hints are evaluation bookkeeping, not syntax.
      return a->high()->name() == b->high()->name() &&
             alpha_expr(a->a(), b->a(), ab, ba, tab, tba);
    case Expr::Kind::hole:
      return a->index() == b->index() && a->high()->name() == b->high()->name() &&
             alpha_type(a->type(), b->type(), tab, tba);
  }
  return false;
}

}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::string& x, const ExprPtr& v) {
  TermSubst s(x, v);
  return s.go(e);
}

TypePtr substitute_type(const TypePtr& t, const std::string& X, const TypePtr& ty) {
  TypeSubst s(X, ty);
  return s.go(t);
}

ExprPtr substitute_type_expr(const ExprPtr& e, const std::string& X, const TypePtr& ty) {
  TypeSubst s(X, ty);
  return s.go_expr(e);
}

bool alpha_equivalent(const ExprPtr& a, const ExprPtr& b) {
  Pairing ab, ba, tab, tba;
  return alpha_expr(a, b, ab, ba, tab, tba);
}

bool alpha_equivalent_type(const TypePtr& a, const TypePtr& b) {
  Pairing ab, ba;
  return alpha_type(a, b, ab, ba);
}

bool same_type_tree(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind() != b->kind()) return false;
  if (a->name() != b->name()) return false;
  if (!!a->label() != !!b->label()) return false;
  if (a->label() && !same_tree(*a->label(), *b->label())) return false;
  return same_type_tree(a->lhs(), b->lhs()) && same_type_tree(a->rhs(), b->rhs());
}

}  // namespace nmifc
