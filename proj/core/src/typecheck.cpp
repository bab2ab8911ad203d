#include "nmifc/typecheck.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "nmifc/highset.hpp"
#include "nmifc/subst.hpp"

namespace nmifc {

std::string type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVar: return "UnboundVar";
    case TypeErrorKind::PcMismatch: return "PcMismatch";
    case TypeErrorKind::ProtectFail: return "ProtectFail";
    case TypeErrorKind::DeclPremise: return "DeclPremise";
    case TypeErrorKind::EndorsePremise: return "EndorsePremise";
    case TypeErrorKind::Shape: return "Shape";
    case TypeErrorKind::HoleContext: return "HoleContext";
  }
  return "?";
}

std::string type_error_json(const TypeError& err, const std::string& source) {
  nlohmann::json labels = {{"from", nullptr}, {"to", nullptr}, {"pc", nullptr}};
  if (err.from()) labels["from"] = to_string(*err.from());
  if (err.to()) labels["to"] = to_string(*err.to());
  if (err.pc()) labels["pc"] = to_string(*err.pc());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < err.pos() && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  nlohmann::json j = {{"kind", type_error_kind_name(err.kind())},
                      {"premise", err.premise()},
                      {"labels", labels},
                      {"span", {{"offset", err.pos()}, {"line", line}, {"col", col}}}};
  return j.dump();
}

TypingCtx TypingCtx::with_pc(PrincipalPtr pc) const {
  TypingCtx c = *this;
  c.pc_ = std::move(pc);
  return c;
}

TypingCtx TypingCtx::with_var(const std::string& name, TypePtr ty, std::size_t pos) const {
  if (lookup(name))
    throw TypeError(TypeErrorKind::Shape, "duplicate binder '" + name + "' in context", pos);
  TypingCtx c = *this;
  c.vars_.emplace_back(name, std::move(ty));
  return c;
}

TypingCtx TypingCtx::with_tyvar(const std::string& name, std::size_t pos) const {
  if (has_tyvar(name))
    throw TypeError(TypeErrorKind::Shape, "duplicate type binder '" + name + "' in context", pos);
  TypingCtx c = *this;
  c.tyvars_.push_back(name);
  return c;
}

const TypePtr* TypingCtx::lookup(const std::string& name) const {
  for (const auto& [n, t] : vars_)
    if (n == name) return &t;
  return nullptr;
}

bool TypingCtx::has_tyvar(const std::string& name) const {
  for (const auto& n : tyvars_)
    if (n == name) return true;
  return false;
}

namespace {

using Pairing = std::map<std::string, std::string>;

bool type_equal_rec(const DelegationSet& d, const TypePtr& a, const TypePtr& b, Pairing& ab,
                    Pairing& ba) {
  if (!a || !b) return !a && !b;
  if (a->kind() != b->kind()) return false;
  auto labels_eq = [&] { return equivalent(d, a->label(), b->label()); };
  switch (a->kind()) {
    case Type::Kind::unit:
      return true;
    case Type::Kind::var: {
      auto ia = ab.find(a->name());
      auto ib = ba.find(b->name());
      if (ia == ab.end() && ib == ba.end()) return a->name() == b->name();
      return ia != ab.end() && ib != ba.end() && ia->second == b->name() &&
             ib->second == a->name();
    }
    case Type::Kind::sum:
    case Type::Kind::prod:
      return type_equal_rec(d, a->lhs(), b->lhs(), ab, ba) &&
             type_equal_rec(d, a->rhs(), b->rhs(), ab, ba);
    case Type::Kind::fn:
      return labels_eq() && type_equal_rec(d, a->lhs(), b->lhs(), ab, ba) &&
             type_equal_rec(d, a->rhs(), b->rhs(), ab, ba);
    case Type::Kind::forall: {
      if (!labels_eq()) return false;
      Pairing ab2 = ab, ba2 = ba;
      ab2[a->name()] = b->name();
      ba2[b->name()] = a->name();
      return type_equal_rec(d, a->rhs(), b->rhs(), ab2, ba2);
    }
    case Type::Kind::says:
      return labels_eq() && type_equal_rec(d, a->rhs(), b->rhs(), ab, ba);
  }
  return false;
}

}  // namespace

bool type_equal(const DelegationSet& d, const TypePtr& a, const TypePtr& b) {
  Pairing ab, ba;
  return type_equal_rec(d, a, b, ab, ba);
}

bool protects(const DelegationSet& d, const PrincipalPtr& l, const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::unit:
      return true;
    case Type::Kind::says:
      return flows_to(d, l, t->label());
    case Type::Kind::prod:
      return protects(d, l, t->lhs()) && protects(d, l, t->rhs());
    default:
      return false;
  }
}

PrincipalPtr protection_witness(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::unit:
      // Every label protects unit; the greatest label in the flow order.
      return Principal::proj(Principal::top(), Aspect::conf);
    case Type::Kind::says:
      return t->label();
    case Type::Kind::prod: {
      PrincipalPtr w1 = protection_witness(t->lhs());
      PrincipalPtr w2 = protection_witness(t->rhs());
      if (!w1 || !w2) return nullptr;
      return flow_meet(w1, w2);
    }
    default:
      return nullptr;
  }
}

bool high_type(const HighSet& h, const TypePtr& t) {
  PrincipalPtr w = protection_witness(t);
  return w && h.member(w);
}

DowngradeCheck downgrade_ok(const DelegationSet& d, DowngradeKind kind, const PrincipalPtr& l_from,
                            const PrincipalPtr& l_to, const PrincipalPtr& pc) {
  const Aspect kept = kind == DowngradeKind::decl ? Aspect::integ : Aspect::conf;
  const Aspect moved = opposite(kept);
  if (!equivalent(d, project(l_from, kept), project(l_to, kept)))
    return {false, kind == DowngradeKind::decl ? "l'^<- = l^<-" : "l'^-> = l^->"};
  if (!flows_to(d, pc, l_to)) return {false, "pc <= l"};
  PrincipalPtr guard = project(flow_join(l_from, pc), kept);
  PrincipalPtr widened =
      flow_join(project(l_to, moved),
                kind == DowngradeKind::decl ? view(guard) : voice(guard));
  if (!flows_to(d, project(l_from, moved), widened))
    return {false, kind == DowngradeKind::decl ? "l'^-> <= l^-> \\/ view((l' \\/ pc)^<-)"
                                               : "l'^<- <= l^<- \\/ voice((l' \\/ pc)^->)"};
  return {true, ""};
}

namespace {

struct Checker {
  const DelegationSet& d;
  const CheckOptions& opts;

  [[noreturn]] void fail(TypeErrorKind k, std::string premise, const ExprPtr& e,
                         PrincipalPtr from = nullptr, PrincipalPtr to = nullptr,
                         PrincipalPtr pc = nullptr) {
    throw TypeError(k, std::move(premise), e->pos(), std::move(from), std::move(to),
                    std::move(pc));
  }

  void check_wf(const TypingCtx& ctx, const TypePtr& t, const ExprPtr& at) {
    if (!t) return;
    for (const std::string& X : free_type_vars(*t))
      if (!ctx.has_tyvar(X))
        fail(TypeErrorKind::UnboundVar, "type variable '" + X + "' is not in scope", at);
  }

  std::string show(const TypePtr& t) { return print_type(t); }
  std::string show(const PrincipalPtr& p) { return to_string(*p); }

  void require_flow(const TypingCtx& ctx, const PrincipalPtr& target, const char* what,
                    const ExprPtr& e) {
    if (!flows_to(d, ctx.pc(), target))
      fail(TypeErrorKind::PcMismatch,
           std::string(what) + " (pc = " + show(ctx.pc()) + ", label = " + show(target) + ")", e,
           nullptr, target, ctx.pc());
  }

  TypePtr go(const TypingCtx& ctx, const ExprPtr& e) {
    switch (e->kind()) {
      case Expr::Kind::var: {
        const TypePtr* t = ctx.lookup(e->name());
        if (!t) fail(TypeErrorKind::UnboundVar, "variable '" + e->name() + "' is not in scope", e);
        return *t;
      }
      case Expr::Kind::unit:
        return Type::unit();
      case Expr::Kind::pair:
        return Type::prod(go(ctx, e->a()), go(ctx, e->b()));
      case Expr::Kind::inj: {
        if (!e->type())
          fail(TypeErrorKind::Shape, "sum injection needs a sum-type annotation", e);
        check_wf(ctx, e->type(), e);
        if (e->type()->kind() != Type::Kind::sum)
          fail(TypeErrorKind::Shape, "injection annotation " + show(e->type()) + " is not a sum",
               e);
        TypePtr got = go(ctx, e->a());
        TypePtr want = e->index() == 1 ? e->type()->lhs() : e->type()->rhs();
        if (!type_equal(d, got, want))
          fail(TypeErrorKind::Shape, "injected value has type " + show(got) + ", summand needs " +
                                         show(want),
               e);
        return e->type();
      }
      case Expr::Kind::lam: {
        check_wf(ctx, e->type(), e);
        TypingCtx inner = ctx.with_pc(e->label()).with_var(e->name(), e->type(), e->pos());
        TypePtr body = go(inner, e->a());
        return Type::fn(e->type(), e->label(), body);
      }
      case Expr::Kind::tlam: {
        TypingCtx inner = ctx.with_pc(e->label()).with_tyvar(e->name(), e->pos());
        TypePtr body = go(inner, e->a());
        return Type::forall(e->name(), e->label(), body);
      }
      case Expr::Kind::app: {
        TypePtr f = go(ctx, e->a());
        if (f->kind() != Type::Kind::fn)
          fail(TypeErrorKind::Shape, "applied expression has type " + show(f) + ", not a function",
               e);
        require_flow(ctx, f->label(), "pc <= pc' of the applied function", e);
        TypePtr arg = go(ctx, e->b());
        if (!type_equal(d, arg, f->lhs()))
          fail(TypeErrorKind::Shape,
               "argument has type " + show(arg) + ", function expects " + show(f->lhs()), e);
        return f->rhs();
      }
      case Expr::Kind::tapp: {
        TypePtr f = go(ctx, e->a());
        if (f->kind() != Type::Kind::forall)
          fail(TypeErrorKind::Shape,
               "type-applied expression has type " + show(f) + ", not a quantified type", e);
        require_flow(ctx, f->label(), "pc <= pc' of the quantified expression", e);
        check_wf(ctx, e->type(), e);
        return substitute_type(f->rhs(), f->name(), e->type());
      }
      case Expr::Kind::proj: {
        TypePtr t = go(ctx, e->a());
        if (t->kind() != Type::Kind::prod)
          fail(TypeErrorKind::Shape, "projected expression has type " + show(t) + ", not a pair",
               e);
        return e->index() == 1 ? t->lhs() : t->rhs();
      }
      case Expr::Kind::case_: {
        TypePtr scrut = go(ctx, e->a());
        if (scrut->kind() != Type::Kind::sum)
          fail(TypeErrorKind::Shape, "case scrutinee has type " + show(scrut) + ", not a sum", e);
        TypePtr t1 = go(ctx.with_var(e->name(), scrut->lhs(), e->pos()), e->b());
        TypePtr t2 = go(ctx.with_var(e->name2(), scrut->rhs(), e->pos()), e->c());
        if (!type_equal(d, t1, t2))
          fail(TypeErrorKind::Shape,
               "case branches disagree: " + show(t1) + " versus " + show(t2), e);
        if (!protects(d, ctx.pc(), t1))
          fail(TypeErrorKind::ProtectFail,
               "protects(pc, t) with pc = " + show(ctx.pc()) + ", t = " + show(t1), e, nullptr,
               nullptr, ctx.pc());
        return t1;
      }
      case Expr::Kind::unitm: {
        require_flow(ctx, e->label(), "pc <= l of the monadic unit", e);
        return Type::says(e->label(), go(ctx, e->a()));
      }
      case Expr::Kind::vunitm: {
        if (!is_value(*e->a()))
          fail(TypeErrorKind::Shape, "pre-protected unit applies to values only", e);
        return Type::says(e->label(), go(ctx, e->a()));
      }
      case Expr::Kind::bindm: {
        TypePtr rhs = go(ctx, e->a());
        if (rhs->kind() != Type::Kind::says)
          fail(TypeErrorKind::Shape, "bound expression has type " + show(rhs) + ", not a says",
               e);
        PrincipalPtr l = rhs->label();
        TypingCtx inner =
            ctx.with_pc(flow_join(ctx.pc(), l)).with_var(e->name(), rhs->rhs(), e->pos());
        TypePtr t = go(inner, e->b());
        if (!protects(d, l, t))
          fail(TypeErrorKind::ProtectFail,
               "protects(l, t) with l = " + show(l) + ", t = " + show(t), e, l);
        return t;
      }
      case Expr::Kind::decl:
      case Expr::Kind::endorse: {
        const bool is_decl = e->kind() == Expr::Kind::decl;
        TypePtr t = go(ctx, e->a());
        if (t->kind() != Type::Kind::says)
          fail(TypeErrorKind::Shape, std::string(is_decl ? "declassified" : "endorsed") +
                                         " expression has type " + show(t) + ", not a says",
               e);
        PrincipalPtr from = t->label();
        PrincipalPtr to = e->label();
        DowngradeCheck dc = downgrade_ok(
            d, is_decl ? DowngradeKind::decl : DowngradeKind::endorse, from, to, ctx.pc());
        if (!dc.ok)
          fail(is_decl ? TypeErrorKind::DeclPremise : TypeErrorKind::EndorsePremise, dc.premise,
               e, from, to, ctx.pc());
        return Type::says(to, t->rhs());
      }
      case Expr::Kind::bracket: {
        if (!opts.runtime_forms)
          fail(TypeErrorKind::Shape, "bracketed expressions are runtime-only forms", e);
        if (!e->high()->resolved())
          fail(TypeErrorKind::Shape, "high set '" + e->high()->name() + "' is unresolved", e);
        PrincipalPtr pc2 = e->label() ? flow_join(ctx.pc(), e->label()) : ctx.pc();
        if (!e->high()->member(pc2))
          fail(TypeErrorKind::PcMismatch,
               "bracket pc " + show(pc2) + " is not in high set '" + e->high()->name() + "'", e,
               nullptr, nullptr, pc2);
        TypePtr t = go(ctx.with_pc(pc2), e->a());
        if (!high_type(*e->high(), t))
          fail(TypeErrorKind::ProtectFail,
               show(t) + " is not a high type for '" + e->high()->name() + "'", e);
        return t;
      }
      case Expr::Kind::hole: {
        if (!opts.runtime_forms)
          fail(TypeErrorKind::Shape, "holes are runtime-only forms", e);
        if (!e->type())
          fail(TypeErrorKind::Shape, "hole needs a type ascription to be checked", e);
        if (!e->high()->resolved())
          fail(TypeErrorKind::Shape, "high set '" + e->high()->name() + "' is unresolved", e);
        check_wf(ctx, e->type(), e);
        if (!e->high()->member(ctx.pc()))
          fail(TypeErrorKind::HoleContext,
               "hole pc " + show(ctx.pc()) + " is not in high set '" + e->high()->name() + "'", e,
               nullptr, nullptr, ctx.pc());
        if (!high_type(*e->high(), e->type()))
          fail(TypeErrorKind::HoleContext,
               show(e->type()) + " is not a high type for '" + e->high()->name() + "'", e);
        return e->type();
      }
    }
    fail(TypeErrorKind::Shape, "unrecognized expression form", e);
  }
};

}  // namespace

TypePtr type_of(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e,
                const CheckOptions& opts) {
  Checker c{d, opts};
  return c.go(ctx, e);
}

}  // namespace nmifc
