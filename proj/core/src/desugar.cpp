#include "nmifc/desugar.hpp"

#include <algorithm>
#include <set>

#include "nmifc/highset.hpp"
#include "nmifc/subst.hpp"

namespace nmifc {

namespace {

struct Desugarer {
  const DelegationSet& d;
  std::set<std::string> used;
  std::vector<HoleSite> sites;

  ExprPtr replace_hole(const TypingCtx& ctx, const ExprPtr& e) {
    if (!e->type()) throw DesugarError("hole " + std::to_string(e->index()) +
                                       " has no type ascription");
    const std::string y = fresh_name("y", used);
    const std::string yp = fresh_name("yp", used);
    ExprPtr applied = Expr::var(yp, e->pos());
    TypePtr fn_ty = e->type();
    const auto& zs = ctx.vars();
    for (auto it = zs.rbegin(); it != zs.rend(); ++it)
      fn_ty = Type::fn(it->second, ctx.pc(), fn_ty);
    for (const auto& [z, ty] : zs) applied = Expr::app(applied, Expr::var(z, e->pos()), e->pos());
    sites.push_back(HoleSite{e->index(), y, ctx.pc(), e->type(),
                             Type::says(ctx.pc(), fn_ty), zs, e->high(), ctx});
    return Expr::bindm(yp, Expr::var(y, e->pos()), applied, e->pos());
  }

  ExprPtr go(const TypingCtx& ctx, const ExprPtr& e) {
    switch (e->kind()) {
      case Expr::Kind::hole:
        return replace_hole(ctx, e);
      case Expr::Kind::var:
      case Expr::Kind::unit:
        return e;
      case Expr::Kind::pair:
        return Expr::pair(go(ctx, e->a()), go(ctx, e->b()), e->pos());
      case Expr::Kind::inj:
        return Expr::inj(e->index(), e->type(), go(ctx, e->a()), e->pos());
      case Expr::Kind::lam: {
        TypingCtx inner = ctx.with_pc(e->label()).with_var(e->name(), e->type(), e->pos());
        return Expr::lam(e->name(), e->type(), e->label(), go(inner, e->a()), e->pos());
      }
      case Expr::Kind::tlam: {
        TypingCtx inner = ctx.with_pc(e->label()).with_tyvar(e->name(), e->pos());
        return Expr::tlam(e->name(), e->label(), go(inner, e->a()), e->pos());
      }
      case Expr::Kind::app:
        return Expr::app(go(ctx, e->a()), go(ctx, e->b()), e->pos());
      case Expr::Kind::tapp:
        return Expr::tapp(go(ctx, e->a()), e->type(), e->pos());
      case Expr::Kind::proj:
        return Expr::proj(e->index(), go(ctx, e->a()), e->pos());
      case Expr::Kind::case_: {
        ExprPtr scrut = go(ctx, e->a());
        TypePtr scrut_ty = type_of(d, ctx, e->a(), {.runtime_forms = true});
        if (scrut_ty->kind() != Type::Kind::sum)
          throw DesugarError("case scrutinee is not a sum");
        ExprPtr b1 = go(ctx.with_var(e->name(), scrut_ty->lhs(), e->pos()), e->b());
        ExprPtr b2 = go(ctx.with_var(e->name2(), scrut_ty->rhs(), e->pos()), e->c());
        return Expr::case_(scrut, e->name(), b1, e->name2(), b2, e->pos());
      }
      case Expr::Kind::unitm:
        return Expr::unitm(e->label(), go(ctx, e->a()), e->pos());
      case Expr::Kind::vunitm:
        return Expr::vunitm(e->label(), go(ctx, e->a()), e->pos());
      case Expr::Kind::bindm: {
        ExprPtr rhs = go(ctx, e->a());
        TypePtr rhs_ty = type_of(d, ctx, e->a(), {.runtime_forms = true});
        if (rhs_ty->kind() != Type::Kind::says)
          throw DesugarError("bind right-hand side is not a says");
        TypingCtx inner = ctx.with_pc(flow_join(ctx.pc(), rhs_ty->label()))
                              .with_var(e->name(), rhs_ty->rhs(), e->pos());
        return Expr::bindm(e->name(), rhs, go(inner, e->b()), e->pos());
      }
      case Expr::Kind::decl:
        return Expr::decl(go(ctx, e->a()), e->label(), e->pos());
      case Expr::Kind::endorse:
        return Expr::endorse(go(ctx, e->a()), e->label(), e->pos());
      case Expr::Kind::bracket: {
        PrincipalPtr pc2 = e->label() ? flow_join(ctx.pc(), e->label()) : ctx.pc();
        return Expr::bracket(go(ctx.with_pc(pc2), e->a()), e->high(), e->label(), e->pos());
      }
    }
    return e;
  }
};

}  // namespace

Desugared desugar_holes(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e) {
  Desugarer ds{d, {}, {}};
  all_names(*e, ds.used);
  for (const auto& [n, t] : ctx.vars()) ds.used.insert(n);
  ExprPtr out = ds.go(ctx, e);
  std::sort(ds.sites.begin(), ds.sites.end(),
            [](const HoleSite& a, const HoleSite& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < ds.sites.size(); ++i) {
    if (ds.sites[i].index != static_cast<int>(i) + 1)
      throw DesugarError("hole indices must be exactly 1.." +
                         std::to_string(ds.sites.size()) + " with no repeats");
  }
  return Desugared{std::move(out), std::move(ds.sites)};
}

ExprPtr synthesize_attack_value(const DelegationSet& d, const HoleSite& site, const ExprPtr& a) {
  TypePtr got;
  try {
    got = type_of(d, site.ctx, a, {.runtime_forms = true});
  } catch (const TypeError& te) {
    throw DesugarError("attack for hole " + std::to_string(site.index) +
                       " does not type at the hole: " + te.what());
  }
  if (!type_equal(d, got, site.type))
    throw DesugarError("attack for hole " + std::to_string(site.index) + " has type " +
                       print_type(got) + ", hole needs " + print_type(site.type));
  // The binders take fresh names so the closed value types in contexts that
  // already bind the captured variables; application is positional.
  std::set<std::string> used;
  all_names(*a, used);
  for (const auto& [n, t] : site.ctx.vars()) used.insert(n);
  ExprPtr body = a;
  std::vector<std::pair<std::string, TypePtr>> binders;
  binders.reserve(site.captured.size());
  for (const auto& [z, ty] : site.captured) {
    std::string nz = fresh_name(z, used);
    if (nz != z) body = substitute(body, z, Expr::var(nz));
    binders.emplace_back(nz, ty);
  }
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = Expr::lam(it->first, it->second, site.pc, body, a->pos());
  if (!is_value(*body))
    throw DesugarError("attack for hole " + std::to_string(site.index) +
                       " must be a value when the hole captures no variables");
  return Expr::vunitm(site.pc, body, a->pos());
}

ExprPtr fill_holes(const DelegationSet& d, const TypingCtx& ctx, const ExprPtr& e,
                   const std::vector<ExprPtr>& attacks) {
  Desugared ds = desugar_holes(d, ctx, e);
  if (attacks.size() != ds.holes.size())
    throw DesugarError("program has " + std::to_string(ds.holes.size()) + " hole(s) but " +
                       std::to_string(attacks.size()) + " attack(s) were supplied");
  ExprPtr out = ds.expr;
  for (std::size_t i = 0; i < ds.holes.size(); ++i) {
    ExprPtr w = synthesize_attack_value(d, ds.holes[i], attacks[i]);
    out = substitute(out, ds.holes[i].var, w);
  }
  return out;
}

}  // namespace nmifc
