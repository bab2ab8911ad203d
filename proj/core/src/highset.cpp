#include "nmifc/highset.hpp"

namespace nmifc {

HighSetPtr generated_high_set(std::string name, const DelegationSet& d,
                              std::vector<PrincipalPtr> generators) {
  // Capture normal forms so membership needs no re-normalization of the
  // generators.
  std::vector<NormalForm> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(normalize(g));
  auto dcopy = std::make_shared<DelegationSet>(d);
  auto member = [gens = std::move(gens), dcopy](const PrincipalPtr& l) {
    NormalForm nl = normalize(l);
    PrincipalPtr lp = denote(nl);
    for (const NormalForm& g : gens)
      if (flows_to(*dcopy, denote(g), lp)) return true;
    return false;
  };
  return std::make_shared<HighSet>(std::move(name), std::move(member));
}

namespace {

ExprPtr resolve_rec(const ExprPtr& e, const std::string& name, const HighSetPtr& h) {
  auto fix = [&](const ExprPtr& sub) { return sub ? resolve_rec(sub, name, h) : sub; };
  switch (e->kind()) {
    case Expr::Kind::bracket: {
      ExprPtr body = fix(e->a());
      HighSetPtr hs = e->high() && e->high()->name() == name ? h : e->high();
      if (body == e->a() && hs == e->high()) return e;
      return Expr::bracket(body, hs, e->label(), e->pos());
    }
    case Expr::Kind::hole: {
      if (e->high() && e->high()->name() == name)
        return Expr::hole(e->index(), h, e->type(), e->pos());
      return e;
    }
    default: {
      ExprPtr a = fix(e->a()), b = fix(e->b()), c = fix(e->c());
      if (a == e->a() && b == e->b() && c == e->c()) return e;
      switch (e->kind()) {
        case Expr::Kind::pair: return Expr::pair(a, b, e->pos());
        case Expr::Kind::inj: return Expr::inj(e->index(), e->type(), a, e->pos());
        case Expr::Kind::lam: return Expr::lam(e->name(), e->type(), e->label(), a, e->pos());
        case Expr::Kind::tlam: return Expr::tlam(e->name(), e->label(), a, e->pos());
        case Expr::Kind::app: return Expr::app(a, b, e->pos());
        case Expr::Kind::tapp: return Expr::tapp(a, e->type(), e->pos());
        case Expr::Kind::proj: return Expr::proj(e->index(), a, e->pos());
        case Expr::Kind::case_:
          return Expr::case_(a, e->name(), b, e->name2(), c, e->pos());
        case Expr::Kind::unitm: return Expr::unitm(e->label(), a, e->pos());
        case Expr::Kind::vunitm: return Expr::vunitm(e->label(), a, e->pos());
        case Expr::Kind::bindm: return Expr::bindm(e->name(), a, b, e->pos());
        case Expr::Kind::decl: return Expr::decl(a, e->label(), e->pos());
        case Expr::Kind::endorse: return Expr::endorse(a, e->label(), e->pos());
        default: return e;  // leaves: var, unit
      }
    }
  }
}

}  // namespace

ExprPtr resolve_high_sets(const ExprPtr& e, const std::string& name, const HighSetPtr& h) {
  return resolve_rec(e, name, h);
}

bool has_unresolved_high_sets(const ExprPtr& e) {
  if ((e->kind() == Expr::Kind::bracket || e->kind() == Expr::Kind::hole) && e->high() &&
      !e->high()->resolved())
    return true;
  for (const ExprPtr* sub : {&e->a(), &e->b(), &e->c()})
    if (*sub && has_unresolved_high_sets(*sub)) return true;
  return false;
}

}  // namespace nmifc
