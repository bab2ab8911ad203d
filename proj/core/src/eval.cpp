#include "nmifc/eval.hpp"

#include <optional>
#include <utility>

#include "nmifc/highset.hpp"
#include "nmifc/subst.hpp"

namespace nmifc {

namespace {

/// The label under which a value is protected: the eta-bar label beneath any
/// nesting of brackets. Null when the value has no protected core
/// (only reachable from ill-typed terms).
PrincipalPtr protected_label(const ExprPtr& v) {
  const Expr* p = v.get();
  while (p->kind() == Expr::Kind::bracket) p = p->a().get();
  return p->kind() == Expr::Kind::vunitm ? p->label() : nullptr;
}

struct Stepper {
  const DelegationSet& d;

  using Out = std::optional<std::pair<ExprPtr, Event>>;

  static Out make(ExprPtr e, Event ev) { return std::make_pair(std::move(e), std::move(ev)); }

  /// pc is the label of the current position: the top-level pc joined with
  /// the pc bookkeeping of every enclosing bracket. It only feeds the
  /// bookkeeping written onto rebuilt brackets; rule selection never reads it.
  Out go(const ExprPtr& e, const PrincipalPtr& pc) {
    if (is_value(*e)) return std::nullopt;
    switch (e->kind()) {
      case Expr::Kind::var:
      case Expr::Kind::unit:
      case Expr::Kind::lam:
      case Expr::Kind::tlam:
      case Expr::Kind::hole:
        return std::nullopt;
      case Expr::Kind::pair: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::pair(r->first, e->b(), e->pos()), r->second);
        }
        Out r = go(e->b(), pc);
        if (!r) return std::nullopt;
        return make(Expr::pair(e->a(), r->first, e->pos()), r->second);
      }
      case Expr::Kind::inj: {
        Out r = go(e->a(), pc);
        if (!r) return std::nullopt;
        return make(Expr::inj(e->index(), e->type(), r->first, e->pos()), r->second);
      }
      case Expr::Kind::unitm: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::unitm(e->label(), r->first, e->pos()), r->second);
        }
        return make(Expr::vunitm(e->label(), e->a(), e->pos()),
                    Event::protect(e->label(), e->a()));
      }
      case Expr::Kind::vunitm:
        // An eta-bar over a non-value cannot arise from stepping and has no
        // evaluation context; stuck.
        return std::nullopt;
      case Expr::Kind::app: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::app(r->first, e->b(), e->pos()), r->second);
        }
        if (!is_value(*e->b())) {
          Out r = go(e->b(), pc);
          if (!r) return std::nullopt;
          return make(Expr::app(e->a(), r->first, e->pos()), r->second);
        }
        const ExprPtr& f = e->a();
        if (f->kind() != Expr::Kind::lam) return std::nullopt;
        return make(substitute(f->a(), f->name(), e->b()), Event::bullet());
      }
      case Expr::Kind::tapp: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::tapp(r->first, e->type(), e->pos()), r->second);
        }
        const ExprPtr& f = e->a();
        if (f->kind() != Expr::Kind::tlam) return std::nullopt;
        return make(substitute_type_expr(f->a(), f->name(), e->type()), Event::bullet());
      }
      case Expr::Kind::proj: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::proj(e->index(), r->first, e->pos()), r->second);
        }
        const ExprPtr& v = e->a();
        if (v->kind() == Expr::Kind::pair)
          return make(e->index() == 1 ? v->a() : v->b(), Event::bullet());
        if (v->kind() == Expr::Kind::bracket) {
          // Expansion over the projection context; the pc bookkeeping moves
          // with the bracket unchanged.
          ExprPtr inner = Expr::proj(e->index(), v->a(), e->pos());
          return make(Expr::bracket(inner, v->high(), v->label(), e->pos()), Event::bullet());
        }
        return std::nullopt;
      }
      case Expr::Kind::case_: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(
              Expr::case_(r->first, e->name(), e->b(), e->name2(), e->c(), e->pos()),
              r->second);
        }
        const ExprPtr& v = e->a();
        if (v->kind() != Expr::Kind::inj) return std::nullopt;
        const bool left = v->index() == 1;
        return make(substitute(left ? e->b() : e->c(), left ? e->name() : e->name2(), v->a()),
                    Event::bullet());
      }
      case Expr::Kind::bindm: {
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          return make(Expr::bindm(e->name(), r->first, e->b(), e->pos()), r->second);
        }
        const ExprPtr& v = e->a();
        if (v->kind() == Expr::Kind::vunitm)
          return make(substitute(e->b(), e->name(), v->a()), Event::bullet());
        if (v->kind() == Expr::Kind::bracket) {
          // Expansion over the bind context. The rebuilt bracket's pc
          // bookkeeping tightens to keep the stepped term typeable: the body
          // now runs at (pc join l) for the protection label l of the bound
          // value, and no higher than the old bracket pc.
          ExprPtr inner = Expr::bindm(e->name(), v->a(), e->b(), e->pos());
          PrincipalPtr old_pc = v->label() ? flow_join(pc, v->label()) : pc;
          PrincipalPtr hint = old_pc;
          if (PrincipalPtr l = protected_label(v->a()))
            hint = flow_meet(old_pc, flow_join(pc, l));
          return make(Expr::bracket(inner, v->high(), hint, e->pos()), Event::bullet());
        }
        return std::nullopt;
      }
      case Expr::Kind::decl:
      case Expr::Kind::endorse: {
        const bool is_decl = e->kind() == Expr::Kind::decl;
        if (!is_value(*e->a())) {
          Out r = go(e->a(), pc);
          if (!r) return std::nullopt;
          ExprPtr rebuilt = is_decl ? Expr::decl(r->first, e->label(), e->pos())
                                    : Expr::endorse(r->first, e->label(), e->pos());
          return make(std::move(rebuilt), r->second);
        }
        const ExprPtr& v = e->a();
        if (v->kind() == Expr::Kind::vunitm) {
          Event ev = Event::downgrade(is_decl ? Aspect::conf : Aspect::integ, v->label(),
                                      e->label(), v->a());
          return make(Expr::vunitm(e->label(), v->a(), e->pos()), std::move(ev));
        }
        if (v->kind() == Expr::Kind::bracket) {
          ExprPtr inner = is_decl ? Expr::decl(v->a(), e->label(), e->pos())
                                  : Expr::endorse(v->a(), e->label(), e->pos());
          if (!v->high()->member(e->label()))
            return make(std::move(inner), Event::bullet());
          return make(
              Expr::bracket(inner, v->high(), flow_join(pc, e->label()), e->pos()),
              Event::bullet());
        }
        return std::nullopt;
      }
      case Expr::Kind::bracket: {
        PrincipalPtr pc2 = e->label() ? flow_join(pc, e->label()) : pc;
        Out r = go(e->a(), pc2);
        if (!r) return std::nullopt;
        return make(Expr::bracket(r->first, e->high(), e->label(), e->pos()), r->second);
      }
    }
    return std::nullopt;
  }
};

}  // namespace

StepStatus step(const DelegationSet& d, Config& c, const EvalOptions& opts) {
  if (c.fuel <= 0) return StepStatus::out_of_fuel;
  PrincipalPtr pc = opts.pc ? opts.pc : Principal::proj(Principal::top(), Aspect::integ);
  Stepper s{d};
  Stepper::Out r = s.go(c.expr, pc);
  if (!r) return is_value(*c.expr) ? StepStatus::value : StepStatus::stuck;
  c.expr = r->first;
  c.trace.push_back(std::move(r->second));
  --c.fuel;
  return StepStatus::stepped;
}

StepStatus eval(const DelegationSet& d, Config& c, const EvalOptions& opts) {
  while (true) {
    StepStatus st = step(d, c, opts);
    if (st != StepStatus::stepped) return st;
  }
}

ExprPtr bracket_project(const ExprPtr& e) {
  switch (e->kind()) {
    case Expr::Kind::bracket:
      return bracket_project(e->a());
    case Expr::Kind::var:
    case Expr::Kind::unit:
    case Expr::Kind::hole:
      return e;
    case Expr::Kind::pair:
      return Expr::pair(bracket_project(e->a()), bracket_project(e->b()), e->pos());
    case Expr::Kind::inj:
      return Expr::inj(e->index(), e->type(), bracket_project(e->a()), e->pos());
    case Expr::Kind::lam:
      return Expr::lam(e->name(), e->type(), e->label(), bracket_project(e->a()), e->pos());
    case Expr::Kind::tlam:
      return Expr::tlam(e->name(), e->label(), bracket_project(e->a()), e->pos());
    case Expr::Kind::app:
      return Expr::app(bracket_project(e->a()), bracket_project(e->b()), e->pos());
    case Expr::Kind::tapp:
      return Expr::tapp(bracket_project(e->a()), e->type(), e->pos());
    case Expr::Kind::proj:
      return Expr::proj(e->index(), bracket_project(e->a()), e->pos());
    case Expr::Kind::case_:
      return Expr::case_(bracket_project(e->a()), e->name(), bracket_project(e->b()),
                         e->name2(), bracket_project(e->c()), e->pos());
    case Expr::Kind::unitm:
      return Expr::unitm(e->label(), bracket_project(e->a()), e->pos());
    case Expr::Kind::vunitm:
      return Expr::vunitm(e->label(), bracket_project(e->a()), e->pos());
    case Expr::Kind::bindm:
      return Expr::bindm(e->name(), bracket_project(e->a()), bracket_project(e->b()), e->pos());
    case Expr::Kind::decl:
      return Expr::decl(bracket_project(e->a()), e->label(), e->pos());
    case Expr::Kind::endorse:
      return Expr::endorse(bracket_project(e->a()), e->label(), e->pos());
  }
  return e;
}

Trace bracket_project(const Trace& t) {
  Trace out;
  out.reserve(t.size());
  for (const Event& ev : t) {
    Event e = ev;
    if (e.value) e.value = bracket_project(e.value);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nmifc
