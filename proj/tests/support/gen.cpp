#include "gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "nmifc/typecheck.hpp"

namespace nmifc::testsupport {

std::size_t Gen::pick(std::size_t n) {
  if (n == 0) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool Gen::chance(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p;
}

PrincipalPtr Gen::principal(const std::vector<std::string>& atoms, int max_nodes,
                            bool fig_rules_only) {
  if (max_nodes <= 1) {
    std::size_t k = pick(atoms.size() + 2);
    if (k < atoms.size()) return Principal::atom(atoms[k]);
    return k == atoms.size() ? Principal::top() : Principal::bot();
  }
  switch (pick(fig_rules_only ? 4u : 6u)) {
    case 0:
      return principal(atoms, 1, fig_rules_only);
    case 1: {
      PrincipalPtr c = principal(atoms, max_nodes - 1, fig_rules_only);
      return Principal::proj(c, chance(0.5) ? Aspect::conf : Aspect::integ);
    }
    default: {
      int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_nodes - 2)));
      PrincipalPtr l = principal(atoms, left, fig_rules_only);
      PrincipalPtr r = principal(atoms, max_nodes - 1 - left, fig_rules_only);
      switch (pick(fig_rules_only ? 2u : 4u)) {
        case 0: return Principal::conj(l, r);
        case 1: return Principal::disj(l, r);
        case 2: return Principal::join(l, r);
        default: return Principal::meet(l, r);
      }
    }
  }
}

std::vector<OracleEdge> Gen::edges(const std::vector<std::string>& atoms, int count,
                                   int max_target_nodes) {
  std::vector<OracleEdge> out;
  for (int i = 0; i < count; ++i) {
    std::string who = atoms[pick(atoms.size())];
    out.push_back({who, principal(atoms, max_target_nodes, true)});
  }
  return out;
}

ExprPtr Gen::value_of(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::unit:
      return Expr::unit();
    case Type::Kind::sum: {
      int i = chance(0.5) ? 1 : 2;
      return Expr::inj(i, t, value_of(i == 1 ? t->lhs() : t->rhs()));
    }
    case Type::Kind::prod:
      return Expr::pair(value_of(t->lhs()), value_of(t->rhs()));
    case Type::Kind::says:
      return Expr::vunitm(t->label(), value_of(t->rhs()));
    default:
      throw std::invalid_argument("value_of: not a first-order type");
  }
}

std::vector<ExprPtr> Gen::all_values(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::unit:
      return {Expr::unit()};
    case Type::Kind::sum: {
      std::vector<ExprPtr> out;
      for (const ExprPtr& v : all_values(t->lhs())) out.push_back(Expr::inj(1, t, v));
      for (const ExprPtr& v : all_values(t->rhs())) out.push_back(Expr::inj(2, t, v));
      return out;
    }
    case Type::Kind::prod: {
      std::vector<ExprPtr> out;
      for (const ExprPtr& l : all_values(t->lhs()))
        for (const ExprPtr& r : all_values(t->rhs())) out.push_back(Expr::pair(l, r));
      return out;
    }
    case Type::Kind::says: {
      std::vector<ExprPtr> out;
      for (const ExprPtr& v : all_values(t->rhs())) out.push_back(Expr::vunitm(t->label(), v));
      return out;
    }
    default:
      throw std::invalid_argument("all_values: not a first-order type");
  }
}

std::size_t expr_size(const ExprPtr& e) {
  if (!e) return 0;
  return 1 + expr_size(e->a()) + expr_size(e->b()) + expr_size(e->c());
}

namespace {

TypePtr bool_type() { return Type::sum(Type::unit(), Type::unit()); }

// Stateful single-program builder. Targets stay within the "leafable"
// fragment: every says layer reachable without going under a lam satisfies
// pc flows-to label, so a minimal completion always exists.
struct Builder {
  Gen& g;
  const DelegationSet& d;
  std::vector<PrincipalPtr> palette;
  int fresh = 0;
  int budget = 0;

  using Ctx = std::vector<std::pair<std::string, TypePtr>>;

  std::string freshen() { return "z" + std::to_string(++fresh); }

  bool callable(const PrincipalPtr& pc, const TypePtr& t) {
    switch (t->kind()) {
      case Type::Kind::unit:
        return true;
      case Type::Kind::sum:
      case Type::Kind::prod:
        return callable(pc, t->lhs()) && callable(pc, t->rhs());
      case Type::Kind::says:
        return flows_to(d, pc, t->label()) && callable(pc, t->rhs());
      case Type::Kind::fn:
        // The lam's declared pc is chosen as the pc in force where the lam
        // literal is written, so the body must be completable there.
        return callable(pc, t->rhs());
      default:
        return false;
    }
  }

  ExprPtr leaf(const Ctx& ctx, const PrincipalPtr& pc, const TypePtr& t) {
    budget -= 1;
    switch (t->kind()) {
      case Type::Kind::unit:
        return Expr::unit();
      case Type::Kind::sum:
        return Expr::inj(1, t, leaf(ctx, pc, t->lhs()));
      case Type::Kind::prod:
        return Expr::pair(leaf(ctx, pc, t->lhs()), leaf(ctx, pc, t->rhs()));
      case Type::Kind::says:
        return Expr::unitm(t->label(), leaf(ctx, pc, t->rhs()));
      case Type::Kind::fn: {
        std::string z = freshen();
        return Expr::lam(z, t->lhs(), pc, leaf(ctx, pc, t->rhs()));
      }
      default:
        throw std::logic_error("leaf: unreachable target");
    }
  }

  std::vector<std::size_t> vars_matching(const Ctx& ctx, const TypePtr& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (type_equal(d, ctx[i].second, t)) out.push_back(i);
    return out;
  }

  ExprPtr gen(const Ctx& ctx, const PrincipalPtr& pc, const TypePtr& t,
              double downgrade_weight) {
    if (budget <= 2) return leaf(ctx, pc, t);
    budget -= 1;

    // Occasionally read an exact-type variable wherever one exists.
    std::vector<std::size_t> exact = vars_matching(ctx, t);
    if (!exact.empty() && g.chance(0.3))
      return Expr::var(ctx[exact[g.pick(exact.size())]].first);

    // Case split on a sum-typed variable.
    if (g.chance(0.15)) {
      std::vector<std::size_t> sums;
      for (std::size_t i = 0; i < ctx.size(); ++i)
        if (ctx[i].second->kind() == Type::Kind::sum) sums.push_back(i);
      if (!sums.empty()) {
        const auto& [n, st] = ctx[sums[g.pick(sums.size())]];
        std::string z1 = freshen(), z2 = freshen();
        Ctx c1 = ctx, c2 = ctx;
        c1.emplace_back(z1, st->lhs());
        c2.emplace_back(z2, st->rhs());
        return Expr::case_(Expr::var(n), z1, gen(c1, pc, t, downgrade_weight), z2,
                           gen(c2, pc, t, downgrade_weight));
      }
    }

    // A beta redex now and then: (lam z . body) arg.
    if (g.chance(0.12)) {
      TypePtr ta = g.chance(0.5) ? bool_type() : Type::unit();
      std::string z = freshen();
      Ctx c = ctx;
      c.emplace_back(z, ta);
      ExprPtr f = Expr::lam(z, ta, pc, gen(c, pc, t, downgrade_weight));
      return Expr::app(f, gen(ctx, pc, ta, downgrade_weight));
    }

    switch (t->kind()) {
      case Type::Kind::unit:
        return Expr::unit();
      case Type::Kind::sum: {
        int i = g.chance(0.5) ? 1 : 2;
        return Expr::inj(i, t, gen(ctx, pc, i == 1 ? t->lhs() : t->rhs(), downgrade_weight));
      }
      case Type::Kind::prod:
        return Expr::pair(gen(ctx, pc, t->lhs(), downgrade_weight),
                          gen(ctx, pc, t->rhs(), downgrade_weight));
      case Type::Kind::fn: {
        std::string z = freshen();
        Ctx c = ctx;
        c.emplace_back(z, t->lhs());
        return Expr::lam(z, t->lhs(), t->label(), gen(c, t->label(), t->rhs(), downgrade_weight));
      }
      case Type::Kind::says: {
        const PrincipalPtr& l = t->label();

        // Downgrade into the target from a palette label passing the premises.
        if (g.chance(downgrade_weight)) {
          std::vector<std::pair<PrincipalPtr, bool>> cands;  // (source, is_decl)
          for (const PrincipalPtr& from : palette) {
            if (!flows_to(d, pc, from)) continue;  // source side must be writable
            if (!callable(pc, t->rhs())) continue;
            if (downgrade_ok(d, DowngradeKind::decl, from, l, pc).ok &&
                !equivalent(d, from, l))
              cands.emplace_back(from, true);
            if (downgrade_ok(d, DowngradeKind::endorse, from, l, pc).ok &&
                !equivalent(d, from, l))
              cands.emplace_back(from, false);
          }
          if (!cands.empty()) {
            auto [from, is_decl] = cands[g.pick(cands.size())];
            ExprPtr src = gen(ctx, pc, Type::says(from, t->rhs()), downgrade_weight);
            return is_decl ? Expr::decl(src, l) : Expr::endorse(src, l);
          }
        }

        // Bind a protected variable whose label keeps the target completable.
        if (g.chance(0.4)) {
          std::vector<std::size_t> binds;
          for (std::size_t i = 0; i < ctx.size(); ++i) {
            const TypePtr& vt = ctx[i].second;
            if (vt->kind() != Type::Kind::says) continue;
            if (!protects(d, vt->label(), t)) continue;
            if (!callable(flow_join(pc, vt->label()), t)) continue;
            binds.push_back(i);
          }
          if (!binds.empty()) {
            const auto& [n, vt] = ctx[binds[g.pick(binds.size())]];
            std::string z = freshen();
            Ctx c = ctx;
            c.emplace_back(z, vt->rhs());
            PrincipalPtr pc2 = flow_join(pc, vt->label());
            return Expr::bindm(z, Expr::var(n), gen(c, pc2, t, downgrade_weight));
          }
        }

        return Expr::unitm(l, gen(ctx, pc, t->rhs(), downgrade_weight));
      }
      default:
        throw std::logic_error("gen: unreachable target");
    }
  }
};

}  // namespace

GeneratedProgram generate_program(Gen& g, const DelegationSet& d,
                                  const std::vector<std::string>& atoms,
                                  const ProgramGenOptions& opts) {
  PrincipalPtr pc = opts.pc ? opts.pc : Principal::proj(Principal::top(), Aspect::integ);

  Builder b{g, d};
  for (const std::string& n : atoms) {
    b.palette.push_back(Principal::atom(n));
    b.palette.push_back(
        Principal::conj(Principal::proj(Principal::atom(n), Aspect::conf),
                        Principal::proj(Principal::top(), Aspect::integ)));
  }
  for (const std::string& n : atoms)
    for (const std::string& m : atoms)
      b.palette.push_back(Principal::conj(Principal::proj(Principal::atom(n), Aspect::conf),
                                          Principal::proj(Principal::atom(m), Aspect::integ)));
  b.palette.push_back(Principal::proj(Principal::top(), Aspect::integ));

  // Input and output labels drawn from the palette; each input label must
  // admit values (always true: values exist at every label) and the output
  // spine must be completable at pc.
  GeneratedProgram out;
  out.pc = pc;

  TypePtr inner = g.chance(0.3) ? Type::prod(bool_type(), bool_type()) : bool_type();
  out.tx = Type::says(b.palette[g.pick(b.palette.size())], bool_type());
  out.ty = Type::says(b.palette[g.pick(b.palette.size())], bool_type());

  std::vector<PrincipalPtr> outs;
  for (const PrincipalPtr& l : b.palette)
    if (flows_to(d, pc, l)) outs.push_back(l);
  if (outs.empty()) outs.push_back(Principal::top());
  TypePtr target = Type::says(outs[g.pick(outs.size())], inner);

  Builder::Ctx ctx = {{"x", out.tx}, {"y", out.ty}};
  double w = opts.allow_downgrades ? opts.downgrade_weight : 0.0;
  int budget = opts.max_nodes;
  for (;;) {
    b.budget = budget;
    out.body = b.gen(ctx, pc, target, w);
    if (expr_size(out.body) <= static_cast<std::size_t>(opts.max_nodes)) break;
    budget = std::max(3, budget - 5);  // leaves overshoot; shrink and retry
  }

  // The generator's side conditions mirror the typing premises; verify that
  // claim rather than silently retrying, so drift shows up as a test failure.
  TypingCtx tc(pc);
  tc = tc.with_var("x", out.tx).with_var("y", out.ty);
  type_of(d, tc, out.body);
  return out;
}

}  // namespace nmifc::testsupport
