#include "nmifc/checkers.hpp"

#include <algorithm>
#include <climits>
#include <limits>

#include "nmifc/subst.hpp"

namespace nmifc {

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::pass: return "Pass";
    case VerdictKind::downgrade_witness: return "DowngradeWitness";
    case VerdictKind::violation: return "Violation";
    case VerdictKind::skip: return "Skip";
  }
  return "Skip";
}

PrincipalPtr marker_label() {
  return Principal::proj(Principal::top(), Aspect::integ);
}

namespace {

Verdict make_skip(std::string reason, bool fuel = false) {
  Verdict v;
  v.kind = VerdictKind::skip;
  v.reason = std::move(reason);
  v.fuel_exhausted = fuel;
  return v;
}

PrincipalPtr effective_pc(const SecurityOptions& opts) {
  return opts.pc ? opts.pc : marker_label();
}

RunRecord run_marked(const DelegationSet& d, const ExprPtr& e,
                     const std::vector<std::pair<std::string, ExprPtr>>& subs,
                     const SecurityOptions& opts) {
  ExprPtr body = e;
  for (const auto& [name, value] : subs) body = substitute(body, name, value);
  Config c;
  c.expr = body;
  c.fuel = static_cast<int>(std::min<long>(opts.fuel, INT_MAX));
  EvalOptions eo;
  eo.pc = effective_pc(opts);
  StepStatus st = eval(d, c, eo);
  RunRecord r;
  r.value = c.expr;
  r.trace.reserve(subs.size() + c.trace.size());
  for (const auto& [name, value] : subs)
    r.trace.push_back(Event::protect(marker_label(), value));
  r.trace.insert(r.trace.end(), c.trace.begin(), c.trace.end());
  r.out_of_fuel = st == StepStatus::out_of_fuel;
  r.stuck = st == StepStatus::stuck;
  return r;
}

const RunRecord& run2(const DelegationSet& d, const ExprPtr& e,
                      const std::string& xvar, const ExprPtr& xv,
                      const std::string& yvar, const ExprPtr& yv,
                      const SecurityOptions& opts, RunCache& cache) {
  auto key = std::make_pair(static_cast<const Expr*>(xv.get()),
                            static_cast<const Expr*>(yv.get()));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RunRecord r = run_marked(d, e, {{xvar, xv}, {yvar, yv}}, opts);
  return cache.emplace(key, std::move(r)).first->second;
}

std::optional<std::string> typing_problem(
    const DelegationSet& d, const ExprPtr& e,
    const std::vector<std::pair<std::string, TypePtr>>& bindings,
    const SecurityOptions& opts) {
  if (opts.unsafe) return std::nullopt;
  try {
    TypingCtx ctx(effective_pc(opts));
    for (const auto& [name, ty] : bindings) ctx = ctx.with_var(name, ty);
    type_of(d, ctx, e);
    return std::nullopt;
  } catch (const TypeError& te) {
    return std::string(te.what());
  }
}

std::optional<std::string> pool_value_problem(const DelegationSet& d,
                                              const ExprPtr& v,
                                              const TypePtr& ty,
                                              const SecurityOptions& opts) {
  if (!is_value(v)) return "pool entry is not a value";
  if (!free_vars(*v).empty() || !free_type_vars_expr(*v).empty())
    return "pool entry is not closed";
  try {
    TypingCtx ctx(effective_pc(opts));
    TypePtr got = type_of(d, ctx, v);
    if (!type_equal(d, got, ty))
      return "pool entry does not have the declared type";
  } catch (const TypeError& te) {
    return std::string("pool entry does not type-check: ") + te.what();
  }
  return std::nullopt;
}

std::optional<std::string> pools_problem(const DelegationSet& d,
                                         const Pools& pools, const TypePtr& tx,
                                         const TypePtr& ty,
                                         const SecurityOptions& opts) {
  if (!pools.secret.type || !pools.attack.type) return "pool is missing a type";
  if (!type_equal(d, pools.secret.type, tx))
    return "secret pool type differs from the input binding";
  if (!type_equal(d, pools.attack.type, ty))
    return "attack pool type differs from the input binding";
  for (const ExprPtr& v : pools.secret.values)
    if (auto p = pool_value_problem(d, v, tx, opts)) return "secret " + *p;
  for (const ExprPtr& v : pools.attack.values)
    if (auto p = pool_value_problem(d, v, ty, opts)) return "attack " + *p;
  return std::nullopt;
}

QuadrupleWitness make_witness(const ExprPtr& v1, const ExprPtr& v2,
                              const ExprPtr& w1, const ExprPtr& w2,
                              const RunRecord& t11, const RunRecord& t12,
                              const RunRecord& t21, const RunRecord& t22) {
  QuadrupleWitness w;
  w.v1 = v1;
  w.v2 = v2;
  w.w1 = w1;
  w.w2 = w2;
  w.traces = {t11.trace, t12.trace, t21.trace, t22.trace};
  return w;
}

}  // namespace

bool contains_kind(const ExprPtr& e, Expr::Kind k) {
  if (!e) return false;
  if (e->kind() == k) return true;
  return contains_kind(e->a(), k) || contains_kind(e->b(), k) ||
         contains_kind(e->c(), k);
}

Verdict check_noninterference(const DelegationSet& d, const ExprPtr& e,
                              const std::string& var, const TypePtr& ty,
                              const NiSetup& setup, const ExprPtr& v1,
                              const ExprPtr& v2, const SecurityOptions& opts) {
  HighSet h{"high"};
  switch (setup.variant) {
    case NiVariant::modulo_downgrading: {
      if (!setup.high || !setup.high->resolved())
        return make_skip("missing or unresolved high set");
      h = *setup.high;
      break;
    }
    case NiVariant::high_pc: {
      if (!setup.attacker) return make_skip("missing attacker");
      h = induced_high_set(d, *setup.attacker, setup.which);
      HighSet u = induced_high_set(d, *setup.attacker, HighKind::untrusted);
      HighSet s = induced_high_set(d, *setup.attacker, HighKind::secret);
      PrincipalPtr pc = effective_pc(opts);
      if (!u.member(pc) && !s.member(pc))
        return make_skip("pc is public-trusted, so the high-pc condition does not apply");
      break;
    }
    case NiVariant::secret_untrusted: {
      if (!setup.attacker) return make_skip("missing attacker");
      h = intersect_high_sets(
          "secret-untrusted",
          induced_high_set(d, *setup.attacker, HighKind::untrusted),
          induced_high_set(d, *setup.attacker, HighKind::secret));
      break;
    }
  }

  if (auto p = typing_problem(d, e, {{var, ty}}, opts))
    return make_skip("program does not type-check: " + *p);
  if (!opts.unsafe && !high_type(h, ty))
    return make_skip("input type is not protected by the high set");
  for (const ExprPtr& v : {v1, v2})
    if (auto p = pool_value_problem(d, v, ty, opts)) return make_skip(*p);

  RunRecord r1 = run_marked(d, e, {{var, v1}}, opts);
  RunRecord r2 = run_marked(d, e, {{var, v2}}, opts);
  if (r1.out_of_fuel || r2.out_of_fuel)
    return make_skip("fuel exhausted before termination", true);
  if (r1.stuck || r2.stuck)
    return make_skip("evaluation became stuck, which well-typed programs cannot do");

  LowSet low = low_complement(h);
  QuadrupleWitness w;
  w.v1 = v1;
  w.v2 = v2;
  w.traces = {r1.trace, Trace{}, r2.trace, Trace{}};
  if (trace_equiv(low, r1.trace, r2.trace)) {
    Verdict v;
    v.kind = VerdictKind::pass;
    return v;
  }
  if (setup.variant == NiVariant::modulo_downgrading) {
    for (const Trace* t : {&r1.trace, &r2.trace})
      for (const Event& ev : *t)
        if (ev.kind == Event::Kind::downgrade && h.member(ev.from) &&
            !h.member(ev.to)) {
          Verdict v;
          v.kind = VerdictKind::downgrade_witness;
          v.event = ev;
          v.witness = w;
          v.reason = "trace difference excused by a downgrade leaving the high set";
          return v;
        }
  }
  Verdict v;
  v.kind = VerdictKind::violation;
  v.witness = w;
  v.reason = opts.unsafe
                 ? "the two inputs produce distinguishable traces"
                 : "IMPLEMENTATION-BUG: distinguishable traces from a well-typed program";
  return v;
}

Relevance irrelevant_input(const DelegationSet& d, const ExprPtr& e,
                           const std::string& xvar, const TypePtr& tx,
                           const std::string& yvar, const TypePtr& ty,
                           const Attacker& a, Aspect aspect, const ExprPtr& v1,
                           const Pools& pools, const SecurityOptions& opts,
                           RunCache* cache) {
  (void)tx;
  (void)ty;
  RunCache local;
  RunCache& rc = cache ? *cache : local;
  Relevance out;

  const bool tested_is_attack = aspect == Aspect::integ;
  const InputPool& tested_pool = tested_is_attack ? pools.attack : pools.secret;
  const InputPool& other_pool = tested_is_attack ? pools.secret : pools.attack;

  ObserverSets obs = observer_sets(d, a);
  // The distinguishing observer lives on the opposite aspect: an attack is
  // irrelevant when it fails to make secrets publicly distinguishable, a
  // secret when it fails to make attacks distinguishable to a trusted viewer.
  const LowSet& pair_low = tested_is_attack ? obs.pub : obs.trusted;

  auto run_ij = [&](const ExprPtr& tested, const ExprPtr& other) -> const RunRecord& {
    const ExprPtr& xv = tested_is_attack ? other : tested;
    const ExprPtr& yv = tested_is_attack ? tested : other;
    return run2(d, e, xvar, xv, yvar, yv, opts, rc);
  };

  std::size_t budget = opts.index_cap ? opts.index_cap
                                      : std::numeric_limits<std::size_t>::max();
  for (const ExprPtr& v2 : tested_pool.values) {
    if (alpha_equivalent(v2, v1)) continue;
    for (std::size_t j1 = 0; j1 < other_pool.values.size(); ++j1) {
      for (std::size_t j2 = j1 + 1; j2 < other_pool.values.size(); ++j2) {
        const ExprPtr& w1 = other_pool.values[j1];
        const ExprPtr& w2 = other_pool.values[j2];
        if (alpha_equivalent(w1, w2)) continue;
        const RunRecord* t[4] = {&run_ij(v1, w1), &run_ij(v1, w2),
                                 &run_ij(v2, w1), &run_ij(v2, w2)};
        bool unusable = false;
        for (const RunRecord* r : t) {
          if (r->out_of_fuel) out.fuel_exhausted = true;
          if (r->out_of_fuel || r->stuck) unusable = true;
        }
        if (unusable) continue;
        std::array<std::vector<std::size_t>, 4> vis;
        bool empty = false;
        for (int k = 0; k < 4; ++k) {
          vis[k] = visible_positions(obs.low, t[k]->trace);
          empty = empty || vis[k].empty();
        }
        if (empty) continue;
        const Trace& t11 = t[0]->trace;
        const Trace& t12 = t[1]->trace;
        const Trace& t21 = t[2]->trace;
        const Trace& t22 = t[3]->trace;
        for (std::size_t n11 : vis[0])
          for (std::size_t n12 : vis[1])
            for (std::size_t n21 : vis[2])
              for (std::size_t n22 : vis[3]) {
                if (budget == 0) return out;
                --budget;
                if (!prefix_equiv(obs.low, t11, n11, t12, n12)) continue;
                if (!prefix_equiv(obs.low, t11, n11, t21, n21)) continue;
                if (!prefix_equiv(obs.low, t11, n11, t22, n22)) continue;
                if (!prefix_equiv(obs.low, t12, n12, t21, n21)) continue;
                if (!prefix_equiv(obs.low, t12, n12, t22, n22)) continue;
                if (!prefix_equiv(obs.low, t21, n21, t22, n22)) continue;
                if (!prefix_equiv(pair_low, t11, n11, t12, n12)) continue;
                if (prefix_equiv(pair_low, t21, n21, t22, n22)) continue;
                out.irrelevant = true;
                QuadrupleWitness w =
                    make_witness(v1, v2, w1, w2, *t[0], *t[1], *t[2], *t[3]);
                w.indices = std::array<std::size_t, 4>{n11, n12, n21, n22};
                out.witness = std::move(w);
                return out;
              }
      }
    }
  }
  return out;
}

namespace {

// Shared structure of the two single-sided downgrading checks. `rd` selects
// robust declassification; otherwise transparent endorsement.
Verdict check_one_sided(const DelegationSet& d, const ExprPtr& e,
                        const std::string& xvar, const TypePtr& tx,
                        const std::string& yvar, const TypePtr& ty,
                        const Attacker& a, const Pools& pools,
                        const SecurityOptions& opts, bool rd) {
  // The one-sided guarantees only hold for programs that cannot downgrade the
  // other aspect. Unsafe mode still searches such programs for witnesses.
  if (!opts.unsafe) {
    if (rd && contains_kind(e, Expr::Kind::endorse))
      return make_skip("robust declassification applies only to endorse-free programs");
    if (!rd && contains_kind(e, Expr::Kind::decl))
      return make_skip("transparent endorsement applies only to declassification-free programs");
  }
  if (auto p = typing_problem(d, e, {{xvar, tx}, {yvar, ty}}, opts))
    return make_skip("program does not type-check: " + *p);
  if (auto p = pools_problem(d, pools, tx, ty, opts)) return make_skip(*p);

  ObserverSets obs = observer_sets(d, a);
  RunCache cache;
  std::map<const Expr*, Relevance> rel_memo;
  auto relevance = [&](const ExprPtr& tested, Aspect aspect) -> const Relevance& {
    auto it = rel_memo.find(tested.get());
    if (it == rel_memo.end())
      it = rel_memo
               .emplace(tested.get(),
                        irrelevant_input(d, e, xvar, tx, yvar, ty, a, aspect,
                                         tested, pools, opts, &cache))
               .first;
    return it->second;
  };

  const auto& secrets = pools.secret.values;
  const auto& attacks = pools.attack.values;
  // The tested side needs both orders (the relevance filter is asymmetric);
  // the varied side is symmetric, so unordered pairs suffice.
  const auto& fixed_pool = rd ? attacks : secrets;
  const auto& varied_pool = rd ? secrets : attacks;
  for (std::size_t p1 = 0; p1 < varied_pool.size(); ++p1)
    for (std::size_t p2 = p1 + 1; p2 < varied_pool.size(); ++p2) {
      if (alpha_equivalent(varied_pool[p1], varied_pool[p2])) continue;
      for (std::size_t q1 = 0; q1 < fixed_pool.size(); ++q1)
        for (std::size_t q2 = 0; q2 < fixed_pool.size(); ++q2) {
          if (q1 == q2) continue;
          if (alpha_equivalent(fixed_pool[q1], fixed_pool[q2])) continue;
          const ExprPtr& v1 = rd ? varied_pool[p1] : fixed_pool[q1];
          const ExprPtr& v2 = rd ? varied_pool[p2] : fixed_pool[q2];
          const ExprPtr& w1 = rd ? fixed_pool[q1] : varied_pool[p1];
          const ExprPtr& w2 = rd ? fixed_pool[q2] : varied_pool[p2];
          const RunRecord& t11 = run2(d, e, xvar, v1, yvar, w1, opts, cache);
          const RunRecord& t12 = run2(d, e, xvar, v1, yvar, w2, opts, cache);
          const RunRecord& t21 = run2(d, e, xvar, v2, yvar, w1, opts, cache);
          const RunRecord& t22 = run2(d, e, xvar, v2, yvar, w2, opts, cache);
          for (const RunRecord* r : {&t11, &t12, &t21, &t22}) {
            if (r->out_of_fuel)
              return make_skip("fuel exhausted before termination", true);
            if (r->stuck)
              return make_skip("evaluation became stuck, which well-typed programs cannot do");
          }
          const Relevance& rel =
              relevance(rd ? w1 : v1, rd ? Aspect::integ : Aspect::conf);
          if (rel.fuel_exhausted)
            return make_skip("fuel exhausted during the relevance search", true);
          if (rel.irrelevant) continue;
          bool antecedent =
              rd ? trace_equiv(obs.pub, t11.trace, t21.trace)
                 : trace_equiv(obs.trusted, t11.trace, t12.trace);
          if (!antecedent) continue;
          bool conclusion =
              rd ? trace_equiv(obs.pub, t12.trace, t22.trace)
                 : trace_equiv(obs.trusted, t21.trace, t22.trace);
          if (conclusion) continue;
          Verdict v;
          v.kind = VerdictKind::violation;
          v.witness = make_witness(v1, v2, w1, w2, t11, t12, t21, t22);
          if (opts.unsafe)
            v.reason = rd ? "an attack changes which secrets are publicly distinguishable"
                          : "a secret changes which attacks are distinguishable to a trusted observer";
          else
            v.reason = "IMPLEMENTATION-BUG: counterexample from a well-typed program";
          return v;
        }
    }
  Verdict v;
  v.kind = VerdictKind::pass;
  return v;
}

}  // namespace

Verdict check_robust_declassification(const DelegationSet& d, const ExprPtr& e,
                                      const std::string& xvar, const TypePtr& tx,
                                      const std::string& yvar, const TypePtr& ty,
                                      const Attacker& a, const Pools& pools,
                                      const SecurityOptions& opts) {
  return check_one_sided(d, e, xvar, tx, yvar, ty, a, pools, opts, true);
}

Verdict check_transparent_endorsement(const DelegationSet& d, const ExprPtr& e,
                                      const std::string& xvar, const TypePtr& tx,
                                      const std::string& yvar, const TypePtr& ty,
                                      const Attacker& a, const Pools& pools,
                                      const SecurityOptions& opts) {
  return check_one_sided(d, e, xvar, tx, yvar, ty, a, pools, opts, false);
}

Verdict check_nmif(const DelegationSet& d, const ExprPtr& e,
                   const std::string& xvar, const TypePtr& tx,
                   const std::string& yvar, const TypePtr& ty, const Attacker& a,
                   const Pools& pools, const SecurityOptions& opts) {
  if (auto p = typing_problem(d, e, {{xvar, tx}, {yvar, ty}}, opts))
    return make_skip("program does not type-check: " + *p);
  if (auto p = pools_problem(d, pools, tx, ty, opts)) return make_skip(*p);

  ObserverSets obs = observer_sets(d, a);
  RunCache cache;
  std::map<const Expr*, Relevance> rel_memo[2];
  auto relevance = [&](const ExprPtr& tested, Aspect aspect) -> const Relevance& {
    auto& memo = rel_memo[aspect == Aspect::integ ? 0 : 1];
    auto it = memo.find(tested.get());
    if (it == memo.end())
      it = memo.emplace(tested.get(),
                        irrelevant_input(d, e, xvar, tx, yvar, ty, a, aspect,
                                         tested, pools, opts, &cache))
               .first;
    return it->second;
  };

  const auto& secrets = pools.secret.values;
  const auto& attacks = pools.attack.values;
  for (std::size_t i1 = 0; i1 < secrets.size(); ++i1)
    for (std::size_t i2 = 0; i2 < secrets.size(); ++i2) {
      if (i1 == i2 || alpha_equivalent(secrets[i1], secrets[i2])) continue;
      for (std::size_t j1 = 0; j1 < attacks.size(); ++j1)
        for (std::size_t j2 = 0; j2 < attacks.size(); ++j2) {
          if (j1 == j2 || alpha_equivalent(attacks[j1], attacks[j2])) continue;
          const ExprPtr& v1 = secrets[i1];
          const ExprPtr& v2 = secrets[i2];
          const ExprPtr& w1 = attacks[j1];
          const ExprPtr& w2 = attacks[j2];
          const RunRecord& t11 = run2(d, e, xvar, v1, yvar, w1, opts, cache);
          const RunRecord& t12 = run2(d, e, xvar, v1, yvar, w2, opts, cache);
          const RunRecord& t21 = run2(d, e, xvar, v2, yvar, w1, opts, cache);
          const RunRecord& t22 = run2(d, e, xvar, v2, yvar, w2, opts, cache);
          for (const RunRecord* r : {&t11, &t12, &t21, &t22}) {
            if (r->out_of_fuel)
              return make_skip("fuel exhausted before termination", true);
            if (r->stuck)
              return make_skip("evaluation became stuck, which well-typed programs cannot do");
          }
          std::array<std::vector<std::size_t>, 4> vis = {
              visible_positions(obs.low, t11.trace),
              visible_positions(obs.low, t12.trace),
              visible_positions(obs.low, t21.trace),
              visible_positions(obs.low, t22.trace)};
          std::size_t budget = opts.index_cap
                                   ? opts.index_cap
                                   : std::numeric_limits<std::size_t>::max();
          for (std::size_t n11 : vis[0])
            for (std::size_t n12 : vis[1])
              for (std::size_t n21 : vis[2])
                for (std::size_t n22 : vis[3]) {
                  if (budget == 0) goto next_quadruple;
                  --budget;
                  // Endorsed values agreed so far: attacks may vary only
                  // below the cut when secrets are fixed.
                  bool pre1 =
                      prefix_equiv(obs.trusted, t11.trace, n11 - 1, t12.trace, n12 - 1) &&
                      prefix_equiv(obs.trusted, t21.trace, n21 - 1, t22.trace, n22 - 1);
                  if (pre1) {
                    const Relevance& rel = relevance(w1, Aspect::integ);
                    if (rel.fuel_exhausted)
                      return make_skip("fuel exhausted during the relevance search", true);
                    if (!rel.irrelevant &&
                        prefix_equiv(obs.pub, t11.trace, n11, t21.trace, n21) &&
                        !prefix_equiv(obs.pub, t12.trace, n12, t22.trace, n22)) {
                      Verdict v;
                      v.kind = VerdictKind::violation;
                      v.witness = make_witness(v1, v2, w1, w2, t11, t12, t21, t22);
                      v.witness->indices = std::array<std::size_t, 4>{n11, n12, n21, n22};
                      v.witness->clause = 1;
                      v.reason = opts.unsafe
                                     ? "an attack changes which secrets are publicly distinguishable"
                                     : "IMPLEMENTATION-BUG: counterexample from a well-typed program";
                      return v;
                    }
                  }
                  // Declassified values agreed so far: secrets may vary only
                  // below the cut when attacks are fixed.
                  bool pre2 =
                      prefix_equiv(obs.pub, t11.trace, n11 - 1, t21.trace, n21 - 1) &&
                      prefix_equiv(obs.pub, t12.trace, n12 - 1, t22.trace, n22 - 1);
                  if (pre2) {
                    const Relevance& rel = relevance(v1, Aspect::conf);
                    if (rel.fuel_exhausted)
                      return make_skip("fuel exhausted during the relevance search", true);
                    if (!rel.irrelevant &&
                        prefix_equiv(obs.trusted, t11.trace, n11, t12.trace, n12) &&
                        !prefix_equiv(obs.trusted, t21.trace, n21, t22.trace, n22)) {
                      Verdict v;
                      v.kind = VerdictKind::violation;
                      v.witness = make_witness(v1, v2, w1, w2, t11, t12, t21, t22);
                      v.witness->indices = std::array<std::size_t, 4>{n11, n12, n21, n22};
                      v.witness->clause = 2;
                      v.reason = opts.unsafe
                                     ? "a secret changes which attacks are distinguishable to a trusted observer"
                                     : "IMPLEMENTATION-BUG: counterexample from a well-typed program";
                      return v;
                    }
                  }
                }
        next_quadruple:;
        }
    }
  Verdict v;
  v.kind = VerdictKind::pass;
  return v;
}

}  // namespace nmifc
