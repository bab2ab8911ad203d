#include "nmifc/equivalence.hpp"

#include "nmifc/subst.hpp"

namespace nmifc {

namespace {

// Collapsed high subvalues become a free variable no surface program can
// name, so alpha comparison treats every occurrence as the same opaque token.
const char* kOpaque = "%opaque";

}  // namespace

LowSet low_complement(const HighSet& h) {
  std::string name = h.name();
  if (name == "untrusted") name = "trusted";
  else if (name == "secret") name = "public";
  else name = "co-" + name;
  HighSet copy = h;
  return LowSet{std::move(name),
                [copy](const PrincipalPtr& l) { return !copy.member(l); }};
}

LowSet low_intersect(const std::string& name, const LowSet& a, const LowSet& b) {
  auto ma = a.member, mb = b.member;
  return LowSet{name, [ma, mb](const PrincipalPtr& l) { return ma(l) && mb(l); }};
}

ObserverSets observer_sets(const DelegationSet& d, const Attacker& a) {
  LowSet trusted = low_complement(induced_high_set(d, a, HighKind::untrusted));
  LowSet pub = low_complement(induced_high_set(d, a, HighKind::secret));
  LowSet low = low_intersect("public-trusted", trusted, pub);
  return ObserverSets{std::move(trusted), std::move(pub), std::move(low)};
}

ExprPtr collapse_high(const LowSet& low, const ExprPtr& e) {
  if (!e) return e;
  if (e->kind() == Expr::Kind::vunitm && !low.member(e->label()))
    return Expr::var(kOpaque, e->pos());
  auto fix = [&](const ExprPtr& sub) { return collapse_high(low, sub); };
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
    case Expr::Kind::bracket:
      return Expr::bracket(a, e->high(), e->label(), e->pos());
    default: return e;  // var, unit, hole carry no subterms to rebuild
  }
}

bool value_equiv(const LowSet& low, const ExprPtr& v1, const ExprPtr& v2) {
  return alpha_equivalent(collapse_high(low, v1), collapse_high(low, v2));
}

bool event_invisible(const LowSet& low, const Event& c) {
  switch (c.kind) {
    case Event::Kind::bullet: return true;
    case Event::Kind::protect: return !low.member(c.label);
    case Event::Kind::downgrade: return !low.member(c.to);
  }
  return true;
}

bool event_equiv(const LowSet& low, const Event& c1, const Event& c2) {
  const bool i1 = event_invisible(low, c1), i2 = event_invisible(low, c2);
  if (i1 || i2) return i1 && i2;
  if (c1.kind != c2.kind) return false;
  if (c1.kind == Event::Kind::protect)
    return same_tree(*c1.label, *c2.label) && value_equiv(low, c1.value, c2.value);
  return c1.aspect == c2.aspect && same_tree(*c1.from, *c2.from) &&
         same_tree(*c1.to, *c2.to) && value_equiv(low, c1.value, c2.value);
}

bool event_identical(const Event& c1, const Event& c2) {
  if (c1.kind != c2.kind) return false;
  switch (c1.kind) {
    case Event::Kind::bullet: return true;
    case Event::Kind::protect:
      return same_tree(*c1.label, *c2.label) && alpha_equivalent(c1.value, c2.value);
    case Event::Kind::downgrade:
      return c1.aspect == c2.aspect && same_tree(*c1.from, *c2.from) &&
             same_tree(*c1.to, *c2.to) && alpha_equivalent(c1.value, c2.value);
  }
  return false;
}

bool trace_equiv(const LowSet& low, const Trace& t1, const Trace& t2) {
  size_t i = 0, j = 0;
  for (;;) {
    while (i < t1.size() && event_invisible(low, t1[i])) ++i;
    while (j < t2.size() && event_invisible(low, t2[j])) ++j;
    if (i == t1.size() || j == t2.size()) break;
    if (!event_equiv(low, t1[i], t2[j])) return false;
    ++i, ++j;
  }
  return i == t1.size() && j == t2.size();
}

bool prefix_equiv(const LowSet& low, const Trace& t1, size_t n1,
                  const Trace& t2, size_t n2) {
  n1 = std::min(n1, t1.size());
  n2 = std::min(n2, t2.size());
  Trace p1(t1.begin(), t1.begin() + static_cast<long>(n1));
  Trace p2(t2.begin(), t2.begin() + static_cast<long>(n2));
  return trace_equiv(low, p1, p2);
}

std::vector<size_t> visible_positions(const LowSet& low, const Trace& t) {
  std::vector<size_t> out;
  for (size_t i = 0; i < t.size(); ++i)
    if (!event_invisible(low, t[i])) out.push_back(i + 1);
  return out;
}

}  // namespace nmifc
