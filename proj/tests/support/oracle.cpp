#include "oracle.hpp"

#include <cassert>
#include <stdexcept>

namespace nmifc::testsupport {

void collect_atoms(const PrincipalPtr& p, std::set<std::string>& out) {
  if (!p) return;
  if (p->kind() == Principal::Kind::atom) out.insert(p->name());
  collect_atoms(p->lhs(), out);
  collect_atoms(p->rhs(), out);
}

ActsForOracle::ActsForOracle(std::vector<std::string> atoms, std::vector<OracleEdge> edges) {
  if (atoms.size() > 6) throw std::invalid_argument("oracle supports at most 6 atoms");
  int n = static_cast<int>(atoms.size());
  bits_ = 1 << n;
  full_ = bits_ == 64 ? ~0ull : (1ull << bits_) - 1;
  var_.resize(n, 0);
  for (int i = 0; i < n; ++i) {
    index_[atoms[static_cast<std::size_t>(i)]] = i;
    for (int v = 0; v < bits_; ++v)
      if ((v >> i) & 1) var_[static_cast<std::size_t>(i)] |= 1ull << v;
  }
  admissible_ = full_;
  for (const OracleEdge& e : edges) {
    Fn who = interp(*Principal::atom(e.who));
    Fn tgt = interp(*e.target);
    // A valuation respects the axiom when who dominates the target on both
    // aspects there.
    std::uint64_t bad = ((~who.conf & tgt.conf) | (~who.integ & tgt.integ)) & full_;
    admissible_ &= ~bad;
  }
}

ActsForOracle::Fn ActsForOracle::interp(const Principal& p) const {
  switch (p.kind()) {
    case Principal::Kind::atom: {
      auto it = index_.find(p.name());
      if (it == index_.end()) throw std::invalid_argument("oracle: unknown atom " + p.name());
      std::uint64_t m = var_[static_cast<std::size_t>(it->second)];
      return {m, m};
    }
    case Principal::Kind::top:
      return {full_, full_};
    case Principal::Kind::bot:
      return {0, 0};
    case Principal::Kind::proj: {
      Fn c = interp(*p.lhs());
      if (p.aspect() == Aspect::conf) return {c.conf, 0};
      return {0, c.integ};
    }
    case Principal::Kind::conj: {
      Fn l = interp(*p.lhs()), r = interp(*p.rhs());
      return {l.conf | r.conf, l.integ | r.integ};
    }
    case Principal::Kind::disj: {
      Fn l = interp(*p.lhs()), r = interp(*p.rhs());
      return {l.conf & r.conf, l.integ & r.integ};
    }
    case Principal::Kind::flow_join: {
      // Join raises confidentiality and lowers integrity.
      Fn l = interp(*p.lhs()), r = interp(*p.rhs());
      return {l.conf | r.conf, l.integ & r.integ};
    }
    case Principal::Kind::flow_meet: {
      Fn l = interp(*p.lhs()), r = interp(*p.rhs());
      return {l.conf & r.conf, l.integ | r.integ};
    }
  }
  assert(false);
  return {};
}

bool ActsForOracle::acts_for(const PrincipalPtr& p, const PrincipalPtr& q) const {
  Fn fp = interp(*p), fq = interp(*q);
  std::uint64_t viol = ((~fp.conf & fq.conf) | (~fp.integ & fq.integ)) & admissible_;
  return viol == 0;
}

bool ActsForOracle::equivalent(const PrincipalPtr& p, const PrincipalPtr& q) const {
  return acts_for(p, q) && acts_for(q, p);
}

bool ActsForOracle::flows_to(const PrincipalPtr& l, const PrincipalPtr& lp) const {
  Fn fl = interp(*l), fp = interp(*lp);
  std::uint64_t conf_viol = (~fp.conf & fl.conf) & admissible_;   // lp^-> must cover l^->
  std::uint64_t integ_viol = (~fl.integ & fp.integ) & admissible_; // l^<- must cover lp^<-
  return (conf_viol | integ_viol) == 0;
}

}  // namespace nmifc::testsupport
