#include "nmifc/attacker.hpp"

#include <stdexcept>

namespace nmifc {

PrincipalPtr Attacker::combined() const {
  if (atoms.empty()) throw std::invalid_argument("attacker needs at least one atom");
  PrincipalPtr p = Principal::atom(atoms.front());
  for (size_t i = 1; i < atoms.size(); ++i)
    p = Principal::conj(p, Principal::atom(atoms[i]));
  return p;
}

bool Attacker::controls(const DelegationSet& d, const PrincipalPtr& l) const {
  return acts_for(d, combined(), l);
}

HighSet induced_high_set(const DelegationSet& d, const Attacker& a,
                         HighKind kind) {
  // The closure owns copies: it must outlive the call site, and DelegationSet
  // memoizes per aspect so repeated membership queries stay cheap.
  auto dcopy = std::make_shared<DelegationSet>(d);
  PrincipalPtr who = a.combined();
  if (kind == HighKind::untrusted) {
    return HighSet{"untrusted", [dcopy, who](const PrincipalPtr& l) {
                     return acts_for(*dcopy, who, project(l, Aspect::integ));
                   }};
  }
  return HighSet{"secret", [dcopy, who](const PrincipalPtr& l) {
                   return !acts_for(*dcopy, who, project(l, Aspect::conf));
                 }};
}

HighSet intersect_high_sets(const std::string& name, const HighSet& h1,
                            const HighSet& h2) {
  return HighSet{name, [h1, h2](const PrincipalPtr& l) {
                   return h1.member(l) && h2.member(l);
                 }};
}

}  // namespace nmifc
