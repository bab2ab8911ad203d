#pragma once

#include <string>
#include <vector>

#include "nmifc/highset.hpp"
#include "nmifc/lattice.hpp"
#include "nmifc/principal.hpp"

namespace nmifc {

// An attacker is a finite set of atomic principal names. It controls exactly
// the principals the conjunction of those atoms acts for.
struct Attacker {
  std::vector<std::string> atoms;

  // n1 & n2 & ... & nk as a principal. Requires a nonempty atom set.
  PrincipalPtr combined() const;

  // True when the attacker's combined principal acts for l.
  bool controls(const DelegationSet& d, const PrincipalPtr& l) const;
};

enum class HighKind { untrusted, secret };

// The high set an attacker induces on each aspect:
//   untrusted: labels whose integrity the attacker controls
//   secret:    labels whose confidentiality the attacker does not control
HighSet induced_high_set(const DelegationSet& d, const Attacker& a,
                         HighKind kind);

// Pointwise intersection, used for the combined secret-and-untrusted set.
HighSet intersect_high_sets(const std::string& name, const HighSet& h1,
                            const HighSet& h2);

}  // namespace nmifc
