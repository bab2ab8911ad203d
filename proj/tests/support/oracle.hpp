#pragma once

// Reference model for the principal ordering, independent of the production
// decision procedure. The static fragment is, per aspect, the free
// distributive lattice over the atoms, so p acts for q exactly when the
// interpretation of p dominates that of q pointwise under every two-valued
// valuation of the atoms. Delegation axioms restrict which valuations are
// admissible. Both soundness and completeness of this model follow from the
// prime-filter representation of finitely presented distributive lattices,
// so any disagreement with the production code is a real bug on one side.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nmifc/principal.hpp"

namespace nmifc::testsupport {

struct OracleEdge {
  std::string who;       // atom name
  PrincipalPtr target;   // arbitrary principal the atom acts for
};

// Collects atom names appearing in p into out.
void collect_atoms(const PrincipalPtr& p, std::set<std::string>& out);

class ActsForOracle {
 public:
  // Supports up to 6 atoms (64 valuations). Every atom used in later queries
  // must be listed here.
  ActsForOracle(std::vector<std::string> atoms, std::vector<OracleEdge> edges = {});

  bool acts_for(const PrincipalPtr& p, const PrincipalPtr& q) const;
  bool equivalent(const PrincipalPtr& p, const PrincipalPtr& q) const;
  bool flows_to(const PrincipalPtr& l, const PrincipalPtr& lp) const;

 private:
  struct Fn {
    std::uint64_t conf = 0;
    std::uint64_t integ = 0;
  };
  Fn interp(const Principal& p) const;

  std::map<std::string, int> index_;
  int bits_ = 0;               // number of valuations = 1 << atom count
  std::uint64_t full_ = 0;     // mask with one bit per valuation
  std::uint64_t admissible_ = 0;
  std::vector<std::uint64_t> var_;  // var_[i]: valuations where atom i holds
};

}  // namespace nmifc::testsupport
