#pragma once

#include <array>

#include "nmifc/checkers.hpp"

namespace nmifc {

// Membership tests for the 4-safety formulations. The four traces are ordered
// {t11, t12, t21, t22}: the first index fixes the secret input, the second the
// attack. Each trace must begin with its two input markers; quadruples whose
// markers disagree on a shared input are members vacuously.
//
// index_cap bounds the cut-point enumeration (0 = unbounded). The
// nonmalleability property is the intersection of the other two.
bool rd_hyper_member(const DelegationSet& d, const Attacker& a,
                     const std::array<Trace, 4>& t, std::size_t index_cap = 0);
bool te_hyper_member(const DelegationSet& d, const Attacker& a,
                     const std::array<Trace, 4>& t, std::size_t index_cap = 0);
bool nmif_hyper_member(const DelegationSet& d, const Attacker& a,
                       const std::array<Trace, 4>& t, std::size_t index_cap = 0);

}  // namespace nmifc
