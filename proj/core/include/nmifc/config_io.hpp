#pragma once

#include <string>

#include "nmifc/checkers.hpp"
#include "nmifc/lattice.hpp"

namespace nmifc {

// How to treat the attack pool's entries. Programs with adversary holes take
// arbitrary expressions that are typed later, against the hole's own context;
// everything else takes closed values of the declared type.
enum class AttackForm { values, exprs };

// Input pools on disk:
//   {"secret": {"type": "...", "values": ["...", ...]},
//    "attack": {"type": "...", "values": ["...", ...]}}
// Types and values use surface syntax. Loading validates each value: closed,
// a value form, and typed at the declared pool type (attack entries exempt
// under AttackForm::exprs). Throws ConfigError.
Pools load_pools_text(const DelegationSet& d, const std::string& json_text,
                      const SecurityOptions& opts = {},
                      AttackForm attack_form = AttackForm::values);
Pools load_pools_file(const DelegationSet& d, const std::string& path,
                      const SecurityOptions& opts = {},
                      AttackForm attack_form = AttackForm::values);

// The report a verification run emits: condition name, attacker atoms, pool
// sizes and contents, the verdict, and a witness when one exists.
std::string verdict_report_json(const std::string& condition, const Attacker& a,
                                const Pools& pools, const Verdict& v,
                                bool pretty = false);

}  // namespace nmifc
