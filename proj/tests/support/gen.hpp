#pragma once

// Seeded generators used by the property and acceptance tests: random
// principals, delegation sets, attackers, first-order input types, values of
// a type, and well-typed two-input programs with premise-checked downgrades.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nmifc/ast.hpp"
#include "nmifc/lattice.hpp"

#include "oracle.hpp"

namespace nmifc::testsupport {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  std::size_t pick(std::size_t n);       // uniform in [0, n)
  bool chance(double p);

  // Random principal AST with at most max_nodes nodes. fig_rules_only
  // restricts to the constructs of the proof rules (no flow join/meet).
  PrincipalPtr principal(const std::vector<std::string>& atoms, int max_nodes,
                         bool fig_rules_only = false);

  // count random edges: atom head, small principal target.
  std::vector<OracleEdge> edges(const std::vector<std::string>& atoms, int count,
                                int max_target_nodes);

  // A value of t built from vunitm / pairs / injections / unit.
  // Requires a first-order type (no functions or quantifiers).
  ExprPtr value_of(const TypePtr& t);

  // All values of a small first-order type, in a fixed order (used as pools;
  // callers cap the count). Sums multiply, so keep types small.
  std::vector<ExprPtr> all_values(const TypePtr& t);

 private:
  std::mt19937_64 rng_;
};

// One generated verification subject: body has free vars x and y.
struct GeneratedProgram {
  ExprPtr body;
  TypePtr tx, ty;
  PrincipalPtr pc;
};

struct ProgramGenOptions {
  int max_nodes = 30;
  double downgrade_weight = 0.3;  // relative preference for decl/endorse
  bool allow_downgrades = true;
  PrincipalPtr pc;                // null: top integrity
};

// Type-directed generation of a well-typed program over the given lattice.
// The result always type-checks (the generator re-checks and retries).
GeneratedProgram generate_program(Gen& g, const DelegationSet& d,
                                  const std::vector<std::string>& atoms,
                                  const ProgramGenOptions& opts = {});

std::size_t expr_size(const ExprPtr& e);

}  // namespace nmifc::testsupport
