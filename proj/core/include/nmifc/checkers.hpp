#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmifc/attacker.hpp"
#include "nmifc/equivalence.hpp"
#include "nmifc/eval.hpp"
#include "nmifc/typecheck.hpp"

namespace nmifc {

enum class VerdictKind { pass, downgrade_witness, violation, skip };
std::string verdict_name(VerdictKind k);

// A finite stand-in for a "for all values" quantifier.
struct InputPool {
  TypePtr type;
  std::vector<ExprPtr> values;
};

struct Pools {
  InputPool secret;  // bound to x
  InputPool attack;  // bound to y
};

struct SecurityOptions {
  PrincipalPtr pc;        // null: the protected default, top integrity
  long fuel = 100000;     // per run
  std::size_t index_cap = 0;  // max index quadruples per search, 0 = unbounded
  bool unsafe = false;    // skip type checking (for deliberately broken inputs)
};

// A four-run counterexample. For the downgrading conditions, v1/v2 are the
// secret inputs and w1/w2 the attacks, and traces[i][j] corresponds to the
// run with (v_{i+1}, w_{j+1}) flattened as {11, 12, 21, 22}. For an
// irrelevance witness, v1/v2 are the tested input and its alternative and
// w1/w2 the other input's values, with traces indexed (tested, other).
struct QuadrupleWitness {
  ExprPtr v1, v2, w1, w2;
  std::array<Trace, 4> traces;
  std::optional<std::array<std::size_t, 4>> indices;  // 1-based n11,n12,n21,n22
  int clause = 0;  // which clause of the nonmalleability condition, 1 or 2
};

struct Verdict {
  VerdictKind kind = VerdictKind::pass;
  std::string reason;
  bool fuel_exhausted = false;
  std::optional<Event> event;  // the downgrade that excuses a trace difference
  std::optional<QuadrupleWitness> witness;
};

// Noninterference comes in three strengths:
//   modulo_downgrading: any high set; trace differences must be excused by a
//     downgrade event leaving the high set
//   high_pc: attacker-induced high set (untrusted or secret); requires a pc
//     that is high on some aspect; no excuse permitted
//   secret_untrusted: high set is the intersection of the induced untrusted
//     and secret sets; no excuse permitted
enum class NiVariant { modulo_downgrading, high_pc, secret_untrusted };

struct NiSetup {
  NiVariant variant = NiVariant::modulo_downgrading;
  std::optional<HighSet> high;      // modulo_downgrading: required
  std::optional<Attacker> attacker; // high_pc, secret_untrusted: required
  HighKind which = HighKind::untrusted;  // high_pc: which induced set
};

// Shared evaluation results, keyed by the substituted input values. Lets the
// downgrading checkers and the irrelevance searches they trigger reuse runs.
struct RunRecord {
  ExprPtr value;
  Trace trace;  // input markers first
  bool out_of_fuel = false;
  bool stuck = false;
};
using RunCache = std::map<std::pair<const Expr*, const Expr*>, RunRecord>;

// The always-visible label used to mark inputs at the head of a trace.
PrincipalPtr marker_label();

Verdict check_noninterference(const DelegationSet& d, const ExprPtr& e,
                              const std::string& var, const TypePtr& ty,
                              const NiSetup& setup, const ExprPtr& v1,
                              const ExprPtr& v2, const SecurityOptions& opts);

struct Relevance {
  bool irrelevant = false;
  std::optional<QuadrupleWitness> witness;
  bool fuel_exhausted = false;
};

// Searches the pools for a demonstration that v1 cannot matter: an
// alternative tested value plus a pair of other-side inputs whose four runs
// agree on everything public-trusted, look the same under the opposite
// aspect's observer when the tested input is v1, yet differ under that
// observer with the alternative. aspect names the side v1 belongs to:
// integ tests an attack, conf tests a secret.
Relevance irrelevant_input(const DelegationSet& d, const ExprPtr& e,
                           const std::string& xvar, const TypePtr& tx,
                           const std::string& yvar, const TypePtr& ty,
                           const Attacker& a, Aspect aspect, const ExprPtr& v1,
                           const Pools& pools, const SecurityOptions& opts,
                           RunCache* cache = nullptr);

Verdict check_robust_declassification(const DelegationSet& d, const ExprPtr& e,
                                      const std::string& xvar, const TypePtr& tx,
                                      const std::string& yvar, const TypePtr& ty,
                                      const Attacker& a, const Pools& pools,
                                      const SecurityOptions& opts);

Verdict check_transparent_endorsement(const DelegationSet& d, const ExprPtr& e,
                                      const std::string& xvar, const TypePtr& tx,
                                      const std::string& yvar, const TypePtr& ty,
                                      const Attacker& a, const Pools& pools,
                                      const SecurityOptions& opts);

Verdict check_nmif(const DelegationSet& d, const ExprPtr& e,
                   const std::string& xvar, const TypePtr& tx,
                   const std::string& yvar, const TypePtr& ty, const Attacker& a,
                   const Pools& pools, const SecurityOptions& opts);

// Syntactic scan, brackets included.
bool contains_kind(const ExprPtr& e, Expr::Kind k);

}  // namespace nmifc
