#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nmifc/attacker.hpp"
#include "nmifc/eval.hpp"
#include "nmifc/highset.hpp"

namespace nmifc {

// The observer's vantage point: the set of labels whose events it can see.
// Always constructed as the complement of a high set (or an intersection of
// such complements), so it is downward closed under flow.
struct LowSet {
  std::string name;
  std::function<bool(const PrincipalPtr&)> member;
};

LowSet low_complement(const HighSet& h);
LowSet low_intersect(const std::string& name, const LowSet& a, const LowSet& b);

// The three observers an attacker induces: trusted (complement of untrusted),
// public (complement of secret), and their intersection.
struct ObserverSets {
  LowSet trusted;
  LowSet pub;
  LowSet low;
};
ObserverSets observer_sets(const DelegationSet& d, const Attacker& a);

// Replaces every protected subvalue whose label is outside `low` with an
// opaque placeholder, so two values compare equal exactly when the observer
// cannot tell them apart.
ExprPtr collapse_high(const LowSet& low, const ExprPtr& e);

// Congruence on values extended with the opaque placeholder.
bool value_equiv(const LowSet& low, const ExprPtr& v1, const ExprPtr& v2);

// True when the observer sees nothing at this event: trivial steps, and
// protect/downgrade events whose target label is outside `low`.
bool event_invisible(const LowSet& low, const Event& c);

// Event equivalence: both invisible, or same shape with equal labels and
// equivalent values.
bool event_equiv(const LowSet& low, const Event& c1, const Event& c2);

// Strict structural event equality (labels compared as trees, values up to
// alpha). Used for the input-agreement checks on marked traces.
bool event_identical(const Event& c1, const Event& c2);

// Trace equivalence: drop invisible events, then require equal length and
// pointwise event equivalence.
bool trace_equiv(const LowSet& low, const Trace& t1, const Trace& t2);

// Equivalence of the first n1 / n2 events of each trace.
bool prefix_equiv(const LowSet& low, const Trace& t1, size_t n1,
                  const Trace& t2, size_t n2);

// 1-based positions of events the observer can see.
std::vector<size_t> visible_positions(const LowSet& low, const Trace& t);

}  // namespace nmifc
