#pragma once

#include <string>
#include <vector>

#include "nmifc/lattice.hpp"
#include "nmifc/syntax.hpp"

namespace nmifc {

/// One trace element: either a silent step, a protection event carrying the
/// label and the value that became protected, or a downgrade event carrying
/// the aspect, the source and target labels, and the moved value. Values are
/// captured at emission time (the AST is immutable, so sharing is safe).
struct Event {
  enum class Kind { bullet, protect, downgrade };

  Kind kind = Kind::bullet;
  PrincipalPtr label;  // protect target
  Aspect aspect = Aspect::conf;
  PrincipalPtr from, to;  // downgrade source and target
  ExprPtr value;

  static Event bullet() { return {}; }
  static Event protect(PrincipalPtr l, ExprPtr v) {
    Event e;
    e.kind = Kind::protect;
    e.label = std::move(l);
    e.value = std::move(v);
    return e;
  }
  static Event downgrade(Aspect a, PrincipalPtr from, PrincipalPtr to, ExprPtr v) {
    Event e;
    e.kind = Kind::downgrade;
    e.aspect = a;
    e.from = std::move(from);
    e.to = std::move(to);
    e.value = std::move(v);
    return e;
  }
};

using Trace = std::vector<Event>;

struct Config {
  ExprPtr expr;
  Trace trace;
  int fuel = 10000;
};

enum class StepStatus {
  stepped,      // one step taken, one event appended
  value,        // expr is a value; no step possible
  stuck,        // no rule applies (ill-typed term)
  out_of_fuel,  // budget exhausted before reaching a value
};

struct EvalOptions {
  /// Program-counter label of the whole program; feeds the pc bookkeeping on
  /// bracket nodes so stepped terms keep typing. Null means top^<-.
  PrincipalPtr pc;
};

/// Applies exactly one top-level step to c.expr, appending exactly one event.
/// Returns stepped, or value/stuck without modifying c (fuel is only spent on
/// actual steps).
StepStatus step(const DelegationSet& d, Config& c, const EvalOptions& opts = {});

/// Iterates step until a value, a stuck term, or fuel runs out.
StepStatus eval(const DelegationSet& d, Config& c, const EvalOptions& opts = {});

/// Strips every bracket node, recursing through all other forms.
ExprPtr bracket_project(const ExprPtr& e);

/// Projects the value payload of every event; bullets are kept.
Trace bracket_project(const Trace& t);

/// Serialized forms. JSON:
/// [{"ev":"bullet"} | {"ev":"protect","label":str,"value":ast}
///  | {"ev":"downgrade","aspect":"conf"|"integ","from":str,"to":str,"value":ast}]
std::string trace_to_json(const Trace& t, bool pretty = false);
std::string event_to_json(const Event& e);

/// One event per line: "." / "protect <label> <value>" /
/// "downgrade <aspect> <from> -> <to> <value>".
std::string trace_to_text(const Trace& t);

}  // namespace nmifc
