#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nmifc/principal.hpp"

namespace nmifc {

/// One normal-form component: a conjunction of clauses, each clause a
/// disjunction of atomic names. The empty clause set denotes bot (no
/// authority); the set holding the empty clause denotes top.
///
/// Invariant: clauses are sorted and duplicate-free, atoms within a clause are
/// sorted and duplicate-free, and no clause is a superset of another
/// (absorption leaves an antichain).
class Cnf {
 public:
  using Clause = std::vector<std::string>;

  static Cnf bottom() { return Cnf{}; }
  static Cnf top();
  static Cnf atom(const std::string& name);
  static Cnf clause(Clause c);

  bool is_bottom() const { return clauses_.empty(); }
  bool is_top() const;

  const std::vector<Clause>& clauses() const { return clauses_; }

  /// Lattice operations in the authority order: conj is the least upper
  /// bound (clause union), disj the greatest lower bound (pairwise clause
  /// merge), both followed by absorption.
  static Cnf conj(const Cnf& a, const Cnf& b);
  static Cnf disj(const Cnf& a, const Cnf& b);

  bool operator==(const Cnf& o) const { return clauses_ == o.clauses_; }
  bool operator!=(const Cnf& o) const { return !(*this == o); }
  bool operator<(const Cnf& o) const { return clauses_ < o.clauses_; }

 private:
  std::vector<Clause> clauses_;
  void absorb();
};

/// Canonical form of a principal: confidentiality and integrity CNF
/// components, denoting conf^-> & integ^<-.
struct NormalForm {
  Cnf conf;
  Cnf integ;

  const Cnf& component(Aspect a) const { return a == Aspect::conf ? conf : integ; }
  bool operator==(const NormalForm& o) const { return conf == o.conf && integ == o.integ; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
};

NormalForm normalize(const Principal& p);
NormalForm normalize(const PrincipalPtr& p);

/// Rebuilds a principal in canonical shape from a normal form.
PrincipalPtr denote(const NormalForm& nf);

/// Rebuilds one component as a projected principal (e.g. the conf component
/// re-labeled as an integrity projection, as voice does).
PrincipalPtr denote_component(const Cnf& c, Aspect as_aspect);

/// Finitely many static delegation axioms `who acts-for body` with atomic
/// heads. Immutable after setup; the per-clause support memo is internally
/// synchronized so a set can be shared across threads.
class DelegationSet {
 public:
  DelegationSet() = default;
  DelegationSet(const DelegationSet& o);
  DelegationSet& operator=(const DelegationSet& o);

  void add(const std::string& who, const PrincipalPtr& acts_for);
  const std::vector<std::pair<std::string, PrincipalPtr>>& axioms() const { return axioms_; }
  bool empty() const { return axioms_.empty(); }

  /// Support of a clause D under this delegation set: the least set S of
  /// atomic names containing D's atoms and closed under "n acts for the
  /// clause via some clause of its axiom body lying inside S".
  std::set<std::string> support(Aspect a, const Cnf::Clause& d) const;

 private:
  std::vector<std::pair<std::string, PrincipalPtr>> axioms_;
  // Axiom bodies pre-normalized per aspect.
  std::vector<std::pair<std::string, Cnf>> bodies_[2];

  mutable std::mutex mu_;
  mutable std::map<Cnf::Clause, std::set<std::string>> memo_[2];
};

/// Decision procedures. acts_for decides the trust ordering p >= q by
/// per-aspect CNF clause covering extended with delegation supports;
/// flows_to decides the information-flow ordering by the aspect-wise
/// decomposition l <= l' iff l'^-> >= l^-> and l^<- >= l'^<-.
bool acts_for(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q);
bool flows_to(const DelegationSet& d, const PrincipalPtr& l, const PrincipalPtr& l2);

/// Mutual acts-for; the only notion of label equality used by typing.
bool equivalent(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q);

PrincipalPtr flow_join(const PrincipalPtr& l, const PrincipalPtr& l2);
PrincipalPtr flow_meet(const PrincipalPtr& l, const PrincipalPtr& l2);
NormalForm flow_join(const NormalForm& a, const NormalForm& b);
NormalForm flow_meet(const NormalForm& a, const NormalForm& b);

/// voice(p^-> & q^<-) = p^<-: the integrity needed to speak for the
/// confidentiality component.
PrincipalPtr voice(const PrincipalPtr& l);

/// view(p^-> & q^<-) = q^->: the confidentiality the integrity component may
/// read over.
PrincipalPtr view(const PrincipalPtr& l);

/// Aspect projection on normal forms, returned as a principal.
PrincipalPtr project(const PrincipalPtr& p, Aspect a);

/// Per-clause covering report for diagnostics and the CLI explainer.
struct CoverReport {
  struct ClauseEntry {
    Aspect aspect;
    Cnf::Clause target;                  // clause of q needing a cover
    std::optional<Cnf::Clause> covered_by;  // clause of p inside the support
    std::vector<std::string> support_added; // atoms added by delegations
  };
  bool result = false;
  std::vector<ClauseEntry> entries;
};

CoverReport acts_for_explain(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q);

/// Lattice configuration file: {"atoms": [...], "delegations":
/// [{"who": name, "actsFor": principal}]}.
struct LatticeConfig {
  std::vector<std::string> atoms;
  DelegationSet delegations;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LatticeConfig load_lattice_config_file(const std::string& path);
LatticeConfig load_lattice_config_text(const std::string& json_text);

}  // namespace nmifc
