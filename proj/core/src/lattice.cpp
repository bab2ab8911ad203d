#include "nmifc/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nmifc {

Cnf Cnf::top() { return clause({}); }

Cnf Cnf::atom(const std::string& name) { return clause({name}); }

Cnf Cnf::clause(Clause c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  Cnf out;
  out.clauses_.push_back(std::move(c));
  return out;
}

bool Cnf::is_top() const { return clauses_.size() == 1 && clauses_[0].empty(); }

void Cnf::absorb() {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
  std::vector<Clause> kept;
  for (const Clause& c : clauses_) {
    bool dominated = false;
    for (const Clause& other : clauses_) {
      if (&other == &c) continue;
      // other subset-of c: c adds nothing to the conjunction.
      if (other.size() < c.size() &&
          std::includes(c.begin(), c.end(), other.begin(), other.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(c);
  }
  clauses_ = std::move(kept);
}

Cnf Cnf::conj(const Cnf& a, const Cnf& b) {
  Cnf out;
  out.clauses_ = a.clauses_;
  out.clauses_.insert(out.clauses_.end(), b.clauses_.begin(), b.clauses_.end());
  out.absorb();
  return out;
}

Cnf Cnf::disj(const Cnf& a, const Cnf& b) {
  Cnf out;
  for (const Clause& ca : a.clauses_) {
    for (const Clause& cb : b.clauses_) {
      Clause merged;
      std::set_union(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(merged));
      out.clauses_.push_back(std::move(merged));
    }
  }
  out.absorb();
  return out;
}

NormalForm normalize(const Principal& p) {
  switch (p.kind()) {
    case Principal::Kind::atom:
      return {Cnf::atom(p.name()), Cnf::atom(p.name())};
    case Principal::Kind::top:
      return {Cnf::top(), Cnf::top()};
    case Principal::Kind::bot:
      return {Cnf::bottom(), Cnf::bottom()};
    case Principal::Kind::proj: {
      NormalForm n = normalize(*p.lhs());
      if (p.aspect() == Aspect::conf) return {n.conf, Cnf::bottom()};
      return {Cnf::bottom(), n.integ};
    }
    case Principal::Kind::conj: {
      NormalForm l = normalize(*p.lhs()), r = normalize(*p.rhs());
      return {Cnf::conj(l.conf, r.conf), Cnf::conj(l.integ, r.integ)};
    }
    case Principal::Kind::disj: {
      NormalForm l = normalize(*p.lhs()), r = normalize(*p.rhs());
      return {Cnf::disj(l.conf, r.conf), Cnf::disj(l.integ, r.integ)};
    }
    case Principal::Kind::flow_join: {
      NormalForm l = normalize(*p.lhs()), r = normalize(*p.rhs());
      return {Cnf::conj(l.conf, r.conf), Cnf::disj(l.integ, r.integ)};
    }
    case Principal::Kind::flow_meet: {
      NormalForm l = normalize(*p.lhs()), r = normalize(*p.rhs());
      return {Cnf::disj(l.conf, r.conf), Cnf::conj(l.integ, r.integ)};
    }
  }
  throw std::logic_error("normalize: bad principal kind");
}

NormalForm normalize(const PrincipalPtr& p) { return normalize(*p); }

namespace {

PrincipalPtr raw_of_cnf(const Cnf& c) {
  if (c.is_bottom()) return Principal::bot();
  if (c.is_top()) return Principal::top();
  PrincipalPtr conj;
  for (const Cnf::Clause& cl : c.clauses()) {
    PrincipalPtr disj;
    for (const std::string& name : cl) {
      PrincipalPtr a = Principal::atom(name);
      disj = disj ? Principal::disj(disj, a) : a;
    }
    conj = conj ? Principal::conj(conj, disj) : disj;
  }
  return conj;
}

}  // namespace

PrincipalPtr denote_component(const Cnf& c, Aspect as_aspect) {
  return Principal::proj(raw_of_cnf(c), as_aspect);
}

PrincipalPtr denote(const NormalForm& nf) {
  return Principal::conj(denote_component(nf.conf, Aspect::conf),
                         denote_component(nf.integ, Aspect::integ));
}

DelegationSet::DelegationSet(const DelegationSet& o) {
  std::lock_guard<std::mutex> lk(o.mu_);
  axioms_ = o.axioms_;
  bodies_[0] = o.bodies_[0];
  bodies_[1] = o.bodies_[1];
  memo_[0] = o.memo_[0];
  memo_[1] = o.memo_[1];
}

DelegationSet& DelegationSet::operator=(const DelegationSet& o) {
  if (this == &o) return *this;
  DelegationSet copy(o);
  std::lock_guard<std::mutex> lk(mu_);
  axioms_ = std::move(copy.axioms_);
  bodies_[0] = std::move(copy.bodies_[0]);
  bodies_[1] = std::move(copy.bodies_[1]);
  memo_[0] = std::move(copy.memo_[0]);
  memo_[1] = std::move(copy.memo_[1]);
  return *this;
}

void DelegationSet::add(const std::string& who, const PrincipalPtr& acts_for) {
  std::lock_guard<std::mutex> lk(mu_);
  axioms_.emplace_back(who, acts_for);
  NormalForm nf = normalize(acts_for);
  bodies_[0].emplace_back(who, nf.conf);
  bodies_[1].emplace_back(who, nf.integ);
  memo_[0].clear();
  memo_[1].clear();
}

std::set<std::string> DelegationSet::support(Aspect a, const Cnf::Clause& d) const {
  const int idx = a == Aspect::conf ? 0 : 1;
  std::lock_guard<std::mutex> lk(mu_);
  auto it = memo_[idx].find(d);
  if (it != memo_[idx].end()) return it->second;

  std::set<std::string> s(d.begin(), d.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [who, body] : bodies_[idx]) {
      if (s.count(who)) continue;
      for (const Cnf::Clause& c : body.clauses()) {
        bool inside = true;
        for (const std::string& atom : c)
          if (!s.count(atom)) {
            inside = false;
            break;
          }
        if (inside) {
          s.insert(who);
          changed = true;
          break;
        }
      }
    }
  }
  memo_[idx].emplace(d, s);
  return s;
}

namespace {

bool covers_plain(const Cnf& p, const Cnf::Clause& d) {
  for (const Cnf::Clause& c : p.clauses())
    if (std::includes(d.begin(), d.end(), c.begin(), c.end())) return true;
  return false;
}

bool covers_supported(const Cnf& p, const std::set<std::string>& s) {
  for (const Cnf::Clause& c : p.clauses()) {
    bool inside = true;
    for (const std::string& atom : c)
      if (!s.count(atom)) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return false;
}

bool cnf_geq(const DelegationSet& d, Aspect a, const Cnf& p, const Cnf& q) {
  for (const Cnf::Clause& target : q.clauses()) {
    if (d.empty()) {
      if (!covers_plain(p, target)) return false;
    } else {
      if (!covers_supported(p, d.support(a, target))) return false;
    }
  }
  return true;
}

}  // namespace

bool acts_for(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q) {
  NormalForm np = normalize(p), nq = normalize(q);
  return cnf_geq(d, Aspect::conf, np.conf, nq.conf) &&
         cnf_geq(d, Aspect::integ, np.integ, nq.integ);
}

bool flows_to(const DelegationSet& d, const PrincipalPtr& l, const PrincipalPtr& l2) {
  NormalForm n1 = normalize(l), n2 = normalize(l2);
  return cnf_geq(d, Aspect::conf, n2.conf, n1.conf) &&
         cnf_geq(d, Aspect::integ, n1.integ, n2.integ);
}

bool equivalent(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q) {
  NormalForm np = normalize(p), nq = normalize(q);
  return cnf_geq(d, Aspect::conf, np.conf, nq.conf) &&
         cnf_geq(d, Aspect::conf, nq.conf, np.conf) &&
         cnf_geq(d, Aspect::integ, np.integ, nq.integ) &&
         cnf_geq(d, Aspect::integ, nq.integ, np.integ);
}

NormalForm flow_join(const NormalForm& a, const NormalForm& b) {
  return {Cnf::conj(a.conf, b.conf), Cnf::disj(a.integ, b.integ)};
}

NormalForm flow_meet(const NormalForm& a, const NormalForm& b) {
  return {Cnf::disj(a.conf, b.conf), Cnf::conj(a.integ, b.integ)};
}

PrincipalPtr flow_join(const PrincipalPtr& l, const PrincipalPtr& l2) {
  return denote(flow_join(normalize(l), normalize(l2)));
}

PrincipalPtr flow_meet(const PrincipalPtr& l, const PrincipalPtr& l2) {
  return denote(flow_meet(normalize(l), normalize(l2)));
}

PrincipalPtr voice(const PrincipalPtr& l) {
  return denote_component(normalize(l).conf, Aspect::integ);
}

PrincipalPtr view(const PrincipalPtr& l) {
  return denote_component(normalize(l).integ, Aspect::conf);
}

PrincipalPtr project(const PrincipalPtr& p, Aspect a) {
  return denote_component(normalize(p).component(a), a);
}

CoverReport acts_for_explain(const DelegationSet& d, const PrincipalPtr& p, const PrincipalPtr& q) {
  NormalForm np = normalize(p), nq = normalize(q);
  CoverReport report;
  report.result = true;
  for (Aspect a : {Aspect::conf, Aspect::integ}) {
    const Cnf& pc = np.component(a);
    const Cnf& qc = nq.component(a);
    for (const Cnf::Clause& target : qc.clauses()) {
      CoverReport::ClauseEntry entry;
      entry.aspect = a;
      entry.target = target;
      std::set<std::string> s;
      if (d.empty())
        s.insert(target.begin(), target.end());
      else
        s = d.support(a, target);
      for (const std::string& atom : s)
        if (!std::binary_search(target.begin(), target.end(), atom))
          entry.support_added.push_back(atom);
      for (const Cnf::Clause& c : pc.clauses()) {
        bool inside = true;
        for (const std::string& atom : c)
          if (!s.count(atom)) {
            inside = false;
            break;
          }
        if (inside) {
          entry.covered_by = c;
          break;
        }
      }
      if (!entry.covered_by) report.result = false;
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

namespace {

bool valid_atom_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != "top" && s != "bot";
}

LatticeConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("lattice config must be a JSON object");
  LatticeConfig cfg;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ConfigError("\"atoms\" must be an array of names");
    for (const auto& a : j.at("atoms")) {
      if (!a.is_string() || !valid_atom_name(a.get<std::string>()))
        throw ConfigError("\"atoms\" entries must be atomic principal names");
      cfg.atoms.push_back(a.get<std::string>());
    }
  }
  if (j.contains("delegations")) {
    if (!j.at("delegations").is_array())
      throw ConfigError("\"delegations\" must be an array of {who, actsFor} objects");
    for (const auto& entry : j.at("delegations")) {
      if (!entry.is_object() || !entry.contains("who") || !entry.contains("actsFor"))
        throw ConfigError("each delegation needs \"who\" and \"actsFor\" fields");
      if (!entry.at("who").is_string() || !valid_atom_name(entry.at("who").get<std::string>()))
        throw ConfigError("delegation \"who\" must be an atomic principal name");
      if (!entry.at("actsFor").is_string())
        throw ConfigError("delegation \"actsFor\" must be a principal string");
      const std::string who = entry.at("who").get<std::string>();
      const std::string body = entry.at("actsFor").get<std::string>();
      try {
        cfg.delegations.add(who, parse_principal(body));
      } catch (const PrincipalParseError& e) {
        throw ConfigError("delegation \"" + who + "\": bad principal \"" + body +
                          "\": " + e.what());
      }
    }
  }
  return cfg;
}

}  // namespace

LatticeConfig load_lattice_config_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("lattice config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

LatticeConfig load_lattice_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lattice config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_lattice_config_text(buf.str());
}

}  // namespace nmifc
