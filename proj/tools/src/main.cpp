// nmifc: lattice queries, type checking, trace-emitting evaluation, and
// security verification from the command line.
//
// Exit codes: 0 pass, 1 violation, 2 type error, 3 parse/config error,
// 4 fuel exhausted, 5 condition skipped.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nmifc/attacker.hpp"
#include "nmifc/checkers.hpp"
#include "nmifc/config_io.hpp"
#include "nmifc/desugar.hpp"
#include "nmifc/equivalence.hpp"
#include "nmifc/eval.hpp"
#include "nmifc/highset.hpp"
#include "nmifc/hypermember.hpp"
#include "nmifc/lattice.hpp"
#include "nmifc/subst.hpp"
#include "nmifc/syntax.hpp"
#include "nmifc/typecheck.hpp"

namespace {

using namespace nmifc;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitType = 2;
constexpr int kExitParse = 3;
constexpr int kExitFuel = 4;
constexpr int kExitSkip = 5;

struct GlobalOpts {
  std::string lattice_path;
  std::string pc_text;
  std::string format = "text";
  long fuel = 100000;
  unsigned long long seed = 0;  // reserved for generated inputs
  bool unsafe = false;
  bool pretty = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

// Line and column of a byte offset, 1-based.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); i++) {
    if (text[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return {line, col};
}

// The lattice and pc a command runs under: command line first, then the
// program file's directives, then the defaults.
struct Env {
  LatticeConfig lattice;
  PrincipalPtr pc;
};

Env resolve_env(const GlobalOpts& g, const Program* prog, const std::string& prog_path) {
  Env env;
  if (!g.lattice_path.empty()) {
    env.lattice = load_lattice_config_file(g.lattice_path);
  } else if (prog && prog->lattice_path) {
    std::string p = *prog->lattice_path;
    if (!p.empty() && p[0] != '/') p = dir_of(prog_path) + "/" + p;
    env.lattice = load_lattice_config_file(p);
  }
  if (!g.pc_text.empty()) {
    env.pc = parse_principal(g.pc_text);
  } else if (prog && prog->pc) {
    env.pc = prog->pc;
  } else {
    env.pc = marker_label();  // top integrity: public and trusted
  }
  return env;
}

void emit(const json& j, const GlobalOpts& g) {
  std::cout << j.dump(g.pretty ? 2 : -1) << "\n";
}

// ---------------------------------------------------------------- lattice --

// Splits a query into chunks at top-level whitespace; parentheses group.
std::vector<std::string> query_chunks(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') depth++;
    if (c == ')') depth--;
    if (depth == 0 && (c == ' ' || c == '\t' || c == '\n')) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string clause_text(const Cnf::Clause& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); i++) {
    if (i) s += " | ";
    s += c[i];
  }
  return s + "}";
}

json explain_json(const CoverReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je;
    je["aspect"] = e.aspect == Aspect::conf ? "conf" : "integ";
    je["target"] = e.target;
    if (e.covered_by) je["coveredBy"] = *e.covered_by;
    je["supportAdded"] = e.support_added;
    entries.push_back(je);
  }
  return entries;
}

void explain_text(const CoverReport& r) {
  for (const auto& e : r.entries) {
    std::cout << "  " << (e.aspect == Aspect::conf ? "conf" : "integ") << " clause "
              << clause_text(e.target) << ": ";
    if (e.covered_by) {
      std::cout << "covered by " << clause_text(*e.covered_by);
      if (!e.support_added.empty()) {
        std::cout << " (delegations add:";
        for (const auto& n : e.support_added) std::cout << " " << n;
        std::cout << ")";
      }
      std::cout << "\n";
    } else {
      std::cout << "no cover\n";
    }
  }
}

int cmd_lattice(const GlobalOpts& g, const std::vector<std::string>& parts, bool explain) {
  Env env = resolve_env(g, nullptr, "");
  const DelegationSet& d = env.lattice.delegations;
  std::string joined;
  for (const auto& p : parts) {
    if (!joined.empty()) joined += " ";
    joined += p;
  }
  std::vector<std::string> chunks = query_chunks(joined);
  if (chunks.empty()) throw ConfigError("empty lattice query");
  std::string op = chunks[0];
  auto arity = [&](std::size_t n) {
    if (chunks.size() != n + 1)
      throw ConfigError("lattice op '" + op + "' takes " + std::to_string(n) +
                        " principal argument(s)");
  };
  json out;
  out["schema"] = "nmifc.lattice/1";
  out["query"] = joined;

  if (op == "actsfor" || op == "flows") {
    arity(2);
    PrincipalPtr p1 = parse_principal(chunks[1]);
    PrincipalPtr p2 = parse_principal(chunks[2]);
    bool result;
    std::vector<CoverReport> reports;
    if (op == "actsfor") {
      CoverReport r = acts_for_explain(d, p1, p2);
      result = r.result;
      reports.push_back(std::move(r));
    } else {
      // l flows to l' iff l'-> acts for l-> and l<- acts for l'<-.
      CoverReport rc = acts_for_explain(d, project(p2, Aspect::conf), project(p1, Aspect::conf));
      CoverReport ri = acts_for_explain(d, project(p1, Aspect::integ), project(p2, Aspect::integ));
      result = rc.result && ri.result;
      reports.push_back(std::move(rc));
      reports.push_back(std::move(ri));
    }
    if (g.format == "json") {
      out["result"] = result;
      if (explain) {
        json ex = json::array();
        for (const auto& r : reports) ex.push_back(explain_json(r));
        out["explain"] = ex;
      }
      emit(out, g);
    } else {
      std::cout << (result ? "true" : "false") << "\n";
      if (explain)
        for (const auto& r : reports) explain_text(r);
    }
    return kExitPass;
  }

  if (op == "voice" || op == "view") {
    arity(1);
    PrincipalPtr p = parse_principal(chunks[1]);
    PrincipalPtr r = op == "voice" ? voice(p) : view(p);
    if (g.format == "json") {
      out["result"] = to_string(r);
      emit(out, g);
    } else {
      std::cout << to_string(r) << "\n";
    }
    return kExitPass;
  }

  if (op == "join" || op == "meet") {
    arity(2);
    PrincipalPtr p1 = parse_principal(chunks[1]);
    PrincipalPtr p2 = parse_principal(chunks[2]);
    PrincipalPtr r = op == "join" ? flow_join(p1, p2) : flow_meet(p1, p2);
    if (g.format == "json") {
      out["result"] = to_string(r);
      emit(out, g);
    } else {
      std::cout << to_string(r) << "\n";
    }
    return kExitPass;
  }

  throw ConfigError("unknown lattice op '" + op +
                    "' (expected actsfor, flows, voice, view, join, meet)");
}

// ------------------------------------------------------------------ check --

int cmd_check(const GlobalOpts& g, const std::string& file) {
  std::string text = read_file(file);
  Program prog = parse_program(text, {.allow_runtime_forms = true});
  Env env = resolve_env(g, &prog, file);
  try {
    TypePtr t = type_of(env.lattice.delegations, TypingCtx(env.pc), prog.body);
    if (g.format == "json") {
      json out;
      out["schema"] = "nmifc.check/1";
      out["ok"] = true;
      out["type"] = print_type(t);
      emit(out, g);
    } else {
      std::cout << print_type(t) << "\n";
    }
    return kExitPass;
  } catch (const TypeError& err) {
    if (g.format == "json") {
      std::cout << type_error_json(err, text) << "\n";
    } else {
      auto [line, col] = line_col(text, err.pos());
      std::cerr << "type error at " << line << ":" << col << ": " << err.what() << "\n";
    }
    return kExitType;
  }
}

// -------------------------------------------------------------------- run --

std::pair<std::string, ExprPtr> parse_input_binding(const std::string& s) {
  std::size_t eq = s.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--input needs the form name=expression: " + s);
  std::string name = s.substr(0, eq);
  ExprPtr v = parse_expr(s.substr(eq + 1), {.allow_runtime_forms = true});
  return {name, v};
}

int cmd_run(const GlobalOpts& g, const std::string& file,
            const std::vector<std::string>& inputs) {
  std::string text = read_file(file);
  Program prog = parse_program(text, {.allow_runtime_forms = true});
  Env env = resolve_env(g, &prog, file);
  const DelegationSet& d = env.lattice.delegations;

  ExprPtr e = prog.body;
  for (const auto& raw : inputs) {
    auto [name, v] = parse_input_binding(raw);
    e = substitute(e, name, v);
  }
  if (!free_vars(*e).empty()) {
    std::string names;
    for (const auto& n : free_vars(*e)) names += " " + n;
    std::cerr << "unbound variables after --input substitution:" << names << "\n";
    return kExitType;
  }
  if (!g.unsafe) {
    try {
      type_of(d, TypingCtx(env.pc), e);
    } catch (const TypeError& err) {
      if (g.format == "json") {
        std::cout << type_error_json(err, text) << "\n";
      } else {
        std::cerr << "type error: " << err.what() << " (use --unsafe to run anyway)\n";
      }
      return kExitType;
    }
  }

  Config c{e, {}, static_cast<int>(g.fuel)};
  StepStatus st = eval(d, c, {.pc = env.pc});
  if (st == StepStatus::out_of_fuel) {
    std::cerr << "out of fuel after " << g.fuel << " steps\n";
    return kExitFuel;
  }
  if (st == StepStatus::stuck) {
    std::cerr << "evaluation stuck at: " << print_expr(c.expr) << "\n";
    return kExitType;
  }
  if (g.format == "json") {
    json out;
    out["schema"] = "nmifc.run/1";
    out["value"] = print_expr(c.expr);
    out["steps"] = c.trace.size();
    out["trace"] = json::parse(trace_to_json(c.trace));
    emit(out, g);
  } else {
    std::cout << "value: " << print_expr(c.expr) << "\n";
    std::cout << trace_to_text(c.trace);
  }
  return kExitPass;
}

// ----------------------------------------------------------------- verify --

struct VerifyOpts {
  std::string condition;
  std::vector<std::string> atoms;
  std::string pools_path;
  std::string high_kind = "secret";
  std::size_t index_cap = 0;
};

int verdict_exit(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::pass:
    case VerdictKind::downgrade_witness:
      return kExitPass;
    case VerdictKind::violation:
      return kExitViolation;
    case VerdictKind::skip:
      return v.fuel_exhausted ? kExitFuel : kExitSkip;
  }
  return kExitSkip;
}

void print_verdict_text(const std::string& condition, const Verdict& v) {
  std::cout << "condition: " << condition << "\n";
  std::cout << "verdict: " << verdict_name(v.kind) << "\n";
  if (!v.reason.empty()) std::cout << "reason: " << v.reason << "\n";
  if (v.event) std::cout << "event: " << event_to_json(*v.event) << "\n";
  if (v.witness) {
    const QuadrupleWitness& w = *v.witness;
    std::cout << "witness:\n";
    if (w.v1) std::cout << "  v1 = " << print_expr(w.v1) << "\n";
    if (w.v2) std::cout << "  v2 = " << print_expr(w.v2) << "\n";
    if (w.w1) std::cout << "  w1 = " << print_expr(w.w1) << "\n";
    if (w.w2) std::cout << "  w2 = " << print_expr(w.w2) << "\n";
    if (w.indices) {
      std::cout << "  indices =";
      for (std::size_t n : *w.indices) std::cout << " " << n;
      std::cout << "\n";
    }
    if (w.clause) std::cout << "  clause = " << w.clause << "\n";
    std::cout << "  (traces in --format json)\n";
  }
}

// Noninterference sweeps one attack at a time over secret pairs; the most
// severe outcome wins: violation, then fuel exhaustion, then a downgrade
// witness, then pass. Skip only if nothing was checkable.
Verdict ni_sweep(const DelegationSet& d, const ExprPtr& e, const TypePtr& tx,
                 const NiSetup& setup, const Pools& pools, const SecurityOptions& opts,
                 bool subst_attack) {
  std::optional<Verdict> first_fuel, first_dw, first_skip;
  bool any_pass = false;
  std::vector<ExprPtr> attacks = pools.attack.values;
  if (!subst_attack) attacks = {nullptr};
  for (const ExprPtr& w : attacks) {
    ExprPtr ew = w ? substitute(e, "y", w) : e;
    for (std::size_t i = 0; i < pools.secret.values.size(); i++) {
      for (std::size_t j = i + 1; j < pools.secret.values.size(); j++) {
        Verdict v = check_noninterference(d, ew, "x", tx, setup, pools.secret.values[i],
                                          pools.secret.values[j], opts);
        if (w && !v.reason.empty()) v.reason += "; attack y = " + print_expr(w);
        else if (w && v.kind != VerdictKind::pass) v.reason = "attack y = " + print_expr(w);
        switch (v.kind) {
          case VerdictKind::violation:
            return v;
          case VerdictKind::downgrade_witness:
            if (!first_dw) first_dw = v;
            break;
          case VerdictKind::skip:
            if (v.fuel_exhausted && !first_fuel) first_fuel = v;
            if (!first_skip) first_skip = v;
            break;
          case VerdictKind::pass:
            any_pass = true;
            break;
        }
      }
    }
  }
  if (first_fuel) return *first_fuel;
  if (first_dw) return *first_dw;
  if (any_pass) return Verdict{};
  if (first_skip) return *first_skip;
  Verdict v;
  v.kind = VerdictKind::skip;
  v.reason = "nothing to check: need at least two secret pool values";
  return v;
}

int cmd_verify(const GlobalOpts& g, const std::string& file, const VerifyOpts& vo) {
  std::string text = read_file(file);
  Program prog = parse_program(text, {.allow_runtime_forms = true});
  Env env = resolve_env(g, &prog, file);
  const DelegationSet& d = env.lattice.delegations;
  if (vo.atoms.empty()) throw ConfigError("--attacker needs at least one atom");
  Attacker attacker{vo.atoms};

  SecurityOptions sopts;
  sopts.pc = env.pc;
  sopts.fuel = g.fuel;
  sopts.index_cap = vo.index_cap;
  sopts.unsafe = g.unsafe;

  // Named high sets in a program bind to the attacker-induced sets:
  // U = untrusted, S = secret.
  auto bind_induced = [&](ExprPtr ex) {
    for (auto [nm, k] : {std::pair<const char*, HighKind>{"U", HighKind::untrusted},
                         {"S", HighKind::secret}}) {
      HighSet ind = induced_high_set(d, attacker, k);
      ex = resolve_high_sets(
          ex, nm,
          std::make_shared<HighSet>(nm, [ind](const PrincipalPtr& l) { return ind.member(l); }));
    }
    return ex;
  };

  ExprPtr e = prog.body;
  Pools pools;
  TypePtr tx, ty;
  if (contains_kind(e, Expr::Kind::hole)) {
    // Adversary holes: desugar to the two-input form. The attack pool holds
    // hole expressions, typed at the hole's own context; each becomes a
    // protected function value substituted for y.
    e = bind_induced(e);
    pools = load_pools_file(d, vo.pools_path, sopts, AttackForm::exprs);
    tx = pools.secret.type;
    TypingCtx ctx = TypingCtx(env.pc).with_var("x", tx);
    Desugared ds = desugar_holes(d, ctx, e);
    if (ds.holes.size() != 1)
      throw ConfigError("verify supports exactly one adversary hole, found " +
                        std::to_string(ds.holes.size()));
    const HoleSite& site = ds.holes[0];
    if (!type_equal(d, site.type, pools.attack.type))
      throw ConfigError("attack pool type " + print_type(pools.attack.type) +
                        " does not match the hole's type " + print_type(site.type));
    e = substitute(ds.expr, site.var, Expr::var("y"));
    ty = site.var_type;
    std::vector<ExprPtr> ws;
    for (const ExprPtr& a : pools.attack.values) ws.push_back(synthesize_attack_value(d, site, a));
    pools.attack = InputPool{ty, std::move(ws)};
  } else {
    pools = load_pools_file(d, vo.pools_path, sopts);
    tx = pools.secret.type;
    ty = pools.attack.type;
    for (const auto& n : free_vars(*e)) {
      if (n != "x" && n != "y")
        throw ConfigError("program has unexpected free variable '" + n +
                          "' (inputs are x for the secret and y for the attack)");
    }
  }

  Verdict v;
  if (vo.condition == "rd") {
    v = check_robust_declassification(d, e, "x", tx, "y", ty, attacker, pools, sopts);
  } else if (vo.condition == "te") {
    v = check_transparent_endorsement(d, e, "x", tx, "y", ty, attacker, pools, sopts);
  } else if (vo.condition == "nmif") {
    v = check_nmif(d, e, "x", tx, "y", ty, attacker, pools, sopts);
  } else if (vo.condition == "ni-1" || vo.condition == "ni-2" || vo.condition == "ni-3") {
    if (vo.high_kind != "secret" && vo.high_kind != "untrusted")
      throw ConfigError("--high must be secret or untrusted");
    HighKind which = vo.high_kind == "secret" ? HighKind::secret : HighKind::untrusted;
    NiSetup setup;
    if (vo.condition == "ni-1") {
      setup.variant = NiVariant::modulo_downgrading;
      setup.high = induced_high_set(d, attacker, which);
    } else if (vo.condition == "ni-2") {
      setup.variant = NiVariant::high_pc;
      setup.attacker = attacker;
      setup.which = which;
    } else {
      setup.variant = NiVariant::secret_untrusted;
      setup.attacker = attacker;
    }
    bool has_y = free_vars(*prog.body).count("y") > 0 || ty != nullptr;
    v = ni_sweep(d, e, tx, setup, pools, sopts, has_y);
  } else {
    throw ConfigError("unknown condition '" + vo.condition +
                      "' (expected ni-1, ni-2, ni-3, rd, te, nmif)");
  }

  if (g.format == "json") {
    std::cout << verdict_report_json(vo.condition, attacker, pools, v, g.pretty) << "\n";
  } else {
    print_verdict_text(vo.condition, v);
  }
  return verdict_exit(v);
}

// ---------------------------------------------------------------- desugar --

int cmd_desugar(const GlobalOpts& g, const std::string& file,
                const std::vector<std::string>& declares,
                const std::vector<std::string>& attacker_atoms) {
  std::string text = read_file(file);
  Program prog = parse_program(text, {.allow_runtime_forms = true});
  Env env = resolve_env(g, &prog, file);
  TypingCtx ctx(env.pc);
  for (const auto& s : declares) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--declare needs the form name=type: " + s);
    ctx = ctx.with_var(s.substr(0, eq), parse_type(s.substr(eq + 1)));
  }
  ExprPtr body = prog.body;
  if (!attacker_atoms.empty()) {
    const DelegationSet& d = env.lattice.delegations;
    Attacker attacker{attacker_atoms};
    for (auto [nm, k] : {std::pair<const char*, HighKind>{"U", HighKind::untrusted},
                         {"S", HighKind::secret}}) {
      HighSet ind = induced_high_set(d, attacker, k);
      body = resolve_high_sets(
          body, nm,
          std::make_shared<HighSet>(nm, [ind](const PrincipalPtr& l) { return ind.member(l); }));
    }
  }
  Desugared ds = desugar_holes(env.lattice.delegations, ctx, body);
  if (g.format == "json") {
    json out;
    out["schema"] = "nmifc.desugar/1";
    out["expr"] = print_expr(ds.expr);
    json holes = json::array();
    for (const HoleSite& h : ds.holes) {
      json jh;
      jh["index"] = h.index;
      jh["var"] = h.var;
      jh["pc"] = to_string(h.pc);
      jh["type"] = print_type(h.type);
      jh["varType"] = print_type(h.var_type);
      json cap = json::array();
      for (const auto& [n, t] : h.captured) cap.push_back({{"name", n}, {"type", print_type(t)}});
      jh["captured"] = cap;
      holes.push_back(jh);
    }
    out["holes"] = holes;
    emit(out, g);
  } else {
    std::cout << print_expr(ds.expr) << "\n";
    for (const HoleSite& h : ds.holes) {
      std::cout << "hole " << h.index << ": var " << h.var << " : " << print_type(h.var_type)
                << ", pc " << to_string(h.pc) << ", captures";
      if (h.captured.empty()) std::cout << " nothing";
      for (const auto& [n, t] : h.captured) std::cout << " " << n << ":" << print_type(t);
      std::cout << "\n";
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonmalleable information flow toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--lattice,--config", g.lattice_path,
                 "lattice config JSON: {\"atoms\": [...], \"delegations\": [...]}");
  app.add_option("--pc", g.pc_text, "program-counter label (default top^<-)");
  app.add_option("--format", g.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--fuel", g.fuel, "evaluation step budget per run")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for generated inputs (reserved; output is deterministic)");
  app.add_flag("--unsafe", g.unsafe, "skip type checking (for deliberately broken programs)");
  app.add_flag("--pretty", g.pretty, "indent JSON output");

  auto* lat = app.add_subcommand("lattice", "query the principal lattice");
  std::vector<std::string> query;
  bool explain = false;
  lat->add_option("query", query, "actsfor|flows|voice|view|join|meet plus principal arguments")
      ->required()
      ->expected(-1);
  lat->add_flag("--explain", explain, "show the covering clauses behind the answer");

  auto* chk = app.add_subcommand("check", "type-check a program file");
  std::string check_file;
  chk->add_option("file", check_file, "program file")->required();

  auto* run = app.add_subcommand("run", "evaluate a program and print its trace");
  std::string run_file;
  std::vector<std::string> run_inputs;
  run->add_option("file", run_file, "program file")->required();
  run->add_option("--input", run_inputs, "substitute a free variable, name=expression")
      ->expected(1)
      ->allow_extra_args(false);

  auto* ver = app.add_subcommand("verify", "check a security condition over input pools");
  std::string verify_file;
  VerifyOpts vo;
  ver->add_option("file", verify_file, "program file with free x (secret) and y (attack), or one hole")
      ->required();
  ver->add_option("--condition", vo.condition,
                  "ni-1 (modulo downgrading), ni-2 (high pc), ni-3 (secret+untrusted), rd, te, nmif")
      ->required()
      ->check(CLI::IsMember({"ni-1", "ni-2", "ni-3", "rd", "te", "nmif"}));
  ver->add_option("--attacker", vo.atoms, "attacker atoms (repeat or comma-separate)")
      ->required()
      ->delimiter(',');
  ver->add_option("--pools", vo.pools_path, "input pools JSON file")->required();
  ver->add_option("--high", vo.high_kind, "induced high set for ni-1/ni-2: secret or untrusted")
      ->check(CLI::IsMember({"secret", "untrusted"}));
  ver->add_option("--index-cap", vo.index_cap,
                  "cap on enumerated trace-index quadruples per search (0 = unbounded)");

  auto* des = app.add_subcommand("desugar", "replace adversary holes with input applications");
  std::string desugar_file;
  std::vector<std::string> declares;
  std::vector<std::string> des_atoms;
  des->add_option("file", desugar_file, "program file")->required();
  des->add_option("--declare", declares, "declare a free variable's type, name=type")
      ->expected(1)
      ->allow_extra_args(false);
  des->add_option("--attacker", des_atoms,
                  "attacker atoms; binds named high sets U (untrusted) and S (secret)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParse;
  }

  try {
    if (lat->parsed()) return cmd_lattice(g, query, explain);
    if (chk->parsed()) return cmd_check(g, check_file);
    if (run->parsed()) return cmd_run(g, run_file, run_inputs);
    if (ver->parsed()) return cmd_verify(g, verify_file, vo);
    if (des->parsed()) return cmd_desugar(g, desugar_file, declares, des_atoms);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.col << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const PrincipalParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kExitType;
  } catch (const DesugarError& e) {
    std::cerr << "desugar error: " << e.what() << "\n";
    return kExitType;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
