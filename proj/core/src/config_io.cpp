#include "nmifc/config_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "nmifc/eval.hpp"
#include "nmifc/typecheck.hpp"

namespace nmifc {

using nlohmann::json;

namespace {

InputPool load_pool(const DelegationSet& d, const json& j, const std::string& which,
                    const SecurityOptions& opts, bool validate) {
  if (!j.is_object() || !j.contains("type") || !j.contains("values"))
    throw ConfigError(which + " pool needs a type and a values array");
  InputPool pool;
  try {
    pool.type = parse_type(j.at("type").get<std::string>());
  } catch (const ParseError& pe) {
    throw ConfigError(which + " pool type does not parse: " + pe.what());
  }
  if (!j.at("values").is_array())
    throw ConfigError(which + " pool values must be an array");
  TypingCtx ctx(opts.pc ? opts.pc : marker_label());
  for (const json& jv : j.at("values")) {
    if (!jv.is_string())
      throw ConfigError(which + " pool values must be strings of surface syntax");
    ExprPtr v;
    try {
      // Pool entries may be pre-protected values (etav), so the runtime forms
      // must parse; brackets and holes stay instrumentation-only and are
      // rejected below.
      v = parse_expr(jv.get<std::string>(), {.allow_runtime_forms = true});
    } catch (const ParseError& pe) {
      throw ConfigError(which + " pool value does not parse: " + std::string(pe.what()));
    }
    if (contains_kind(v, Expr::Kind::bracket) || contains_kind(v, Expr::Kind::hole))
      throw ConfigError(which + " pool entry uses instrumentation-only syntax: " +
                        jv.get<std::string>());
    if (validate) {
      if (!is_value(v))
        throw ConfigError(which + " pool entry is not a value: " + jv.get<std::string>());
      if (!free_vars(*v).empty() || !free_type_vars_expr(*v).empty())
        throw ConfigError(which + " pool entry is not closed: " + jv.get<std::string>());
      try {
        TypePtr got = type_of(d, ctx, v);
        if (!type_equal(d, got, pool.type))
          throw ConfigError(which + " pool entry does not have the declared type: " +
                            jv.get<std::string>());
      } catch (const TypeError& te) {
        throw ConfigError(which + " pool entry does not type-check: " +
                          std::string(te.what()));
      }
    }
    pool.values.push_back(std::move(v));
  }
  return pool;
}

json trace_json(const Trace& t) { return json::parse(trace_to_json(t)); }

}  // namespace

Pools load_pools_text(const DelegationSet& d, const std::string& json_text,
                      const SecurityOptions& opts, AttackForm attack_form) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& pe) {
    throw ConfigError(std::string("pool file is not valid JSON: ") + pe.what());
  }
  if (!j.is_object() || !j.contains("secret") || !j.contains("attack"))
    throw ConfigError("pool file needs secret and attack pools");
  Pools pools;
  pools.secret = load_pool(d, j.at("secret"), "secret", opts, true);
  pools.attack =
      load_pool(d, j.at("attack"), "attack", opts, attack_form == AttackForm::values);
  return pools;
}

Pools load_pools_file(const DelegationSet& d, const std::string& path,
                      const SecurityOptions& opts, AttackForm attack_form) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pool file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_pools_text(d, ss.str(), opts, attack_form);
}

std::string verdict_report_json(const std::string& condition, const Attacker& a,
                                const Pools& pools, const Verdict& v,
                                bool pretty) {
  json report;
  report["schema"] = "nmifc.verdict/1";
  report["condition"] = condition;
  report["attacker"] = a.atoms;
  auto pool_json = [](const InputPool& p) {
    json jp;
    jp["type"] = p.type ? print_type(p.type) : "";
    json values = json::array();
    for (const ExprPtr& e : p.values) values.push_back(print_expr(e));
    jp["values"] = values;
    return jp;
  };
  report["pools"] = {{"secret", pool_json(pools.secret)},
                     {"attack", pool_json(pools.attack)}};
  report["verdict"] = verdict_name(v.kind);
  if (!v.reason.empty()) report["reason"] = v.reason;
  if (v.fuel_exhausted) report["fuelExhausted"] = true;
  if (v.event) report["event"] = json::parse(event_to_json(*v.event));
  if (v.witness) {
    const QuadrupleWitness& w = *v.witness;
    json jw;
    jw["v1"] = w.v1 ? print_expr(w.v1) : "";
    jw["v2"] = w.v2 ? print_expr(w.v2) : "";
    if (w.w1) jw["w1"] = print_expr(w.w1);
    if (w.w2) jw["w2"] = print_expr(w.w2);
    if (w.indices) jw["indices"] = *w.indices;
    if (w.clause) jw["clause"] = w.clause;
    json traces = json::array();
    if (w.w1) {
      for (const Trace& t : w.traces) traces.push_back(trace_json(t));
    } else {
      // Two-run witness: only the slots for the first and second input value.
      traces.push_back(trace_json(w.traces[0]));
      traces.push_back(trace_json(w.traces[2]));
    }
    jw["traces"] = traces;
    report["witness"] = jw;
  }
  return report.dump(pretty ? 2 : -1);
}

}  // namespace nmifc
