#include <nlohmann/json.hpp>

#include "nmifc/eval.hpp"

namespace nmifc {

namespace {

using nlohmann::json;

json event_json(const Event& e) {
  switch (e.kind) {
    case Event::Kind::bullet:
      return {{"ev", "bullet"}};
    case Event::Kind::protect:
      return {{"ev", "protect"},
              {"label", to_string(*e.label)},
              {"value", json::parse(expr_to_json(e.value))}};
    case Event::Kind::downgrade:
      return {{"ev", "downgrade"},
              {"aspect", e.aspect == Aspect::conf ? "conf" : "integ"},
              {"from", to_string(*e.from)},
              {"to", to_string(*e.to)},
              {"value", json::parse(expr_to_json(e.value))}};
  }
  return nullptr;
}

}  // namespace

std::string event_to_json(const Event& e) { return event_json(e).dump(); }

std::string trace_to_json(const Trace& t, bool pretty) {
  json arr = json::array();
  for (const Event& e : t) arr.push_back(event_json(e));
  return arr.dump(pretty ? 2 : -1);
}

std::string trace_to_text(const Trace& t) {
  std::string out;
  for (const Event& e : t) {
    switch (e.kind) {
      case Event::Kind::bullet:
        out += ".";
        break;
      case Event::Kind::protect:
        out += "protect " + to_string(*e.label) + " : " + print_expr(e.value);
        break;
      case Event::Kind::downgrade:
        out += std::string("downgrade ") + (e.aspect == Aspect::conf ? "conf " : "integ ") +
               to_string(*e.from) + " -> " + to_string(*e.to) + " : " + print_expr(e.value);
        break;
    }
    out += "\n";
  }
  return out;
}

}  // namespace nmifc
