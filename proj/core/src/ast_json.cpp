#include <nlohmann/json.hpp>

#include "nmifc/highset.hpp"
#include "nmifc/syntax.hpp"

namespace nmifc {

namespace {

using nlohmann::json;

json prin(const PrincipalPtr& p) { return to_string(*p); }

json type_json(const TypePtr& t) {
  if (!t) return nullptr;
  switch (t->kind()) {
    case Type::Kind::unit:
      return {{"ty", "unit"}};
    case Type::Kind::var:
      return {{"ty", "var"}, {"name", t->name()}};
    case Type::Kind::sum:
      return {{"ty", "sum"}, {"lhs", type_json(t->lhs())}, {"rhs", type_json(t->rhs())}};
    case Type::Kind::prod:
      return {{"ty", "prod"}, {"lhs", type_json(t->lhs())}, {"rhs", type_json(t->rhs())}};
    case Type::Kind::fn:
      return {{"ty", "fn"},
              {"arg", type_json(t->lhs())},
              {"pc", prin(t->label())},
              {"res", type_json(t->rhs())}};
    case Type::Kind::forall:
      return {{"ty", "forall"},
              {"binder", t->name()},
              {"pc", prin(t->label())},
              {"body", type_json(t->rhs())}};
    case Type::Kind::says:
      return {{"ty", "says"}, {"label", prin(t->label())}, {"body", type_json(t->rhs())}};
  }
  return nullptr;
}

json expr_json(const ExprPtr& e) {
  switch (e->kind()) {
    case Expr::Kind::var:
      return {{"e", "var"}, {"name", e->name()}};
    case Expr::Kind::unit:
      return {{"e", "unit"}};
    case Expr::Kind::pair:
      return {{"e", "pair"}, {"fst", expr_json(e->a())}, {"snd", expr_json(e->b())}};
    case Expr::Kind::inj:
      return {{"e", "inj"},
              {"index", e->index()},
              {"annot", type_json(e->type())},
              {"body", expr_json(e->a())}};
    case Expr::Kind::lam:
      return {{"e", "lam"},
              {"binder", e->name()},
              {"annot", type_json(e->type())},
              {"pc", prin(e->label())},
              {"body", expr_json(e->a())}};
    case Expr::Kind::tlam:
      return {{"e", "tlam"}, {"binder", e->name()}, {"pc", prin(e->label())},
              {"body", expr_json(e->a())}};
    case Expr::Kind::app:
      return {{"e", "app"}, {"fn", expr_json(e->a())}, {"arg", expr_json(e->b())}};
    case Expr::Kind::tapp:
      return {{"e", "tapp"}, {"fn", expr_json(e->a())}, {"arg", type_json(e->type())}};
    case Expr::Kind::proj:
      return {{"e", "proj"}, {"index", e->index()}, {"body", expr_json(e->a())}};
    case Expr::Kind::case_:
      return {{"e", "case"},
              {"scrutinee", expr_json(e->a())},
              {"binder1", e->name()},
              {"branch1", expr_json(e->b())},
              {"binder2", e->name2()},
              {"branch2", expr_json(e->c())}};
    case Expr::Kind::unitm:
      return {{"e", "eta"}, {"label", prin(e->label())}, {"body", expr_json(e->a())}};
    case Expr::Kind::vunitm:
      return {{"e", "etav"}, {"label", prin(e->label())}, {"body", expr_json(e->a())}};
    case Expr::Kind::bindm:
      return {{"e", "bind"},
              {"binder", e->name()},
              {"rhs", expr_json(e->a())},
              {"body", expr_json(e->b())}};
    case Expr::Kind::decl:
      return {{"e", "decl"}, {"to", prin(e->label())}, {"body", expr_json(e->a())}};
    case Expr::Kind::endorse:
      return {{"e", "endorse"}, {"to", prin(e->label())}, {"body", expr_json(e->a())}};
    case Expr::Kind::bracket:
      return {{"e", "bracket"}, {"high", e->high()->name()}, {"body", expr_json(e->a())}};
    case Expr::Kind::hole:
      return {{"e", "hole"},
              {"index", e->index()},
              {"high", e->high()->name()},
              {"ascription", type_json(e->type())}};
  }
  return nullptr;
}

}  // namespace

std::string expr_to_json(const ExprPtr& e, bool pretty) {
  return expr_json(e).dump(pretty ? 2 : -1);
}

std::string type_to_json(const TypePtr& t, bool pretty) {
  return type_json(t).dump(pretty ? 2 : -1);
}

}  // namespace nmifc
