#include "nmifc/highset.hpp"
#include "nmifc/syntax.hpp"

namespace nmifc {

namespace {

// Printing levels mirror the grammar: 0 prefix forms, 1 application,
// 2 unary operators, 3 atoms. A node printed where a higher level is
// required gets parentheses.

bool is_bool_sugar(const Expr& e) {
  if (e.kind() != Expr::Kind::inj || !e.type() || e.a()->kind() != Expr::Kind::unit) return false;
  const Type& t = *e.type();
  return t.kind() == Type::Kind::sum && t.lhs()->kind() == Type::Kind::unit &&
         t.rhs()->kind() == Type::Kind::unit;
}

void print_type_rec(const Type& t, int min_level, std::string& out);

void print_principal(const PrincipalPtr& p, std::string& out) { out += to_string(*p); }

int expr_level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::lam:
    case Expr::Kind::tlam:
    case Expr::Kind::bindm:
    case Expr::Kind::case_:
    case Expr::Kind::decl:
    case Expr::Kind::endorse:
      return 0;
    case Expr::Kind::app:
    case Expr::Kind::tapp:
      return 1;
    case Expr::Kind::inj:
    case Expr::Kind::proj:
    case Expr::Kind::unitm:
    case Expr::Kind::vunitm:
      return 2;
    default:
      return 3;
  }
}

void print_expr_rec(const Expr& e, int min_level, std::string& out) {
  const int lv = is_bool_sugar(e) ? 3 : expr_level(e);
  const bool parens = lv < min_level;
  if (parens) out += '(';
  switch (e.kind()) {
    case Expr::Kind::var:
      out += e.name();
      break;
    case Expr::Kind::unit:
      out += "()";
      break;
    case Expr::Kind::pair:
      out += '<';
      print_expr_rec(*e.a(), 0, out);
      out += ", ";
      print_expr_rec(*e.b(), 0, out);
      out += '>';
      break;
    case Expr::Kind::inj:
      if (is_bool_sugar(e)) {
        out += e.index() == 1 ? "tt" : "ff";
        break;
      }
      out += e.index() == 1 ? "inj1" : "inj2";
      if (e.type()) {
        out += '[';
        print_type_rec(*e.type(), 0, out);
        out += ']';
      }
      out += ' ';
      print_expr_rec(*e.a(), 2, out);
      break;
    case Expr::Kind::lam:
      out += "lam (";
      out += e.name();
      out += " : ";
      print_type_rec(*e.type(), 0, out);
      out += ") [";
      print_principal(e.label(), out);
      out += "] . ";
      print_expr_rec(*e.a(), 0, out);
      break;
    case Expr::Kind::tlam:
      out += "tlam ";
      out += e.name();
      out += " [";
      print_principal(e.label(), out);
      out += "] . ";
      print_expr_rec(*e.a(), 0, out);
      break;
    case Expr::Kind::app:
      print_expr_rec(*e.a(), 1, out);
      out += ' ';
      print_expr_rec(*e.b(), 2, out);
      break;
    case Expr::Kind::tapp:
      print_expr_rec(*e.a(), 1, out);
      out += " [";
      print_type_rec(*e.type(), 0, out);
      out += ']';
      break;
    case Expr::Kind::proj:
      out += e.index() == 1 ? "proj1 " : "proj2 ";
      print_expr_rec(*e.a(), 2, out);
      break;
    case Expr::Kind::case_:
      out += "case ";
      print_expr_rec(*e.a(), 1, out);
      out += " of inj1 ";
      out += e.name();
      out += " . ";
      // The first branch prints at application level: a trailing principal
      // or prefix form would otherwise swallow the '|'.
      print_expr_rec(*e.b(), 1, out);
      out += " | inj2 ";
      out += e.name2();
      out += " . ";
      print_expr_rec(*e.c(), 0, out);
      break;
    case Expr::Kind::unitm:
      out += "eta[";
      print_principal(e.label(), out);
      out += "] ";
      print_expr_rec(*e.a(), 2, out);
      break;
    case Expr::Kind::vunitm:
      out += "etav[";
      print_principal(e.label(), out);
      out += "] ";
      print_expr_rec(*e.a(), 2, out);
      break;
    case Expr::Kind::bindm:
      out += "bind ";
      out += e.name();
      out += " = ";
      print_expr_rec(*e.a(), 0, out);
      out += " in ";
      print_expr_rec(*e.b(), 0, out);
      break;
    case Expr::Kind::decl:
    case Expr::Kind::endorse:
      out += e.kind() == Expr::Kind::decl ? "decl " : "endorse ";
      print_expr_rec(*e.a(), 1, out);
      out += " to ";
      print_principal(e.label(), out);
      break;
    case Expr::Kind::bracket:
      out += "[[";
      print_expr_rec(*e.a(), 0, out);
      out += " : ";
      out += e.high()->name();
      out += "]]";
      break;
    case Expr::Kind::hole:
      out += "[hole ";
      out += std::to_string(e.index());
      out += " : ";
      out += e.high()->name();
      if (e.type()) {
        out += " : ";
        print_type_rec(*e.type(), 0, out);
      }
      out += ']';
      break;
  }
  if (parens) out += ')';
}

int type_level(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::fn:
    case Type::Kind::forall:
      return 0;
    case Type::Kind::sum:
      return 1;
    case Type::Kind::prod:
      return 2;
    default:
      return 3;
  }
}

void print_type_rec(const Type& t, int min_level, std::string& out) {
  const bool parens = type_level(t) < min_level;
  if (parens) out += '(';
  switch (t.kind()) {
    case Type::Kind::unit:
      out += "unit";
      break;
    case Type::Kind::var:
      out += t.name();
      break;
    case Type::Kind::sum:
      print_type_rec(*t.lhs(), 1, out);
      out += " + ";
      print_type_rec(*t.rhs(), 2, out);
      break;
    case Type::Kind::prod:
      print_type_rec(*t.lhs(), 2, out);
      out += " * ";
      print_type_rec(*t.rhs(), 3, out);
      break;
    case Type::Kind::fn:
      print_type_rec(*t.lhs(), 1, out);
      out += " -[";
      print_principal(t.label(), out);
      out += "]-> ";
      print_type_rec(*t.rhs(), 0, out);
      break;
    case Type::Kind::forall:
      out += "all ";
      out += t.name();
      out += " [";
      print_principal(t.label(), out);
      out += "] . ";
      print_type_rec(*t.rhs(), 0, out);
      break;
    case Type::Kind::says:
      out += "says[";
      print_principal(t.label(), out);
      out += "] ";
      print_type_rec(*t.rhs(), 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print_expr_rec(*e, 0, out);
  return out;
}

std::string print_type(const TypePtr& t) {
  std::string out;
  print_type_rec(*t, 0, out);
  return out;
}

}  // namespace nmifc
