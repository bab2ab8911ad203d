#include <map>

#include "lexer.hpp"
#include "nmifc/highset.hpp"
#include "nmifc/subst.hpp"
#include "nmifc/syntax.hpp"

namespace nmifc {

namespace {

class Parser {
 public:
  Parser(Lexer& lx, const ParseOptions& opts) : lx_(lx), opts_(opts) {}

  ExprPtr expr0() {
    const Token t = lx_.peek();
    switch (t.kind) {
      case Token::kw_lam: {
        lx_.take();
        expect(Token::lparen, "'(' after 'lam'");
        const std::string x = expect(Token::ident, "parameter name").text;
        expect(Token::colon, "':' before the parameter type");
        TypePtr ty = type0();
        expect(Token::rparen, "')' after the parameter type");
        PrincipalPtr pc = bracketed_principal();
        expect(Token::dot, "'.' before the body");
        return Expr::lam(x, ty, pc, expr0(), t.pos);
      }
      case Token::kw_tlam: {
        lx_.take();
        const std::string x = expect(Token::ident, "type-variable name").text;
        PrincipalPtr pc = bracketed_principal();
        expect(Token::dot, "'.' before the body");
        return Expr::tlam(x, pc, expr0(), t.pos);
      }
      case Token::kw_bind: {
        lx_.take();
        const std::string x = expect(Token::ident, "bound variable name").text;
        expect(Token::equals, "'=' after the bound variable");
        ExprPtr rhs = expr0();
        expect(Token::kw_in, "'in' after the bound expression");
        return Expr::bindm(x, rhs, expr0(), t.pos);
      }
      case Token::kw_case: {
        lx_.take();
        ExprPtr scrut = expr1();
        expect(Token::kw_of, "'of' after the scrutinee");
        expect(Token::kw_inj1, "'inj1' opening the first branch");
        const std::string x1 = expect(Token::ident, "first branch binder").text;
        expect(Token::dot, "'.' before the first branch");
        ExprPtr b1 = expr0();
        expect(Token::pipe, "'|' between branches");
        expect(Token::kw_inj2, "'inj2' opening the second branch");
        const std::string x2 = expect(Token::ident, "second branch binder").text;
        expect(Token::dot, "'.' before the second branch");
        return Expr::case_(scrut, x1, b1, x2, expr0(), t.pos);
      }
      case Token::kw_decl: {
        lx_.take();
        ExprPtr a = expr1();
        expect(Token::kw_to, "'to' after the declassified expression");
        return Expr::decl(a, principal(), t.pos);
      }
      case Token::kw_endorse: {
        lx_.take();
        ExprPtr a = expr1();
        expect(Token::kw_to, "'to' after the endorsed expression");
        return Expr::endorse(a, principal(), t.pos);
      }
      default:
        return expr1();
    }
  }

  TypePtr type0() {
    const Token t = lx_.peek();
    if (t.kind == Token::kw_all) {
      lx_.take();
      const std::string x = expect(Token::ident, "type-variable name").text;
      PrincipalPtr pc = bracketed_principal();
      expect(Token::dot, "'.' before the quantified type");
      return Type::forall(x, pc, type0());
    }
    TypePtr l = type1();
    if (lx_.peek().kind == Token::arrow_open) {
      lx_.take();
      PrincipalPtr pc = principal();
      expect(Token::arrow_close, "']->' closing the function pc");
      return Type::fn(l, pc, type0());
    }
    return l;
  }

  TypePtr type1() {
    TypePtr l = type2();
    while (lx_.peek().kind == Token::plus) {
      lx_.take();
      l = Type::sum(l, type2());
    }
    return l;
  }

  TypePtr type2() {
    TypePtr l = type3();
    while (lx_.peek().kind == Token::star) {
      lx_.take();
      l = Type::prod(l, type3());
    }
    return l;
  }

  TypePtr type3() {
    const Token t = lx_.peek();
    switch (t.kind) {
      case Token::kw_unit:
        lx_.take();
        return Type::unit();
      case Token::ident:
        lx_.take();
        return Type::var(t.text);
      case Token::kw_says: {
        lx_.take();
        PrincipalPtr l = bracketed_principal();
        return Type::says(l, type3());
      }
      case Token::lparen: {
        lx_.take();
        TypePtr ty = type0();
        expect(Token::rparen, "')' closing the type");
        return ty;
      }
      default:
        fail("expected a type", {"'unit'", "identifier", "'says'", "'('"}, t.pos);
    }
  }

  // Flow-level principal over the shared token stream.
  PrincipalPtr principal() {
    PrincipalPtr p = p_disj();
    while (true) {
      if (lx_.peek().kind == Token::join) {
        lx_.take();
        p = Principal::join(p, p_disj());
      } else if (lx_.peek().kind == Token::meet) {
        lx_.take();
        p = Principal::meet(p, p_disj());
      } else {
        return p;
      }
    }
  }

  void expect_end() {
    const Token& t = lx_.peek();
    if (t.kind != Token::end) fail("trailing input after the expression", {"end of input"}, t.pos);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected,
                         std::size_t pos) {
    auto [line, col] = lx_.line_col(pos);
    throw ParseError(msg, line, col, std::move(expected));
  }

  Token expect(Token::Kind k, const char* what) {
    const Token& t = lx_.peek();
    if (t.kind != k) fail(std::string("expected ") + what, {token_name(k)}, t.pos);
    return lx_.take();
  }

  PrincipalPtr bracketed_principal() {
    expect(Token::lbrack, "'[' opening a label");
    PrincipalPtr p = principal();
    expect(Token::rbrack, "']' closing a label");
    return p;
  }

  // True when the next tokens start an application argument (an expr2). A '['
  // continues as an argument only for bracket/hole atoms; otherwise it is a
  // type application.
  bool starts_expr2() {
    switch (lx_.peek().kind) {
      case Token::ident:
      case Token::kw_tt:
      case Token::kw_ff:
      case Token::lparen:
      case Token::langle:
      case Token::kw_inj1:
      case Token::kw_inj2:
      case Token::kw_proj1:
      case Token::kw_proj2:
      case Token::kw_eta:
      case Token::kw_etav:
        return true;
      case Token::lbrack:
        return lx_.peek(1).kind == Token::lbrack || lx_.peek(1).kind == Token::kw_hole;
      default:
        return false;
    }
  }

  ExprPtr expr1() {
    ExprPtr e = expr2();
    while (true) {
      if (starts_expr2()) {
        ExprPtr arg = expr2();
        e = Expr::app(e, arg, e->pos());
      } else if (lx_.peek().kind == Token::lbrack) {
        const Token t = lx_.take();
        TypePtr ty = type0();
        expect(Token::rbrack, "']' closing the type argument");
        e = Expr::tapp(e, ty, t.pos);
      } else {
        return e;
      }
    }
  }

  ExprPtr expr2() {
    const Token t = lx_.peek();
    switch (t.kind) {
      case Token::kw_inj1:
      case Token::kw_inj2: {
        lx_.take();
        const int idx = t.kind == Token::kw_inj1 ? 1 : 2;
        TypePtr annot;
        if (lx_.peek().kind == Token::lbrack && lx_.peek(1).kind != Token::lbrack &&
            lx_.peek(1).kind != Token::kw_hole) {
          lx_.take();
          annot = type0();
          expect(Token::rbrack, "']' closing the sum-type annotation");
        }
        return Expr::inj(idx, annot, expr2(), t.pos);
      }
      case Token::kw_proj1:
      case Token::kw_proj2: {
        lx_.take();
        return Expr::proj(t.kind == Token::kw_proj1 ? 1 : 2, expr2(), t.pos);
      }
      case Token::kw_eta: {
        lx_.take();
        PrincipalPtr l = bracketed_principal();
        return Expr::unitm(l, expr2(), t.pos);
      }
      case Token::kw_etav: {
        if (!opts_.allow_runtime_forms)
          fail("'etav' is a runtime-only form (enable runtime forms to parse it)", {}, t.pos);
        lx_.take();
        PrincipalPtr l = bracketed_principal();
        return Expr::vunitm(l, expr2(), t.pos);
      }
      default:
        return expr3();
    }
  }

  ExprPtr expr3() {
    const Token t = lx_.peek();
    switch (t.kind) {
      case Token::ident:
        lx_.take();
        return Expr::var(t.text, t.pos);
      case Token::kw_tt:
      case Token::kw_ff:
        lx_.take();
        return Expr::inj(t.kind == Token::kw_tt ? 1 : 2, Type::sum(Type::unit(), Type::unit()),
                         Expr::unit(t.pos), t.pos);
      case Token::lparen: {
        lx_.take();
        if (lx_.peek().kind == Token::rparen) {
          lx_.take();
          return Expr::unit(t.pos);
        }
        ExprPtr e = expr0();
        expect(Token::rparen, "')'");
        return e;
      }
      case Token::langle: {
        lx_.take();
        ExprPtr a = expr0();
        expect(Token::comma, "',' between the pair components");
        ExprPtr b = expr0();
        expect(Token::rangle, "'>' closing the pair");
        return Expr::pair(a, b, t.pos);
      }
      case Token::lbrack: {
        if (lx_.peek(1).kind == Token::kw_hole) {
          lx_.take();
          lx_.take();
          const Token n = expect(Token::number, "hole index");
          expect(Token::colon, "':' before the high-set name");
          const std::string hname = expect(Token::ident, "high-set name").text;
          TypePtr ascription;
          if (lx_.peek().kind == Token::colon) {
            lx_.take();
            ascription = type0();
          }
          expect(Token::rbrack, "']' closing the hole");
          return Expr::hole(std::stoi(n.text), high_set(hname), ascription, t.pos);
        }
        if (lx_.peek(1).kind == Token::lbrack) {
          if (!opts_.allow_runtime_forms)
            fail("'[[' brackets are a runtime-only form (enable runtime forms to parse them)", {},
                 t.pos);
          lx_.take();
          lx_.take();
          ExprPtr body = expr0();
          expect(Token::colon, "':' before the high-set name");
          const std::string hname = expect(Token::ident, "high-set name").text;
          expect(Token::rbrack, "']]' closing the bracket");
          expect(Token::rbrack, "']]' closing the bracket");
          return Expr::bracket(body, high_set(hname), nullptr, t.pos);
        }
        fail("expected 'hole' or '[' after '['", {"'hole'", "'['"}, t.pos);
      }
      default:
        fail("expected an expression", {"identifier", "'('", "'<'", "'['"}, t.pos);
    }
  }

  PrincipalPtr p_disj() {
    PrincipalPtr p = p_conj();
    while (lx_.peek().kind == Token::pipe) {
      lx_.take();
      p = Principal::disj(p, p_conj());
    }
    return p;
  }

  PrincipalPtr p_conj() {
    PrincipalPtr p = p_proj();
    while (lx_.peek().kind == Token::amp) {
      lx_.take();
      p = Principal::conj(p, p_proj());
    }
    return p;
  }

  PrincipalPtr p_proj() {
    PrincipalPtr p = p_atom();
    while (true) {
      if (lx_.peek().kind == Token::proj_conf) {
        lx_.take();
        p = Principal::proj(p, Aspect::conf);
      } else if (lx_.peek().kind == Token::proj_integ) {
        lx_.take();
        p = Principal::proj(p, Aspect::integ);
      } else {
        return p;
      }
    }
  }

  PrincipalPtr p_atom() {
    const Token t = lx_.peek();
    switch (t.kind) {
      case Token::ident:
        lx_.take();
        return Principal::atom(t.text);
      case Token::kw_top:
        lx_.take();
        return Principal::top();
      case Token::kw_bot:
        lx_.take();
        return Principal::bot();
      case Token::lparen: {
        lx_.take();
        PrincipalPtr p = principal();
        expect(Token::rparen, "')' closing the principal");
        return p;
      }
      default:
        fail("expected a principal", {"identifier", "'top'", "'bot'", "'('"}, t.pos);
    }
  }

  HighSetPtr high_set(const std::string& name) {
    auto& slot = high_sets_[name];
    if (!slot) slot = std::make_shared<HighSet>(name);
    return slot;
  }

  Lexer& lx_;
  ParseOptions opts_;
  std::map<std::string, HighSetPtr> high_sets_;
};

// Global binder uniqueness: every binder whose name was already seen (free
// variables included) is renamed deterministically.
class Uniquifier {
 public:
  explicit Uniquifier(std::set<std::string> used) : used_(std::move(used)) {}

  using Env = std::map<std::string, std::string>;

  TypePtr type(const TypePtr& t, const Env& tyenv) {
    if (!t) return t;
    switch (t->kind()) {
      case Type::Kind::unit:
        return t;
      case Type::Kind::var: {
        auto it = tyenv.find(t->name());
        return it == tyenv.end() || it->second == t->name() ? t : Type::var(it->second);
      }
      case Type::Kind::sum:
        return Type::sum(type(t->lhs(), tyenv), type(t->rhs(), tyenv));
      case Type::Kind::prod:
        return Type::prod(type(t->lhs(), tyenv), type(t->rhs(), tyenv));
      case Type::Kind::fn:
        return Type::fn(type(t->lhs(), tyenv), t->label(), type(t->rhs(), tyenv));
      case Type::Kind::forall: {
        Env inner = tyenv;
        std::string fresh = bind(t->name(), inner);
        return Type::forall(fresh, t->label(), type(t->rhs(), inner));
      }
      case Type::Kind::says:
        return Type::says(t->label(), type(t->rhs(), tyenv));
    }
    return t;
  }

  ExprPtr expr(const ExprPtr& e, const Env& env, const Env& tyenv) {
    switch (e->kind()) {
      case Expr::Kind::var: {
        auto it = env.find(e->name());
        return it == env.end() || it->second == e->name() ? e
                                                          : Expr::var(it->second, e->pos());
      }
      case Expr::Kind::unit:
        return e;
      case Expr::Kind::pair:
        return Expr::pair(expr(e->a(), env, tyenv), expr(e->b(), env, tyenv), e->pos());
      case Expr::Kind::inj:
        return Expr::inj(e->index(), type(e->type(), tyenv), expr(e->a(), env, tyenv), e->pos());
      case Expr::Kind::lam: {
        Env inner = env;
        std::string fresh = bind(e->name(), inner);
        return Expr::lam(fresh, type(e->type(), tyenv), e->label(), expr(e->a(), inner, tyenv),
                         e->pos());
      }
      case Expr::Kind::tlam: {
        Env inner = tyenv;
        std::string fresh = bind(e->name(), inner);
        return Expr::tlam(fresh, e->label(), expr(e->a(), env, inner), e->pos());
      }
      case Expr::Kind::app:
        return Expr::app(expr(e->a(), env, tyenv), expr(e->b(), env, tyenv), e->pos());
      case Expr::Kind::tapp:
        return Expr::tapp(expr(e->a(), env, tyenv), type(e->type(), tyenv), e->pos());
      case Expr::Kind::proj:
        return Expr::proj(e->index(), expr(e->a(), env, tyenv), e->pos());
      case Expr::Kind::case_: {
        ExprPtr scrut = expr(e->a(), env, tyenv);
        Env env1 = env;
        std::string f1 = bind(e->name(), env1);
        ExprPtr b1 = expr(e->b(), env1, tyenv);
        Env env2 = env;
        std::string f2 = bind(e->name2(), env2);
        return Expr::case_(scrut, f1, b1, f2, expr(e->c(), env2, tyenv), e->pos());
      }
      case Expr::Kind::unitm:
        return Expr::unitm(e->label(), expr(e->a(), env, tyenv), e->pos());
      case Expr::Kind::vunitm:
        return Expr::vunitm(e->label(), expr(e->a(), env, tyenv), e->pos());
      case Expr::Kind::bindm: {
        ExprPtr rhs = expr(e->a(), env, tyenv);
        Env inner = env;
        std::string fresh = bind(e->name(), inner);
        return Expr::bindm(fresh, rhs, expr(e->b(), inner, tyenv), e->pos());
      }
      case Expr::Kind::decl:
        return Expr::decl(expr(e->a(), env, tyenv), e->label(), e->pos());
      case Expr::Kind::endorse:
        return Expr::endorse(expr(e->a(), env, tyenv), e->label(), e->pos());
      case Expr::Kind::bracket:
        return Expr::bracket(expr(e->a(), env, tyenv), e->high(), e->label(), e->pos());
      case Expr::Kind::hole:
        return Expr::hole(e->index(), e->high(), type(e->type(), tyenv), e->pos());
    }
    return e;
  }

 private:
  std::string bind(const std::string& name, Env& env) {
    std::string fresh = used_.count(name) ? fresh_name(name, used_) : (used_.insert(name), name);
    env[name] = fresh;
    return fresh;
  }

  std::set<std::string> used_;
};

ExprPtr uniquify(const ExprPtr& e) {
  std::set<std::string> used = free_vars(*e);
  for (const std::string& x : free_type_vars_expr(*e)) used.insert(x);
  Uniquifier u(std::move(used));
  return u.expr(e, {}, {});
}

}  // namespace

ExprPtr parse_expr(const std::string& text, const ParseOptions& opts) {
  Lexer lx(text);
  Parser p(lx, opts);
  ExprPtr e = p.expr0();
  p.expect_end();
  return uniquify(e);
}

TypePtr parse_type(const std::string& text) {
  Lexer lx(text);
  Parser p(lx, {});
  TypePtr t = p.type0();
  p.expect_end();
  Uniquifier u(free_type_vars(*t));
  return u.type(t, {});
}

Program parse_program(const std::string& text, const ParseOptions& opts) {
  Program prog;
  std::string body = text;
  std::size_t line_start = 0;
  std::size_t line_no = 1;
  while (line_start < body.size()) {
    std::size_t i = line_start;
    while (i < body.size() && (body[i] == ' ' || body[i] == '\t')) i++;
    if (i >= body.size() || body[i] != '#') break;
    std::size_t line_end = body.find('\n', i);
    if (line_end == std::string::npos) line_end = body.size();
    std::string line = body.substr(i, line_end - i);
    std::size_t sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    const std::size_t a = rest.find_first_not_of(" \t\r");
    const std::size_t b = rest.find_last_not_of(" \t\r");
    rest = a == std::string::npos ? "" : rest.substr(a, b - a + 1);
    if (key == "#lattice") {
      if (rest.empty()) throw ParseError("#lattice needs a file path", line_no, 1, {});
      prog.lattice_path = rest;
    } else if (key == "#pc") {
      if (rest.empty()) throw ParseError("#pc needs a principal", line_no, 1, {});
      try {
        prog.pc = parse_principal(rest);
      } catch (const PrincipalParseError& e) {
        throw ParseError(std::string("bad #pc principal: ") + e.what(), line_no, 1, {});
      }
    } else {
      throw ParseError("unknown directive " + key + " (expected #lattice or #pc)", line_no, 1, {});
    }
    // Blank the directive out so byte offsets and line numbers survive.
    for (std::size_t j = line_start; j < line_end; j++) body[j] = ' ';
    line_start = line_end < body.size() ? line_end + 1 : line_end;
    line_no++;
  }
  prog.body = parse_expr(body, opts);
  return prog;
}

}  // namespace nmifc
