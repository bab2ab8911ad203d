#include "nmifc/principal.hpp"

#include <cctype>

namespace nmifc {

Aspect opposite(Aspect a) { return a == Aspect::conf ? Aspect::integ : Aspect::conf; }

const char* aspect_arrow(Aspect a) { return a == Aspect::conf ? "->" : "<-"; }

PrincipalPtr Principal::atom(std::string name) {
  return PrincipalPtr(new Principal(Kind::atom, std::move(name), Aspect::conf, nullptr, nullptr));
}

PrincipalPtr Principal::top() {
  static const PrincipalPtr t(new Principal(Kind::top, "", Aspect::conf, nullptr, nullptr));
  return t;
}

PrincipalPtr Principal::bot() {
  static const PrincipalPtr b(new Principal(Kind::bot, "", Aspect::conf, nullptr, nullptr));
  return b;
}

PrincipalPtr Principal::proj(PrincipalPtr p, Aspect a) {
  return PrincipalPtr(new Principal(Kind::proj, "", a, std::move(p), nullptr));
}

PrincipalPtr Principal::conj(PrincipalPtr l, PrincipalPtr r) {
  return PrincipalPtr(new Principal(Kind::conj, "", Aspect::conf, std::move(l), std::move(r)));
}

PrincipalPtr Principal::disj(PrincipalPtr l, PrincipalPtr r) {
  return PrincipalPtr(new Principal(Kind::disj, "", Aspect::conf, std::move(l), std::move(r)));
}

PrincipalPtr Principal::join(PrincipalPtr l, PrincipalPtr r) {
  return PrincipalPtr(new Principal(Kind::flow_join, "", Aspect::conf, std::move(l), std::move(r)));
}

PrincipalPtr Principal::meet(PrincipalPtr l, PrincipalPtr r) {
  return PrincipalPtr(new Principal(Kind::flow_meet, "", Aspect::conf, std::move(l), std::move(r)));
}

std::size_t Principal::size() const {
  switch (kind_) {
    case Kind::atom:
    case Kind::top:
    case Kind::bot:
      return 1;
    case Kind::proj:
      return 1 + lhs_->size();
    default:
      return 1 + lhs_->size() + rhs_->size();
  }
}

bool same_tree(const Principal& a, const Principal& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Principal::Kind::atom:
      return a.name() == b.name();
    case Principal::Kind::top:
    case Principal::Kind::bot:
      return true;
    case Principal::Kind::proj:
      return a.aspect() == b.aspect() && same_tree(*a.lhs(), *b.lhs());
    default:
      return same_tree(*a.lhs(), *b.lhs()) && same_tree(*a.rhs(), *b.rhs());
  }
}

namespace {

// Precedence levels for printing: 0 = \/ and /\, 1 = |, 2 = &, 3 = postfix
// projection and atoms.
int level_of(Principal::Kind k) {
  switch (k) {
    case Principal::Kind::flow_join:
    case Principal::Kind::flow_meet:
      return 0;
    case Principal::Kind::disj:
      return 1;
    case Principal::Kind::conj:
      return 2;
    default:
      return 3;
  }
}

void print_rec(const Principal& p, int min_level, std::string& out) {
  const int lv = level_of(p.kind());
  const bool parens = lv < min_level;
  if (parens) out += '(';
  switch (p.kind()) {
    case Principal::Kind::atom:
      out += p.name();
      break;
    case Principal::Kind::top:
      out += "top";
      break;
    case Principal::Kind::bot:
      out += "bot";
      break;
    case Principal::Kind::proj:
      print_rec(*p.lhs(), 3, out);
      out += '^';
      out += aspect_arrow(p.aspect());
      break;
    case Principal::Kind::conj:
      print_rec(*p.lhs(), 2, out);
      out += " & ";
      print_rec(*p.rhs(), 3, out);
      break;
    case Principal::Kind::disj:
      print_rec(*p.lhs(), 1, out);
      out += " | ";
      print_rec(*p.rhs(), 2, out);
      break;
    case Principal::Kind::flow_join:
      print_rec(*p.lhs(), 0, out);
      out += " \\/ ";
      print_rec(*p.rhs(), 1, out);
      break;
    case Principal::Kind::flow_meet:
      print_rec(*p.lhs(), 0, out);
      out += " /\\ ";
      print_rec(*p.rhs(), 1, out);
      break;
  }
  if (parens) out += ')';
}

struct PTok {
  enum Kind { ident, kw_top, kw_bot, amp, pipe, join, meet, lparen, rparen, proj_c, proj_i, end } kind;
  std::string text;
  std::size_t pos;
};

class PLexer {
 public:
  PLexer(const std::string& text, std::size_t pos) : text_(text), pos_(pos) { advance(); }

  const PTok& peek() const { return tok_; }
  PTok take() {
    PTok t = tok_;
    advance();
    return t;
  }
  // Position just after the most recently returned token.
  std::size_t consumed() const { return after_tok_; }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) pos_++;
    const std::size_t start = pos_;
    auto make = [&](PTok::Kind k, std::size_t len) {
      tok_ = PTok{k, text_.substr(start, len), start};
      pos_ = start + len;
      after_tok_ = pos_;
    };
    if (pos_ >= text_.size()) {
      tok_ = PTok{PTok::end, "", pos_};
      after_tok_ = pos_;
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        j++;
      const std::string word = text_.substr(start, j - start);
      if (word == "top") return make(PTok::kw_top, word.size());
      if (word == "bot") return make(PTok::kw_bot, word.size());
      return make(PTok::ident, word.size());
    }
    auto rest = [&](const char* s) { return text_.compare(pos_, std::char_traits<char>::length(s), s) == 0; };
    if (rest("^->")) return make(PTok::proj_c, 3);
    if (rest("^<-")) return make(PTok::proj_i, 3);
    if (rest("\\/")) return make(PTok::join, 2);
    if (rest("/\\")) return make(PTok::meet, 2);
    switch (c) {
      case '&': return make(PTok::amp, 1);
      case '|': return make(PTok::pipe, 1);
      case '(': return make(PTok::lparen, 1);
      case ')': return make(PTok::rparen, 1);
      default:
        throw PrincipalParseError("unexpected character '" + std::string(1, c) + "' in principal", pos_);
    }
  }

  const std::string& text_;
  std::size_t pos_;
  std::size_t after_tok_ = 0;
  PTok tok_;
};

class PParser {
 public:
  explicit PParser(PLexer& lx) : lx_(lx) {}

  PrincipalPtr flow_level() {
    PrincipalPtr p = disj_level();
    while (true) {
      if (lx_.peek().kind == PTok::join) {
        lx_.take();
        p = Principal::join(p, disj_level());
      } else if (lx_.peek().kind == PTok::meet) {
        lx_.take();
        p = Principal::meet(p, disj_level());
      } else {
        return p;
      }
    }
  }

 private:
  PrincipalPtr disj_level() {
    PrincipalPtr p = conj_level();
    while (lx_.peek().kind == PTok::pipe) {
      lx_.take();
      p = Principal::disj(p, conj_level());
    }
    return p;
  }

  PrincipalPtr conj_level() {
    PrincipalPtr p = proj_level();
    while (lx_.peek().kind == PTok::amp) {
      lx_.take();
      p = Principal::conj(p, proj_level());
    }
    return p;
  }

  PrincipalPtr proj_level() {
    PrincipalPtr p = atom_level();
    while (true) {
      if (lx_.peek().kind == PTok::proj_c) {
        lx_.take();
        p = Principal::proj(p, Aspect::conf);
      } else if (lx_.peek().kind == PTok::proj_i) {
        lx_.take();
        p = Principal::proj(p, Aspect::integ);
      } else {
        return p;
      }
    }
  }

  PrincipalPtr atom_level() {
    PTok t = lx_.take();
    switch (t.kind) {
      case PTok::ident:
        return Principal::atom(t.text);
      case PTok::kw_top:
        return Principal::top();
      case PTok::kw_bot:
        return Principal::bot();
      case PTok::lparen: {
        PrincipalPtr p = flow_level();
        PTok close = lx_.take();
        if (close.kind != PTok::rparen)
          throw PrincipalParseError("expected ')' in principal", close.pos);
        return p;
      }
      default:
        throw PrincipalParseError("expected principal", t.pos);
    }
  }

  PLexer& lx_;
};

}  // namespace

std::string to_string(const Principal& p) {
  std::string out;
  print_rec(p, 0, out);
  return out;
}

std::string to_string(const PrincipalPtr& p) { return to_string(*p); }

PrincipalPtr parse_principal(const std::string& text) {
  PLexer lx(text, 0);
  PParser parser(lx);
  PrincipalPtr p = parser.flow_level();
  if (lx.peek().kind != PTok::end)
    throw PrincipalParseError("trailing input after principal", lx.peek().pos);
  return p;
}

PrincipalPtr parse_principal_prefix(const std::string& text, std::size_t& pos) {
  PLexer lx(text, pos);
  PParser parser(lx);
  PrincipalPtr p = parser.flow_level();
  // The lexer has already scanned one token past the principal; resume at the
  // start of that token.
  pos = lx.peek().pos;
  return p;
}

}  // namespace nmifc
