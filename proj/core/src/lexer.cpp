#include "lexer.hpp"

#include <cctype>
#include <map>

#include "nmifc/syntax.hpp"

namespace nmifc {

const char* token_name(Token::Kind k) {
  switch (k) {
    case Token::ident: return "identifier";
    case Token::number: return "number";
    case Token::kw_lam: return "'lam'";
    case Token::kw_tlam: return "'tlam'";
    case Token::kw_bind: return "'bind'";
    case Token::kw_in: return "'in'";
    case Token::kw_case: return "'case'";
    case Token::kw_of: return "'of'";
    case Token::kw_decl: return "'decl'";
    case Token::kw_endorse: return "'endorse'";
    case Token::kw_to: return "'to'";
    case Token::kw_eta: return "'eta'";
    case Token::kw_etav: return "'etav'";
    case Token::kw_inj1: return "'inj1'";
    case Token::kw_inj2: return "'inj2'";
    case Token::kw_proj1: return "'proj1'";
    case Token::kw_proj2: return "'proj2'";
    case Token::kw_unit: return "'unit'";
    case Token::kw_all: return "'all'";
    case Token::kw_says: return "'says'";
    case Token::kw_top: return "'top'";
    case Token::kw_bot: return "'bot'";
    case Token::kw_hole: return "'hole'";
    case Token::kw_tt: return "'tt'";
    case Token::kw_ff: return "'ff'";
    case Token::lparen: return "'('";
    case Token::rparen: return "')'";
    case Token::langle: return "'<'";
    case Token::rangle: return "'>'";
    case Token::comma: return "','";
    case Token::dot: return "'.'";
    case Token::colon: return "':'";
    case Token::pipe: return "'|'";
    case Token::lbrack: return "'['";
    case Token::rbrack: return "']'";
    case Token::star: return "'*'";
    case Token::plus: return "'+'";
    case Token::amp: return "'&'";
    case Token::equals: return "'='";
    case Token::arrow_open: return "'-['";
    case Token::arrow_close: return "']->'";
    case Token::proj_conf: return "'^->'";
    case Token::proj_integ: return "'^<-'";
    case Token::join: return "'\\/'";
    case Token::meet: return "'/\\'";
    case Token::end: return "end of input";
  }
  return "?";
}

Lexer::Lexer(std::string text) : text_(std::move(text)) {}

std::pair<std::size_t, std::size_t> Lexer::line_col(std::size_t pos) const {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text_.size(); i++) {
    if (text_[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return {line, col};
}

const Token& Lexer::peek(std::size_t ahead) {
  while (buffer_.size() <= ahead) buffer_.push_back(scan());
  return buffer_[ahead];
}

Token Lexer::take() {
  peek(0);
  Token t = buffer_.front();
  buffer_.pop_front();
  return t;
}

Token Lexer::scan() {
  static const std::map<std::string, Token::Kind> keywords = {
      {"lam", Token::kw_lam},     {"tlam", Token::kw_tlam},   {"bind", Token::kw_bind},
      {"in", Token::kw_in},       {"case", Token::kw_case},   {"of", Token::kw_of},
      {"decl", Token::kw_decl},   {"endorse", Token::kw_endorse}, {"to", Token::kw_to},
      {"eta", Token::kw_eta},     {"etav", Token::kw_etav},   {"inj1", Token::kw_inj1},
      {"inj2", Token::kw_inj2},   {"proj1", Token::kw_proj1}, {"proj2", Token::kw_proj2},
      {"unit", Token::kw_unit},   {"all", Token::kw_all},     {"says", Token::kw_says},
      {"top", Token::kw_top},     {"bot", Token::kw_bot},     {"hole", Token::kw_hole},
      {"tt", Token::kw_tt},       {"ff", Token::kw_ff}};

  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      pos_++;
      continue;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      while (pos_ < text_.size() && text_[pos_] != '\n') pos_++;
      continue;
    }
    break;
  }
  const std::size_t start = pos_;
  if (pos_ >= text_.size()) return Token{Token::end, "", start};

  auto make = [&](Token::Kind k, std::size_t len) {
    Token t{k, text_.substr(start, len), start};
    pos_ = start + len;
    return t;
  };
  auto starts = [&](const char* s) {
    return text_.compare(pos_, std::char_traits<char>::length(s), s) == 0;
  };

  const char c = text_[pos_];
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    std::size_t j = pos_;
    while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
      j++;
    const std::string word = text_.substr(start, j - start);
    auto it = keywords.find(word);
    return make(it != keywords.end() ? it->second : Token::ident, word.size());
  }
  if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t j = pos_;
    while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) j++;
    return make(Token::number, j - start);
  }
  if (starts("^->")) return make(Token::proj_conf, 3);
  if (starts("^<-")) return make(Token::proj_integ, 3);
  if (starts("]->")) return make(Token::arrow_close, 3);
  if (starts("-[")) return make(Token::arrow_open, 2);
  if (starts("\\/")) return make(Token::join, 2);
  if (starts("/\\")) return make(Token::meet, 2);
  switch (c) {
    case '(': return make(Token::lparen, 1);
    case ')': return make(Token::rparen, 1);
    case '<': return make(Token::langle, 1);
    case '>': return make(Token::rangle, 1);
    case ',': return make(Token::comma, 1);
    case '.': return make(Token::dot, 1);
    case ':': return make(Token::colon, 1);
    case '|': return make(Token::pipe, 1);
    case '[': return make(Token::lbrack, 1);
    case ']': return make(Token::rbrack, 1);
    case '*': return make(Token::star, 1);
    case '+': return make(Token::plus, 1);
    case '&': return make(Token::amp, 1);
    case '=': return make(Token::equals, 1);
    default: {
      auto [line, col] = line_col(start);
      throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col, {});
    }
  }
}

}  // namespace nmifc
