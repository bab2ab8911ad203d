#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace nmifc {

struct Token {
  enum Kind {
    ident,
    number,
    // keywords
    kw_lam, kw_tlam, kw_bind, kw_in, kw_case, kw_of, kw_decl, kw_endorse, kw_to,
    kw_eta, kw_etav, kw_inj1, kw_inj2, kw_proj1, kw_proj2, kw_unit, kw_all,
    kw_says, kw_top, kw_bot, kw_hole, kw_tt, kw_ff,
    // punctuation
    lparen, rparen, langle, rangle, comma, dot, colon, pipe, lbrack, rbrack,
    star, plus, amp, equals,
    // multi-character
    arrow_open,   // -[
    arrow_close,  // ]->
    proj_conf,    // ^->
    proj_integ,   // ^<-
    join,         // \/
    meet,         // /\ .
    end
  };

  Kind kind;
  std::string text;
  std::size_t pos;
};

/// Human-readable token name for diagnostics.
const char* token_name(Token::Kind k);

class Lexer {
 public:
  explicit Lexer(std::string text);

  const Token& peek(std::size_t ahead = 0);
  Token take();

  const std::string& text() const { return text_; }
  /// 1-based line and column of a byte offset.
  std::pair<std::size_t, std::size_t> line_col(std::size_t pos) const;

 private:
  Token scan();
  std::string text_;
  std::size_t pos_ = 0;
  std::deque<Token> buffer_;
};

}  // namespace nmifc
