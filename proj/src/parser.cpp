#include "algchar/parser.hpp"

#include <cctype>

namespace algchar {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    std::size_t p = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::End, "", p};
      return;
    }
    char c = s_[i_];
    if (std::isdigit((unsigned char)c)) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit((unsigned char)s_[j])) ++j;
      tok_ = {Tok::Number, s_.substr(i_, j - i_), p};
      i_ = j;
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum((unsigned char)s_[j]) || s_[j] == '_'))
        ++j;
      tok_ = {Tok::Ident, s_.substr(i_, j - i_), p};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Tok::Plus, "+", p}; return;
      case '-': tok_ = {Tok::Minus, "-", p}; return;
      case '*': tok_ = {Tok::Star, "*", p}; return;
      case '/': tok_ = {Tok::Slash, "/", p}; return;
      case '^': tok_ = {Tok::Caret, "^", p}; return;
      case '(': tok_ = {Tok::LParen, "(", p}; return;
      case ')': tok_ = {Tok::RParen, ")", p}; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", p);
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const CtxPtr& ctx) : lex_(text), ctx_(ctx) {}

  RatExpr parse() {
    RatExpr e = sum();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("trailing input", lex_.peek().pos);
    return e;
  }

 private:
  RatExpr sum() {
    RatExpr e = product();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.take();
        e = e + product();
      } else if (k == Tok::Minus) {
        lex_.take();
        e = e - product();
      } else {
        return e;
      }
    }
  }

  RatExpr product() {
    RatExpr e = unary();
    while (true) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        lex_.take();
        e = e * unary();
      } else if (k == Tok::Slash) {
        Token t = lex_.take();
        RatExpr d = unary();
        if (d.is_zero())
          throw MathError("division by zero polynomial at position " +
                          std::to_string(t.pos));
        e = e / d;
      } else {
        return e;
      }
    }
  }

  RatExpr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return -unary();
    }
    return power();
  }

  RatExpr power() {
    RatExpr base = atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      Token e = lex_.take();
      if (e.kind != Tok::Number)
        throw ParseError("exponent must be a nonnegative integer", e.pos);
      unsigned long v = 0;
      for (char c : e.text) {
        v = v * 10 + (unsigned long)(c - '0');
        if (v > 100000) throw ParseError("exponent too large", e.pos);
      }
      return base.pow((int)v);
    }
    return base;
  }

  RatExpr atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number: {
        Poly p = Poly::constant(ctx_, Scalar(ctx_->field(), BigRat(t.text)));
        return RatExpr(std::move(p));
      }
      case Tok::Ident: {
        if (t.text == "i") {
          if (ctx_->field() != Field::Qi)
            throw ParseError("'i' is only available over the field Qi", t.pos);
          return RatExpr::constant(ctx_, Scalar::imaginary_unit(Field::Qi));
        }
        int v = ctx_->index_of(t.text);
        if (v < 0) throw ParseError("undeclared identifier '" + t.text + "'", t.pos);
        return RatExpr::variable(ctx_, v);
      }
      case Tok::LParen: {
        RatExpr e = sum();
        Token r = lex_.take();
        if (r.kind != Tok::RParen) throw ParseError("expected ')'", r.pos);
        return e;
      }
      default:
        throw ParseError("expected a number, identifier or '('", t.pos);
    }
  }

  Lexer lex_;
  CtxPtr ctx_;
};

}  // namespace

RatExpr parse_expr(const std::string& text, const CtxPtr& ctx) {
  return Parser(text, ctx).parse();
}

}  // namespace algchar
