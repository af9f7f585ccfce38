#include "lexer.hpp"

#include <cctype>

#include "adlv/parser.hpp"

namespace adlv::detail {

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Assign: return "':='";
    case Tok::Arrow: return "'->'";
    case Tok::LongArrow: return "'-->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Slash: return "'/'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::EqEq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Ge: return "'>='";
    case Tok::Gt: return "'>'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::Equal: return "'='";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text, std::string_view file, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  auto span_here = [&] { return SourceSpan{std::string(file), line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    Token t{kind, std::string(text.substr(i, len)), span_here()};
    out.push_back(std::move(t));
    advance(len);
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, j - i);
      continue;
    }
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    if (starts("-->")) { push(Tok::LongArrow, 3); continue; }
    if (starts("->")) { push(Tok::Arrow, 2); continue; }
    if (starts(":=")) { push(Tok::Assign, 2); continue; }
    if (starts("..")) { push(Tok::DotDot, 2); continue; }
    if (starts("<=")) { push(Tok::Le, 2); continue; }
    if (starts(">=")) { push(Tok::Ge, 2); continue; }
    if (starts("==")) { push(Tok::EqEq, 2); continue; }
    if (starts("!=")) { push(Tok::Ne, 2); continue; }
    if (starts("=>")) { push(Tok::FatArrow, 2); continue; }
    if (starts("&&")) { push(Tok::AndAnd, 2); continue; }
    if (starts("||")) { push(Tok::OrOr, 2); continue; }
    switch (c) {
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case ':': push(Tok::Colon, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '<': push(Tok::Lt, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case '!': push(Tok::Bang, 1); continue;
      case '=': push(Tok::Equal, 1); continue;
      default: break;
    }
    throw ParseError(span_here(), "token", std::string("'") + c + "'");
  }
  out.push_back(Token{Tok::End, "", span_here()});
  return out;
}

}  // namespace adlv::detail
