#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adlv/types.hpp"

namespace adlv::detail {

enum class Tok {
  Ident,
  Int,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Comma,
  Dot,
  DotDot,
  Assign,   // :=
  Arrow,    // ->
  LongArrow,  // -->
  FatArrow,   // =>
  Slash,
  Plus,
  Minus,
  Lt,
  Le,
  EqEq,
  Ne,
  Ge,
  Gt,
  AndAnd,
  OrOr,
  Bang,
  Equal,  // single '=' (C-like assignment)
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const char* describe(Tok kind);

/// Tokenizes the whole input; throws ParseError on an illegal character.
std::vector<Token> tokenize(std::string_view text, std::string_view file, int first_line = 1);

}  // namespace adlv::detail
