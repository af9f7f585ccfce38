#include "adlv/parser.hpp"

#include <charconv>
#include <set>

#include "lexer.hpp"

namespace adlv {

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : std::runtime_error(span.to_string() + ": expected " + expected + ", found " + found),
      span_(std::move(span)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

using detail::Tok;
using detail::Token;

const std::set<std::string, std::less<>> kExprKeywords = {"and", "or", "not", "imply", "true",
                                                           "false"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == kw;
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::string expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, std::move(expected), std::move(found));
  }

  const Token& expect(Tok kind) {
    if (!at(kind)) fail(detail::describe(kind));
    return next();
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("'" + std::string(kw) + "'");
    next();
  }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    next();
    return true;
  }

  std::string identifier(std::string_view what = "identifier") {
    if (!at(Tok::Ident) || kExprKeywords.count(peek().text)) fail(std::string(what));
    return next().text;
  }

  std::int64_t integer() {
    const Token& t = expect(Tok::Int);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) throw ParseError(t.span, "integer literal in range", t.text);
    return v;
  }

  std::int64_t signed_integer() {
    bool neg = accept(Tok::Minus);
    std::int64_t v = integer();
    return neg ? -v : v;
  }

  // ---- expressions ----------------------------------------------------

  ExprPtr expression() { return imply(); }

  ExprPtr imply() {
    auto lhs = disjunction();
    if (at_keyword("imply")) {
      SourceSpan sp = next().span;
      auto rhs = imply();
      return make_binary(ExprOp::Imply, lhs, rhs, sp);
    }
    return lhs;
  }

  ExprPtr disjunction() {
    auto lhs = conjunction();
    while (at_keyword("or") || at(Tok::OrOr)) {
      SourceSpan sp = next().span;
      lhs = make_binary(ExprOp::Or, lhs, conjunction(), sp);
    }
    return lhs;
  }

  ExprPtr conjunction() {
    auto lhs = negation();
    while (at_keyword("and") || at(Tok::AndAnd)) {
      SourceSpan sp = next().span;
      lhs = make_binary(ExprOp::And, lhs, negation(), sp);
    }
    return lhs;
  }

  ExprPtr negation() {
    if (at_keyword("not") || at(Tok::Bang)) {
      SourceSpan sp = next().span;
      return make_unary(ExprOp::Not, negation(), sp);
    }
    return comparison();
  }

  ExprPtr comparison() {
    auto lhs = additive();
    ExprOp op;
    switch (peek().kind) {
      case Tok::Lt: op = ExprOp::Lt; break;
      case Tok::Le: op = ExprOp::Le; break;
      case Tok::EqEq: op = ExprOp::Eq; break;
      case Tok::Ne: op = ExprOp::Ne; break;
      case Tok::Ge: op = ExprOp::Ge; break;
      case Tok::Gt: op = ExprOp::Gt; break;
      default: return lhs;
    }
    SourceSpan sp = next().span;
    return make_binary(op, lhs, additive(), sp);
  }

  ExprPtr additive() {
    auto lhs = unary();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      ExprOp op = at(Tok::Plus) ? ExprOp::Add : ExprOp::Sub;
      SourceSpan sp = next().span;
      lhs = make_binary(op, lhs, unary(), sp);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at(Tok::Minus)) {
      SourceSpan sp = next().span;
      auto operand = unary();
      if (operand->op == ExprOp::IntLit) return make_int(-operand->value, sp);
      return make_unary(ExprOp::Neg, operand, sp);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      SourceSpan sp = t.span;
      return make_int(integer(), sp);
    }
    if (t.kind == Tok::LParen) {
      next();
      auto e = expression();
      expect(Tok::RParen);
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        bool v = t.text == "true";
        SourceSpan sp = next().span;
        return make_bool(v, sp);
      }
      if (kExprKeywords.count(t.text)) fail("expression");
      SourceSpan sp = t.span;
      std::string first = next().text;
      if (at(Tok::Dot)) {
        next();
        std::string second = identifier();
        return make_ident(std::move(second), std::move(first), sp);
      }
      return make_ident(std::move(first), {}, sp);
    }
    fail("expression");
  }

  Assignment assignment() {
    SourceSpan sp = peek().span;
    std::string target = identifier("assignment target");
    if (!accept(Tok::Assign) && !accept(Tok::Equal)) fail("':='");
    return Assignment{std::move(target), expression(), sp};
  }

  std::vector<Assignment> assignments() {
    std::vector<Assignment> out;
    out.push_back(assignment());
    while (accept(Tok::Comma)) out.push_back(assignment());
    return out;
  }

  // ---- model ----------------------------------------------------------

  DataType type() {
    if (accept_keyword("bool")) return DataType::boolean();
    expect_keyword("int");
    if (!accept(Tok::LBracket)) return DataType::int_range(kDefaultIntLo, kDefaultIntHi);
    auto lo = signed_integer();
    expect(Tok::DotDot);
    auto hi = signed_integer();
    expect(Tok::RBracket);
    return DataType::int_range(static_cast<std::int32_t>(lo), static_cast<std::int32_t>(hi));
  }

  VariableDecl vardecl() {
    SourceSpan sp = peek().span;
    expect_keyword("var");
    VariableDecl v;
    v.span = sp;
    v.name = identifier("variable name");
    expect(Tok::Colon);
    v.type = type();
    v.initial = v.type.lo;
    if (accept(Tok::Equal)) {
      if (accept_keyword("true")) {
        v.initial = 1;
      } else if (accept_keyword("false")) {
        v.initial = 0;
      } else {
        v.initial = static_cast<std::int32_t>(signed_integer());
      }
    }
    expect(Tok::Semi);
    return v;
  }

  TriggerPolicy trigger() {
    TriggerPolicy t;
    t.span = peek().span;
    expect_keyword("trigger");
    if (accept_keyword("time")) {
      t.policy = TriggerKind::Time;
      expect_keyword("period");
      t.period = integer();
    } else if (accept_keyword("event")) {
      t.policy = TriggerKind::Event;
    } else {
      fail("'time' or 'event'");
    }
    expect_keyword("exec");
    t.execution_time = integer();
    expect(Tok::Semi);
    return t;
  }

  Port port() {
    Port p;
    p.span = peek().span;
    if (accept_keyword("in")) {
      p.direction = PortDirection::In;
    } else {
      expect_keyword("out");
      p.direction = PortDirection::Out;
    }
    if (accept_keyword("trigger")) p.is_trigger = true;
    if (accept_keyword("client")) p.kind = PortKind::ClientServer;
    expect_keyword("port");
    p.name = identifier("port name");
    expect(Tok::Colon);
    p.type = type();
    expect(Tok::Semi);
    return p;
  }

  AnnexState annex_state() {
    AnnexState s;
    s.span = peek().span;
    expect_keyword("state");
    s.name = identifier("state name");
    if (accept_keyword("initial")) s.initial = true;
    if (accept_keyword("budget")) s.budget = integer();
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      AnnexTransition tr;
      tr.span = peek().span;
      expect_keyword("on");
      tr.guard = expression();
      if (accept(Tok::Slash)) tr.assignments = assignments();
      expect(Tok::Arrow);
      tr.target = identifier("target state");
      expect(Tok::Semi);
      s.transitions.push_back(std::move(tr));
    }
    expect(Tok::RBrace);
    return s;
  }

  void annex(BehaviorAnnex& ba) {
    expect_keyword("annex");
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      if (at_keyword("pre") || at_keyword("post") || at_keyword("invariant")) {
        Condition c;
        c.span = peek().span;
        const std::string kw = next().text;
        c.kind = kw == "pre" ? ConditionKind::Pre
                 : kw == "post" ? ConditionKind::Post
                                : ConditionKind::Invariant;
        c.expr = expression();
        expect(Tok::Semi);
        ba.parameter_constraints.push_back(std::move(c));
      } else if (at_keyword("state")) {
        ba.state_machine.push_back(annex_state());
      } else if (accept_keyword("compute")) {
        for (auto& a : assignments()) ba.computations.push_back(std::move(a));
        expect(Tok::Semi);
      } else {
        fail("'pre', 'post', 'invariant', 'state' or 'compute'");
      }
    }
    expect(Tok::RBrace);
  }

  AnalysisFunction function() {
    AnalysisFunction f;
    f.span = peek().span;
    expect_keyword("function");
    f.name = identifier("function name");
    if (accept_keyword("as")) f.instance = identifier("instance name");
    expect(Tok::LBrace);
    f.trigger = trigger();
    while (!at(Tok::RBrace)) {
      if (at_keyword("in") || at_keyword("out")) {
        f.ports.push_back(port());
      } else if (at_keyword("var")) {
        f.behavior.parameters.push_back(vardecl());
      } else if (at_keyword("annex")) {
        annex(f.behavior);
      } else {
        fail("'in', 'out', 'var', 'annex' or '}'");
      }
    }
    expect(Tok::RBrace);
    return f;
  }

  PortRef port_ref() {
    PortRef r;
    r.function = identifier("function name");
    expect(Tok::Dot);
    r.port = identifier("port name");
    return r;
  }

  Connector connector() {
    Connector c;
    c.span = peek().span;
    expect_keyword("connect");
    c.source = port_ref();
    expect(Tok::Arrow);
    c.target = port_ref();
    expect(Tok::Semi);
    return c;
  }

  EnvSpec env() {
    EnvSpec e;
    e.span = peek().span;
    expect_keyword("env");
    e.name = identifier("environment name");
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      EnvWrite w;
      w.span = peek().span;
      expect_keyword("write");
      w.target = port_ref();
      expect(Tok::Assign);
      w.value = expression();
      if (accept_keyword("every")) w.period = integer();
      expect(Tok::Semi);
      e.writes.push_back(std::move(w));
    }
    expect(Tok::RBrace);
    return e;
  }

  FaaModel model() {
    FaaModel m;
    m.span = peek().span;
    expect_keyword("faa");
    m.name = identifier("model name");
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      if (at_keyword("var")) {
        m.globals.push_back(vardecl());
      } else if (at_keyword("function")) {
        m.functions.push_back(function());
      } else if (at_keyword("connect")) {
        m.connectors.push_back(connector());
      } else if (at_keyword("env")) {
        if (m.environment) fail("at most one 'env' block");
        m.environment = env();
      } else {
        fail("'var', 'function', 'connect', 'env' or '}'");
      }
    }
    expect(Tok::RBrace);
    expect(Tok::End);
    return m;
  }

  Query query() {
    if (at_keyword("A") && peek(1).kind == Tok::LBracket && peek(2).kind == Tok::RBracket) {
      next();
      next();
      next();
      if (at_keyword("not") && at_keyword("deadlock", 1) && peek(2).kind == Tok::End) {
        next();
        next();
        return Query::deadlock_free();
      }
      auto q = Query::invariant(expression());
      expect(Tok::End);
      return q;
    }
    if (at_keyword("E") && peek(1).kind == Tok::Lt && peek(2).kind == Tok::Gt) {
      next();
      next();
      next();
      auto q = Query::reach(expression());
      expect(Tok::End);
      return q;
    }
    if (at_keyword("response")) {
      next();
      auto request = expression();
      expect(Tok::FatArrow);
      auto response = expression();
      expect_keyword("within");
      std::optional<std::int64_t> bound;
      if (!accept_keyword("inf")) bound = integer();
      expect(Tok::End);
      return Query::bounded_response(request, response, bound);
    }
    auto p = expression();
    expect(Tok::LongArrow);
    auto q = expression();
    expect(Tok::End);
    return Query::leads_to(p, q);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FaaModel parse_model(std::string_view text, std::string_view file) {
  Parser p(detail::tokenize(text, file));
  return p.model();
}

std::vector<Query> parse_queries(std::string_view text, std::string_view file) {
  std::vector<Query> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    auto toks = detail::tokenize(line, file, line_no);
    if (toks.size() > 1) {
      Parser p(std::move(toks));
      Query q = p.query();
      std::string_view label = line;
      if (auto c = label.find("//"); c != std::string_view::npos) label = label.substr(0, c);
      while (!label.empty() && (label.back() == ' ' || label.back() == '\t' || label.back() == '\r'))
        label.remove_suffix(1);
      while (!label.empty() && (label.front() == ' ' || label.front() == '\t'))
        label.remove_prefix(1);
      q.label = std::string(label);
      q.line = line_no;
      out.push_back(std::move(q));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

ExprPtr parse_expression(std::string_view text, std::string_view file) {
  Parser p(detail::tokenize(text, file));
  auto e = p.expression();
  p.expect(Tok::End);
  return e;
}

std::vector<Assignment> parse_assignments(std::string_view text, std::string_view file) {
  Parser p(detail::tokenize(text, file));
  std::vector<Assignment> out;
  if (p.at(Tok::End)) return out;
  out = p.assignments();
  p.expect(Tok::End);
  return out;
}

}  // namespace adlv
