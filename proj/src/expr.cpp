#include "causal/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace causal {

ParseError::ParseError(SourceSpan span, const std::string& message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      span_(span),
      message_(message) {}

bool operator==(const ExprAst& a, const ExprAst& b) {
  return a.kind == b.kind && a.value == b.value && a.name == b.name && a.negated == b.negated &&
         a.children == b.children;
}

namespace {

enum class Tok { number, ident, plus, minus, star, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
  Scalar value{};  // number
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    SourceSpan span{line_, col_, pos_, 0};
    if (pos_ >= src_.size()) return {Tok::end, {}, span};
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      advance();
      span.length = 1;
      return Token{k, src_.substr(span.offset, 1), span};
    };
    switch (c) {
      case '+': return single(Tok::plus);
      case '-': return single(Tok::minus);
      case '*': return single(Tok::star);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(span);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      span.length = pos_ - span.offset;
      Token t{Tok::ident, src_.substr(span.offset, span.length), span};
      // A bare 'i' is the imaginary unit.
      if (t.text == "i") {
        t.kind = Tok::number;
        t.value = Scalar{0.0, 1.0};
      }
      return t;
    }
    // Report the whole UTF-8 sequence of the offending character.
    std::size_t len = 1;
    while (span.offset + len < src_.size() && (static_cast<unsigned char>(src_[span.offset + len]) & 0xC0) == 0x80)
      ++len;
    throw ParseError(span, "unknown token '" + std::string(src_.substr(span.offset, len)) + "'");
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  bool at_digit() const { return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])); }

  Token number(SourceSpan span) {
    while (at_digit()) advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (at_digit()) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      const int save_col = col_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (!at_digit()) {
        pos_ = save;
        col_ = save_col;
      } else {
        while (at_digit()) advance();
      }
    }
    const auto digits = src_.substr(span.offset, pos_ - span.offset);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      span.length = digits.size();
      throw ParseError(span, "malformed number '" + std::string(digits) + "'");
    }
    bool imaginary = false;
    if (pos_ < src_.size() && src_[pos_] == 'i' &&
        !(pos_ + 1 < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
      imaginary = true;
      advance();
    }
    span.length = pos_ - span.offset;
    Token t{Tok::number, src_.substr(span.offset, span.length), span};
    t.value = imaginary ? Scalar{0.0, v} : Scalar{v, 0.0};
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  ExprAst parse_all() {
    ExprAst e = expr();
    if (tok_.kind != Tok::end) throw ParseError(tok_.span, "unexpected '" + std::string(tok_.text) + "'");
    return e;
  }

 private:
  void bump() { tok_ = lex_.next(); }

  void expect(Tok k, const char* what) {
    if (tok_.kind != k) {
      const auto found = tok_.kind == Tok::end ? std::string("end of input") : "'" + std::string(tok_.text) + "'";
      throw ParseError(tok_.span, std::string("expected ") + what + ", found " + found);
    }
    bump();
  }

  ExprAst expr() {
    ExprAst first = term();
    if (tok_.kind != Tok::plus && tok_.kind != Tok::minus) return first;
    ExprAst sum;
    sum.kind = ExprAst::Kind::sum;
    sum.span = first.span;
    sum.children.push_back(std::move(first));
    sum.negated.push_back(false);
    while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      const bool neg = tok_.kind == Tok::minus;
      bump();
      sum.children.push_back(term());
      sum.negated.push_back(neg);
    }
    return fold_scalar_pair(std::move(sum));
  }

  // "a+bi" and friends: a two-term sum of scalar literals is one scalar.
  static ExprAst fold_scalar_pair(ExprAst sum) {
    if (sum.children.size() != 2 || sum.children[0].kind != ExprAst::Kind::scalar ||
        sum.children[1].kind != ExprAst::Kind::scalar)
      return sum;
    ExprAst out;
    out.kind = ExprAst::Kind::scalar;
    out.span = sum.span;
    const Scalar lhs = sum.children[0].value;
    const Scalar rhs = sum.children[1].value;
    out.value = sum.negated[1] ? lhs - rhs : lhs + rhs;
    return out;
  }

  ExprAst term() {
    ExprAst first = factor();
    if (tok_.kind != Tok::star) return first;
    ExprAst prod;
    prod.kind = ExprAst::Kind::product;
    prod.span = first.span;
    prod.children.push_back(std::move(first));
    while (tok_.kind == Tok::star) {
      bump();
      prod.children.push_back(factor());
    }
    return prod;
  }

  ExprAst factor() {
    ExprAst node;
    node.span = tok_.span;
    switch (tok_.kind) {
      case Tok::number:
        node.kind = ExprAst::Kind::scalar;
        node.value = tok_.value;
        bump();
        return node;
      case Tok::ident: {
        const std::string_view id = tok_.text;
        if (id == "I") {
          node.kind = ExprAst::Kind::unit;
          bump();
          return node;
        }
        if (id == "adj") {
          bump();
          expect(Tok::lparen, "'(' after adj");
          node.kind = ExprAst::Kind::adjoint;
          node.children.push_back(expr());
          expect(Tok::rparen, "')'");
          return node;
        }
        node.kind = ExprAst::Kind::name;
        node.name = std::string(id);
        bump();
        return node;
      }
      case Tok::lparen: {
        bump();
        ExprAst inner = expr();
        expect(Tok::rparen, "')'");
        inner.span = node.span;
        return inner;
      }
      case Tok::end:
        throw ParseError(tok_.span, "unexpected end of input");
      default:
        throw ParseError(tok_.span, "unexpected '" + std::string(tok_.text) + "'");
    }
  }

  Lexer lex_;
  Token tok_{};
};

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Nonnegative reals print bare; negatives go through a folded "(0-x)".
std::string format_real(double v) {
  if (v < 0.0) return "(0-" + format_double(-v) + ")";
  return format_double(v == 0.0 ? 0.0 : v);
}

std::string format_scalar(Scalar v) {
  const double re = v.real();
  const double im = v.imag();
  if (im == 0.0) return format_real(re);
  const std::string imag = format_double(std::abs(im)) + "i";
  if (re == 0.0) return im > 0.0 ? imag : "(0-" + imag + ")";
  return "(" + format_real(re) + (im > 0.0 ? "+" : "-") + imag + ")";
}

void print(const ExprAst& ast, std::string& out) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::scalar: out += format_scalar(ast.value); break;
    case K::name: out += ast.name; break;
    case K::unit: out += "I"; break;
    case K::adjoint:
      out += "adj(";
      print(ast.children.at(0), out);
      out += ")";
      break;
    case K::product:
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i) out += "*";
        const auto& c = ast.children[i];
        const bool wrap = c.kind == K::sum || c.kind == K::product;
        if (wrap) out += "(";
        print(c, out);
        if (wrap) out += ")";
      }
      break;
    case K::sum:
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        if (i) out += ast.negated[i] ? " - " : " + ";
        const auto& c = ast.children[i];
        const bool wrap = c.kind == K::sum;
        if (wrap) out += "(";
        print(c, out);
        if (wrap) out += ")";
      }
      break;
  }
}

}  // namespace

ExprAst parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const ExprAst& ast) {
  std::string out;
  print(ast, out);
  return out;
}

FreeElement eval_expr(const FreeProduct& alg, const ExprAst& ast, const SymbolTable& symbols) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::scalar: return scale(ast.value, alg.unit());
    case K::unit: return alg.unit();
    case K::name: {
      auto it = symbols.find(ast.name);
      if (it == symbols.end()) throw UnboundSymbolError(ast.name);
      return it->second;
    }
    case K::adjoint: return star(eval_expr(alg, ast.children.at(0), symbols));
    case K::product: {
      FreeElement acc = eval_expr(alg, ast.children.at(0), symbols);
      for (std::size_t i = 1; i < ast.children.size(); ++i)
        acc = alg.multiply(acc, eval_expr(alg, ast.children[i], symbols));
      return acc;
    }
    case K::sum: {
      FreeElement acc;
      for (std::size_t i = 0; i < ast.children.size(); ++i) {
        FreeElement term = eval_expr(alg, ast.children[i], symbols);
        acc = add(acc, ast.negated[i] ? scale(-1.0, term) : term);
      }
      return acc;
    }
  }
  return alg.unit();
}

}  // namespace causal
