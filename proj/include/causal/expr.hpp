#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "causal/free_product.hpp"

namespace causal {

struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Syntax tree of the element DSL:
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := scalar | ident | 'I' | 'adj(' expr ')' | '(' expr ')'
///
/// Products are n-ary; sums carry a sign per child. Equality ignores spans.
struct ExprAst {
  enum class Kind { scalar, name, product, sum, adjoint, unit };

  Kind kind = Kind::unit;
  Scalar value{};              // scalar
  std::string name;            // name
  std::vector<ExprAst> children;
  std::vector<bool> negated;   // sum: one flag per child
  SourceSpan span;

  friend bool operator==(const ExprAst& a, const ExprAst& b);
};

/// Syntax error; what() is "line:col: message".
class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& message);
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

class UnboundSymbolError : public Error {
 public:
  explicit UnboundSymbolError(const std::string& name) : Error("unbound symbol " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

using SymbolTable = std::map<std::string, FreeElement, std::less<>>;

ExprAst parse(std::string_view text);

/// Source text that parses back to an equal tree.
std::string to_string(const ExprAst& ast);

FreeElement eval_expr(const FreeProduct& alg, const ExprAst& ast, const SymbolTable& symbols);

inline FreeElement eval_expr(const FreeProduct& alg, std::string_view text, const SymbolTable& symbols) {
  return eval_expr(alg, parse(text), symbols);
}

}  // namespace causal
