#ifndef GRSYM_PARSER_HPP
#define GRSYM_PARSER_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "grsym/expr.hpp"

namespace grsym {

/// Name resolution context for scalar expressions.
struct Scope {
  std::map<std::string, AtomId> symbols;  // coordinates and parameters
  std::set<std::string> opaque_names;
};

struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

/// Raw syntax tree kept alongside the canonical Expr so numeric evaluation can
/// bypass canonicalization entirely.
struct AstNode {
  enum class Kind { Number, Symbol, Unary, Binary, Call, Power } kind;
  GaussRat value;     // Number
  std::string name;   // Symbol, Call
  unsigned primes = 0;
  unsigned root_degree = 0;
  char op = 0;        // '+','-','*','/' for Binary, '-' for Unary
  long exponent = 0;  // Power
  std::vector<AstPtr> children;
};

struct ParsedScalar {
  Expr expr;
  AstPtr ast;
};

/// Parses a scalar expression; throws ParseError on malformed input or
/// undeclared identifiers.
ParsedScalar parse_scalar(const std::string& text, const Scope& scope, int line_no = 0);

/// Evaluates the raw syntax tree numerically with principal branches.
std::complex<double> eval_ast(const AstPtr& node, const Scope& scope,
                              const std::map<AtomId, std::complex<double>>& values);

}  // namespace grsym

#endif
