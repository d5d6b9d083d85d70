#include "grsym/parser.hpp"

#include <cctype>
#include <cmath>

namespace grsym {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, End } kind = Kind::End;
  std::string text;
  long number = 0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  Lexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " near position " + std::to_string(tok_.pos), line_);
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_ = Token{};
    tok_.pos = i_;
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok_.kind = Token::Kind::Number;
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_.text = s_.substr(i_, j - i_);
      tok_.number = std::stol(tok_.text);
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Kind::Ident;
      std::size_t j = i_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      return;
    }
    tok_.kind = Token::Kind::Op;
    tok_.text = std::string(1, c);
    ++i_;
  }

  const std::string& s_;
  int line_;
  std::size_t i_ = 0;
  Token tok_;
};

class ScalarParser {
 public:
  ScalarParser(const std::string& text, const Scope& scope, int line)
      : lex_(text, line), scope_(scope), line_(line) {}

  AstPtr parse() {
    AstPtr e = parse_expr();
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("unexpected trailing input");
    return e;
  }

 private:
  AstPtr make(AstNode n) { return std::make_shared<const AstNode>(std::move(n)); }

  bool at_op(const char* t) const {
    return lex_.peek().kind == Token::Kind::Op && lex_.peek().text == t;
  }

  void expect_op(const char* t) {
    if (!at_op(t)) lex_.fail(std::string("expected '") + t + "'");
    lex_.take();
  }

  AstPtr parse_expr() {
    AstPtr left = parse_term();
    while (at_op("+") || at_op("-")) {
      char op = lex_.take().text[0];
      AstPtr right = parse_term();
      AstNode n;
      n.kind = AstNode::Kind::Binary;
      n.op = op;
      n.children = {left, right};
      left = make(std::move(n));
    }
    return left;
  }

  AstPtr parse_term() {
    AstPtr left = parse_factor();
    while (at_op("*") || at_op("/")) {
      char op = lex_.take().text[0];
      AstPtr right = parse_factor();
      AstNode n;
      n.kind = AstNode::Kind::Binary;
      n.op = op;
      n.children = {left, right};
      left = make(std::move(n));
    }
    return left;
  }

  AstPtr parse_factor() {
    AstPtr base = parse_base();
    if (at_op("^")) {
      lex_.take();
      bool neg = false;
      if (at_op("-")) {
        lex_.take();
        neg = true;
      }
      if (lex_.peek().kind != Token::Kind::Number) lex_.fail("expected integer exponent");
      long e = lex_.take().number;
      AstNode n;
      n.kind = AstNode::Kind::Power;
      n.exponent = neg ? -e : e;
      n.children = {base};
      return make(std::move(n));
    }
    return base;
  }

  AstPtr parse_base() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      Token tok = lex_.take();
      AstNode n;
      n.kind = AstNode::Kind::Number;
      n.value = GaussRat(Rat(tok.number));
      return make(std::move(n));
    }
    if (at_op("(")) {
      lex_.take();
      AstPtr e = parse_expr();
      expect_op(")");
      return e;
    }
    if (at_op("-")) {
      lex_.take();
      AstPtr inner = parse_factor();
      AstNode n;
      n.kind = AstNode::Kind::Unary;
      n.op = '-';
      n.children = {inner};
      return make(std::move(n));
    }
    if (t.kind != Token::Kind::Ident) lex_.fail("expected a value");
    Token id = lex_.take();
    if (id.text == "I") {
      AstNode n;
      n.kind = AstNode::Kind::Number;
      n.value = GaussRat::i();
      return make(std::move(n));
    }
    unsigned primes = 0;
    while (at_op("'")) {
      lex_.take();
      ++primes;
    }
    if (at_op("(")) {
      lex_.take();
      AstPtr arg = parse_expr();
      AstNode n;
      n.kind = AstNode::Kind::Call;
      n.name = id.text;
      n.primes = primes;
      n.children = {arg};
      if (id.text == "root") {
        expect_op(",");
        if (lex_.peek().kind != Token::Kind::Number) lex_.fail("expected root degree");
        n.root_degree = unsigned(lex_.take().number);
      }
      expect_op(")");
      return make(std::move(n));
    }
    if (primes > 0) lex_.fail("derivative marks require an argument list");
    AstNode n;
    n.kind = AstNode::Kind::Symbol;
    n.name = id.text;
    return make(std::move(n));
  }

  Lexer lex_;
  const Scope& scope_;
  int line_;
};

bool is_builtin(const std::string& name) {
  return name == "exp" || name == "sin" || name == "cos" || name == "log" || name == "sqrt" ||
         name == "root";
}

Expr build_expr(const AstPtr& node, const Scope& scope, int line) {
  switch (node->kind) {
    case AstNode::Kind::Number:
      return Expr(node->value);
    case AstNode::Kind::Symbol: {
      auto it = scope.symbols.find(node->name);
      if (it == scope.symbols.end())
        throw ParseError("undeclared symbol '" + node->name + "'", line);
      return Expr::atom(it->second);
    }
    case AstNode::Kind::Unary:
      return -build_expr(node->children[0], scope, line);
    case AstNode::Kind::Binary: {
      Expr a = build_expr(node->children[0], scope, line);
      Expr b = build_expr(node->children[1], scope, line);
      switch (node->op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b.is_zero()) throw ComputeError("division by zero");
          return a / b;
      }
      throw ParseError("unknown operator", line);
    }
    case AstNode::Kind::Power:
      return build_expr(node->children[0], scope, line).pow(node->exponent);
    case AstNode::Kind::Call: {
      Expr arg = build_expr(node->children[0], scope, line);
      const std::string& f = node->name;
      if (is_builtin(f)) {
        if (node->primes > 0)
          throw ParseError("derivative marks are only valid on opaque functions", line);
        if (f == "exp") return exp_expr(arg);
        if (f == "sin") return sin_expr(arg);
        if (f == "cos") return cos_expr(arg);
        if (f == "log") return log_expr(arg);
        if (f == "sqrt") return sqrt_expr(arg);
        return root_expr(arg, node->root_degree);
      }
      if (!scope.opaque_names.count(f))
        throw ParseError("undeclared function '" + f + "'", line);
      if (!arg.den().is_constant())
        throw UnsupportedError("opaque function argument must be polynomial");
      Poly p = arg.num().mul_const(GaussRat(1) / arg.den().constant_value());
      return Expr::atom(AtomTable::instance().opaque(f, p, node->primes));
    }
  }
  throw ParseError("malformed expression", line);
}

}  // namespace

ParsedScalar parse_scalar(const std::string& text, const Scope& scope, int line_no) {
  ScalarParser p(text, scope, line_no);
  AstPtr ast = p.parse();
  return {build_expr(ast, scope, line_no), ast};
}

std::complex<double> eval_ast(const AstPtr& node, const Scope& scope,
                              const std::map<AtomId, std::complex<double>>& values) {
  switch (node->kind) {
    case AstNode::Kind::Number:
      return node->value.to_complex();
    case AstNode::Kind::Symbol:
      return values.at(scope.symbols.at(node->name));
    case AstNode::Kind::Unary:
      return -eval_ast(node->children[0], scope, values);
    case AstNode::Kind::Binary: {
      std::complex<double> a = eval_ast(node->children[0], scope, values);
      std::complex<double> b = eval_ast(node->children[1], scope, values);
      switch (node->op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        default: return a / b;
      }
    }
    case AstNode::Kind::Power: {
      std::complex<double> a = eval_ast(node->children[0], scope, values);
      return std::pow(a, double(node->exponent));
    }
    case AstNode::Kind::Call: {
      std::complex<double> arg = eval_ast(node->children[0], scope, values);
      const std::string& f = node->name;
      if (f == "exp") return std::exp(arg);
      if (f == "sin") return std::sin(arg);
      if (f == "cos") return std::cos(arg);
      if (f == "log") return std::log(arg);
      if (f == "sqrt") return std::sqrt(arg);
      if (f == "root") return std::exp(std::log(arg) / double(node->root_degree));
      // opaque call: resolve the interned atom and look up its sample value
      const AstNode& a = *node->children[0];
      if (a.kind != AstNode::Kind::Symbol)
        throw ComputeError("numeric evaluation of opaque calls needs a coordinate argument");
      AtomId arg_atom = scope.symbols.at(a.name);
      AtomId id = AtomTable::instance().opaque(f, Poly::atom(arg_atom), node->primes);
      return values.at(id);
    }
  }
  throw ComputeError("malformed syntax tree");
}

}  // namespace grsym
