#include "gflat/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "gflat/error.hpp"

namespace gflat {

ExprPtr Expr::number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::constant;
  e->constant = v;
  return e;
}

ExprPtr Expr::variable(int index_zero_based) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::variable;
  e->var_index = index_zero_based;
  return e;
}

static ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) { return binary(Kind::add, std::move(a), std::move(b)); }
ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return binary(Kind::sub, std::move(a), std::move(b)); }
ExprPtr Expr::mul(ExprPtr a, ExprPtr b) { return binary(Kind::mul, std::move(a), std::move(b)); }
ExprPtr Expr::div(ExprPtr a, ExprPtr b) { return binary(Kind::div, std::move(a), std::move(b)); }

ExprPtr Expr::pow(ExprPtr a, int exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::pow;
  e->lhs = std::move(a);
  e->exponent = exponent;
  return e;
}

ExprPtr Expr::call(FuncKind f, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::call;
  e->func = f;
  e->lhs = std::move(a);
  return e;
}

namespace {

struct Token {
  enum class Type { number, identifier, plus, minus, star, slash, caret, lparen, rparen, end };
  Type type = Type::end;
  double value = 0.0;
  std::string text;
  std::size_t position = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    current_ = Token{};
    current_.position = pos_;
    if (pos_ >= src_.size()) {
      current_.type = Token::Type::end;
      current_.text = "<end>";
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': single(Token::Type::plus); return;
      case '-': single(Token::Type::minus); return;
      case '*': single(Token::Type::star); return;
      case '/': single(Token::Type::slash); return;
      case '^': single(Token::Type::caret); return;
      case '(': single(Token::Type::lparen); return;
      case ')': single(Token::Type::rparen); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      current_.type = Token::Type::identifier;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    throw ParseError("unexpected character", pos_, std::string(1, c));
  }

  void single(Token::Type t) {
    current_.type = t;
    current_.text = std::string(1, src_[pos_]);
    ++pos_;
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // bare 'e' belongs to the next token
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    if (text == ".") throw ParseError("malformed number", start, text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw ParseError("malformed number", start, text);
    current_.type = Token::Type::number;
    current_.value = value;
    current_.text = std::move(text);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view src, int dim) : lexer_(src), dim_(dim) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    const Token& t = lexer_.peek();
    if (t.type != Token::Type::end)
      throw ParseError("unexpected trailing input", t.position, t.text);
    return e;
  }

 private:
  ExprPtr expr() {
    bool negate = false;
    if (lexer_.peek().type == Token::Type::minus) {
      lexer_.take();
      negate = true;
    } else if (lexer_.peek().type == Token::Type::plus) {
      lexer_.take();
    }
    ExprPtr e = term();
    if (negate) e = Expr::sub(Expr::number(0.0), std::move(e));
    while (true) {
      Token::Type t = lexer_.peek().type;
      if (t == Token::Type::plus) {
        lexer_.take();
        e = Expr::add(std::move(e), term());
      } else if (t == Token::Type::minus) {
        lexer_.take();
        e = Expr::sub(std::move(e), term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      Token::Type t = lexer_.peek().type;
      if (t == Token::Type::star) {
        lexer_.take();
        e = Expr::mul(std::move(e), factor());
      } else if (t == Token::Type::slash) {
        lexer_.take();
        e = Expr::div(std::move(e), factor());
      } else {
        return e;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    if (lexer_.peek().type != Token::Type::caret) return base;
    lexer_.take();
    int sign = 1;
    if (lexer_.peek().type == Token::Type::minus) {
      lexer_.take();
      sign = -1;
    }
    Token t = lexer_.take();
    if (t.type != Token::Type::number)
      throw ParseError("exponent must be an integer", t.position, t.text);
    double v = t.value;
    if (v != std::floor(v) || std::abs(v) > 64.0)
      throw ParseError("exponent must be an integer with |e| <= 64", t.position, t.text);
    return Expr::pow(std::move(base), sign * static_cast<int>(v));
  }

  ExprPtr atom() {
    Token t = lexer_.take();
    switch (t.type) {
      case Token::Type::number:
        return Expr::number(t.value);
      case Token::Type::lparen: {
        ExprPtr e = expr();
        Token close = lexer_.take();
        if (close.type != Token::Type::rparen)
          throw ParseError("expected ')'", close.position, close.text);
        return e;
      }
      case Token::Type::identifier:
        return identifier(t);
      default:
        throw ParseError("expected number, variable, function or '('", t.position, t.text);
    }
  }

  ExprPtr identifier(const Token& t) {
    const std::string& name = t.text;
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      int index = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
      (void)ptr;
      if (ec != std::errc{} || index < 1)
        throw ParseError("malformed variable", t.position, name);
      if (index > dim_)
        throw ParseError("variable index exceeds dimension " + std::to_string(dim_),
                         t.position, name);
      return Expr::variable(index - 1);
    }
    FuncKind f;
    if (name == "sqrt") f = FuncKind::sqrt;
    else if (name == "exp") f = FuncKind::exp;
    else if (name == "log") f = FuncKind::log;
    else if (name == "abs") f = FuncKind::abs;
    else throw ParseError("unknown identifier", t.position, name);
    Token open = lexer_.take();
    if (open.type != Token::Type::lparen)
      throw ParseError("expected '(' after function name", open.position, open.text);
    ExprPtr arg = expr();
    Token close = lexer_.take();
    if (close.type != Token::Type::rparen)
      throw ParseError("expected ')'", close.position, close.text);
    return Expr::call(f, std::move(arg));
  }

  Lexer lexer_;
  int dim_;
};

}  // namespace

ExprPtr parse_expression(std::string_view source, int dim) {
  if (dim < 1) throw ParseError("dimension must be >= 1", 0, "");
  return Parser(source, dim).parse();
}

double eval(const Expr& e, const Eigen::VectorXd& x) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return e.constant;
    case Expr::Kind::variable:
      return x[e.var_index];
    case Expr::Kind::add:
      return eval(*e.lhs, x) + eval(*e.rhs, x);
    case Expr::Kind::sub:
      return eval(*e.lhs, x) - eval(*e.rhs, x);
    case Expr::Kind::mul:
      return eval(*e.lhs, x) * eval(*e.rhs, x);
    case Expr::Kind::div: {
      double denom = eval(*e.rhs, x);
      if (denom == 0.0) throw DomainError("division by zero", x);
      return eval(*e.lhs, x) / denom;
    }
    case Expr::Kind::pow: {
      double base = eval(*e.lhs, x);
      if (base == 0.0 && e.exponent < 0) throw DomainError("zero raised to negative power", x);
      // Binary exponentiation, matching the Taylor arithmetic bit for
      // bit so jet values agree with plain evaluation.
      int n = e.exponent < 0 ? -e.exponent : e.exponent;
      double r = 1.0;
      double b = base;
      while (n > 0) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n > 0) b *= b;
      }
      return e.exponent < 0 ? 1.0 / r : r;
    }
    case Expr::Kind::call: {
      double a = eval(*e.lhs, x);
      switch (e.func) {
        case FuncKind::sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative value", x);
          return std::sqrt(a);
        case FuncKind::exp:
          return std::exp(a);
        case FuncKind::log:
          if (a <= 0.0) throw DomainError("log of non-positive value", x);
          return std::log(a);
        case FuncKind::abs:
          return std::abs(a);
      }
      break;
    }
  }
  throw std::logic_error("corrupt expression node");
}

namespace {

Taylor taylor_rec(const Expr& e, const Eigen::VectorXd& x0, const Eigen::VectorXd& v) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return Taylor::constant(e.constant);
    case Expr::Kind::variable:
      return Taylor::line(x0[e.var_index], v[e.var_index]);
    case Expr::Kind::add:
      return taylor_rec(*e.lhs, x0, v) + taylor_rec(*e.rhs, x0, v);
    case Expr::Kind::sub:
      return taylor_rec(*e.lhs, x0, v) - taylor_rec(*e.rhs, x0, v);
    case Expr::Kind::mul:
      return taylor_rec(*e.lhs, x0, v) * taylor_rec(*e.rhs, x0, v);
    case Expr::Kind::div:
      return taylor_rec(*e.lhs, x0, v) / taylor_rec(*e.rhs, x0, v);
    case Expr::Kind::pow:
      return pow_int(taylor_rec(*e.lhs, x0, v), e.exponent);
    case Expr::Kind::call: {
      Taylor a = taylor_rec(*e.lhs, x0, v);
      switch (e.func) {
        case FuncKind::sqrt: return sqrt(a);
        case FuncKind::exp: return exp(a);
        case FuncKind::log: return log(a);
        case FuncKind::abs: return abs(a);
      }
      break;
    }
  }
  throw std::logic_error("corrupt expression node");
}

}  // namespace

Taylor eval_taylor(const Expr& e, const Eigen::VectorXd& x0, const Eigen::VectorXd& v) {
  try {
    return taylor_rec(e, x0, v);
  } catch (const std::domain_error& err) {
    throw DomainError(err.what(), x0);
  }
}

int max_variable(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return 0;
    case Expr::Kind::variable:
      return e.var_index + 1;
    case Expr::Kind::pow:
      return max_variable(*e.lhs);
    case Expr::Kind::call:
      return max_variable(*e.lhs);
    default:
      return std::max(max_variable(*e.lhs), max_variable(*e.rhs));
  }
}

ExprPtr substitute(const ExprPtr& e, const std::vector<ExprPtr>& replacements) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return e;
    case Expr::Kind::variable:
      return replacements.at(static_cast<std::size_t>(e->var_index));
    case Expr::Kind::add:
      return Expr::add(substitute(e->lhs, replacements), substitute(e->rhs, replacements));
    case Expr::Kind::sub:
      return Expr::sub(substitute(e->lhs, replacements), substitute(e->rhs, replacements));
    case Expr::Kind::mul:
      return Expr::mul(substitute(e->lhs, replacements), substitute(e->rhs, replacements));
    case Expr::Kind::div:
      return Expr::div(substitute(e->lhs, replacements), substitute(e->rhs, replacements));
    case Expr::Kind::pow:
      return Expr::pow(substitute(e->lhs, replacements), e->exponent);
    case Expr::Kind::call:
      return Expr::call(e->func, substitute(e->lhs, replacements));
  }
  throw std::logic_error("corrupt expression node");
}

namespace {

void print(const Expr& e, std::ostringstream& out) {
  switch (e.kind) {
    case Expr::Kind::constant: {
      if (e.constant < 0.0) {
        out << "(0-" << -e.constant << ")";
      } else {
        out << e.constant;
      }
      return;
    }
    case Expr::Kind::variable:
      out << "x" << (e.var_index + 1);
      return;
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div: {
      char op = e.kind == Expr::Kind::add   ? '+'
                : e.kind == Expr::Kind::sub ? '-'
                : e.kind == Expr::Kind::mul ? '*'
                                            : '/';
      out << '(';
      print(*e.lhs, out);
      out << op;
      print(*e.rhs, out);
      out << ')';
      return;
    }
    case Expr::Kind::pow:
      out << '(';
      print(*e.lhs, out);
      out << ")^" << e.exponent;
      return;
    case Expr::Kind::call: {
      const char* name = e.func == FuncKind::sqrt  ? "sqrt"
                         : e.func == FuncKind::exp ? "exp"
                         : e.func == FuncKind::log ? "log"
                                                   : "abs";
      out << name << '(';
      print(*e.lhs, out);
      out << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream out;
  out.precision(17);
  print(e, out);
  return out.str();
}

}  // namespace gflat
