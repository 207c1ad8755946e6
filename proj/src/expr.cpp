#include "quonlab/expr.hpp"

#include <cctype>

#include "quonlab/algebra.hpp"  // mode_str

namespace quonlab {

namespace {

enum class Tok {
  End,
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  EqEq,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1, col = 1;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t) {
    out.push_back({k, std::move(t), line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      bool saw_dot = false;
      while (j < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[j])) ||
              (src[j] == '.' && !saw_dot))) {
        saw_dot |= src[j] == '.';
        ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[k])))
            ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, src.substr(i, j - i), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j]))))
        ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      push(Tok::EqEq, "==");
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
    push(k, std::string(1, c));
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(tokenize(src)) {}

  IdentityExpression parse_identity(const std::string& src) {
    IdentityExpression id;
    id.lhs = parse_poly();
    expect(Tok::EqEq, "'=='");
    id.rhs = parse_poly();
    expect(Tok::End, "end of input");
    id.source = src;
    return id;
  }

  ExprPtr parse_poly_only() {
    auto p = parse_poly();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (found '" +
                         (peek().kind == Tok::End ? "<end>" : peek().text) +
                         "')",
                     peek().line, peek().col);
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    return advance();
  }

  static ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

  static ExprPtr binary(ExprKind k, ExprPtr l, ExprPtr r) {
    Expr e{};
    e.kind = k;
    e.lhs = std::move(l);
    e.rhs = std::move(r);
    return make(std::move(e));
  }

  ExprPtr parse_poly() {
    bool negate = false;
    if (peek().kind == Tok::Minus) {
      advance();
      negate = true;
    }
    ExprPtr acc = parse_term();
    if (negate) {
      // canonical (and print-stable) form of the lenient leading minus
      Expr zero{};
      zero.kind = ExprKind::ScalarLit;
      zero.rational = 0;
      zero.literal = "0";
      acc = binary(ExprKind::Sub, make(std::move(zero)), acc);
    }
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool plus = advance().kind == Tok::Plus;
      acc = binary(plus ? ExprKind::Add : ExprKind::Sub, acc, parse_term());
    }
    return acc;
  }

  ExprPtr parse_term() {
    ExprPtr acc = parse_factor();
    while (peek().kind == Tok::Star) {
      advance();
      acc = binary(ExprKind::Mul, acc, parse_factor());
    }
    return acc;
  }

  /// integer with optional sign; rejects decimals — used for modes
  long parse_signed_integer(const char* what) {
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      advance();
      neg = true;
    }
    const Token& t = expect(Tok::Number, what);
    if (literal_is_decimal(t.text))
      throw ParseError(std::string("expected ") + what +
                           ", got decimal literal '" + t.text + "'",
                       t.line, t.col);
    mpq_class v = parse_rational(t.text);
    long n = static_cast<long>(v.get_num().get_si());
    return neg ? -n : n;
  }

  /// mode label: the projection m, written as an integer or p/2
  int parse_mode() {
    long num = parse_signed_integer("a mode label");
    if (peek().kind == Tok::Slash) {
      const Token& slash = advance();
      long den = parse_signed_integer("a mode denominator");
      if (den != 2)
        throw ParseError("mode denominators must be 2", slash.line, slash.col);
      return static_cast<int>(num);
    }
    return static_cast<int>(2 * num);
  }

  ExprPtr parse_scalar(const Token& first) {
    Expr e{};
    e.kind = ExprKind::ScalarLit;
    if (literal_is_decimal(first.text)) {
      e.decimal = true;
      e.literal = first.text;
      e.rational = parse_rational(first.text);
    } else if (peek().kind == Tok::Slash) {
      advance();
      const Token& den = expect(Tok::Number, "a denominator");
      if (literal_is_decimal(den.text))
        throw ParseError("fraction parts must be integers", den.line, den.col);
      e.literal = first.text + "/" + den.text;
      e.rational = parse_rational(e.literal);
    } else {
      e.literal = first.text;
      e.rational = parse_rational(first.text);
    }
    return make(std::move(e));
  }

  ExprPtr parse_factor() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      advance();
      return parse_scalar(t);
    }
    if (t.kind == Tok::LParen) {
      advance();
      auto inner = parse_poly();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident) fail("expected a factor");
    advance();
    const std::string& name = t.text;
    Expr e{};
    if (name == "q") {
      e.kind = ExprKind::QParam;
      return make(std::move(e));
    }
    if (name == "J0" || name == "Jp" || name == "Jm") {
      e.kind = name == "J0" ? ExprKind::J0
                            : (name == "Jp" ? ExprKind::Jp : ExprKind::Jm);
      return make(std::move(e));
    }
    if (name == "bd" || name == "b") {
      e.kind = name == "bd" ? ExprKind::Bd : ExprKind::B;
      expect(Tok::LParen, "'('");
      e.twice_a = parse_mode();
      expect(Tok::RParen, "')'");
      return make(std::move(e));
    }
    if (name == "N") {
      e.kind = ExprKind::NOp;
      expect(Tok::LParen, "'('");
      e.twice_a = parse_mode();
      expect(Tok::Comma, "','");
      e.twice_b = parse_mode();
      expect(Tok::RParen, "')'");
      return make(std::move(e));
    }
    if (name == "comm" || name == "qmut") {
      expect(Tok::LBracket, "'['");
      auto lhs = parse_poly();
      expect(Tok::Comma, "','");
      auto rhs = parse_poly();
      expect(Tok::RBracket, "']'");
      return binary(name == "comm" ? ExprKind::Comm : ExprKind::QMut,
                    std::move(lhs), std::move(rhs));
    }
    throw ParseError("unknown symbol '" + name + "'", t.line, t.col);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

bool is_sum(const ExprPtr& e) {
  return e->kind == ExprKind::Add || e->kind == ExprKind::Sub;
}

std::string print(const ExprPtr& e) {
  auto wrap = [](const ExprPtr& child) {
    std::string s = print(child);
    if (is_sum(child)) return "(" + s + ")";
    return s;
  };
  switch (e->kind) {
    case ExprKind::ScalarLit: return e->literal;
    case ExprKind::QParam: return std::string("q");
    case ExprKind::Bd: return "bd(" + mode_str(e->twice_a) + ")";
    case ExprKind::B: return "b(" + mode_str(e->twice_a) + ")";
    case ExprKind::NOp:
      return "N(" + mode_str(e->twice_a) + ", " + mode_str(e->twice_b) + ")";
    case ExprKind::J0: return std::string("J0");
    case ExprKind::Jp: return std::string("Jp");
    case ExprKind::Jm: return std::string("Jm");
    case ExprKind::Add: return print(e->lhs) + " + " + wrap(e->rhs);
    case ExprKind::Sub: return print(e->lhs) + " - " + wrap(e->rhs);
    case ExprKind::Mul: return wrap(e->lhs) + "*" + wrap(e->rhs);
    case ExprKind::Comm:
      return "comm[" + print(e->lhs) + ", " + print(e->rhs) + "]";
    case ExprKind::QMut:
      return "qmut[" + print(e->lhs) + ", " + print(e->rhs) + "]";
  }
  throw StateError("unreachable expression kind");
}

}  // namespace

IdentityExpression parse_identity(const std::string& text) {
  Parser p(text);
  return p.parse_identity(text);
}

ExprPtr parse_poly_text(const std::string& text) {
  Parser p(text);
  return p.parse_poly_only();
}

std::string expr_str(const ExprPtr& e) { return print(e); }

std::string identity_str(const IdentityExpression& id) {
  return expr_str(id.lhs) + " == " + expr_str(id.rhs);
}

bool expr_has_decimal(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprKind::ScalarLit && e->decimal) return true;
  return expr_has_decimal(e->lhs) || expr_has_decimal(e->rhs);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::ScalarLit:
      return a->rational == b->rational && a->decimal == b->decimal;
    case ExprKind::Bd:
    case ExprKind::B:
      return a->twice_a == b->twice_a;
    case ExprKind::NOp:
      return a->twice_a == b->twice_a && a->twice_b == b->twice_b;
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

}  // namespace quonlab
