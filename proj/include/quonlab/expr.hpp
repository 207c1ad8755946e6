#pragma once

#include <memory>
#include <string>
#include <vector>

#include "quonlab/errors.hpp"
#include "quonlab/scalar.hpp"

namespace quonlab {

// Identity mini-language:
//   expr   := poly "==" poly
//   poly   := ["-"] term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := scalar | "q" | atom | "comm[" poly "," poly "]"
//           | "qmut[" poly "," poly "]" | "(" poly ")"
//   atom   := "bd(" mode ")" | "b(" mode ")" | "N(" mode "," mode ")"
//           | "J0" | "Jp" | "Jm"
//   mode   := integer or integer "/2"   (the projection m, e.g. -1/2, 0, 1)

enum class ExprKind {
  ScalarLit,  // rational value; `decimal` records the literal's notation
  QParam,     // the deformation parameter
  Bd,         // creation, mode twice_a
  B,          // annihilation, mode twice_a
  NOp,        // transition operator, modes (twice_a, twice_b)
  J0,
  Jp,
  Jm,
  Add,
  Sub,
  Mul,
  Comm,  // [x, y]
  QMut,  // x y - q y x
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  mpq_class rational;   // ScalarLit: exact value (decimals parsed exactly)
  std::string literal;  // ScalarLit: source text, kept for faithful printing
  bool decimal = false;
  int twice_a = 0, twice_b = 0;  // Bd/B/NOp mode labels
  ExprPtr lhs, rhs;
};

struct IdentityExpression {
  ExprPtr lhs, rhs;
  std::string source;
};

/// Parse one identity.  Throws ParseError with 1-based line/column.
IdentityExpression parse_identity(const std::string& text);

/// Parse a poly (no "==") — used by pieces that evaluate single operators.
ExprPtr parse_poly_text(const std::string& text);

/// Canonical rendering; parse(print(e)) reproduces the tree.
std::string expr_str(const ExprPtr& e);
std::string identity_str(const IdentityExpression& id);

/// True when any scalar literal in the tree uses decimal notation.
bool expr_has_decimal(const ExprPtr& e);

/// Structural equality of trees.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace quonlab
