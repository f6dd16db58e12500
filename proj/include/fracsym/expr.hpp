#pragma once

#include "fracsym/errors.hpp"
#include "fracsym/rational.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fracsym {

enum class ExprKind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Complete variable-to-value map used by eval().
using Bindings = std::map<std::string, double>;

/// Immutable expression tree node. Numbers are either exact rationals
/// (integer literals and integer/integer quotients) or decimal doubles.
class ExprNode {
public:
    ExprKind kind;
    bool exact = false;
    Rational rat;
    double dec = 0.0;
    std::string name;        // Variable and Call
    std::vector<Expr> args;  // Negate: 1, binary ops: 2, Call: arity
};

// Raw node builders. No simplification; the parser uses these.
Expr make_number(Rational r);
Expr make_decimal(double v);
Expr make_var(std::string name);
Expr make_unary(ExprKind k, Expr a);
Expr make_binary(ExprKind k, Expr a, Expr b);
Expr make_call(std::string fn, std::vector<Expr> args);

// Folding builders: constant folding and 0/1 identities only.
// diff() and the solution transforms build through these.
Expr num(Rational r);
Expr num(long long v);
Expr dnum(double v);
Expr var(std::string name);
Expr neg(Expr a);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr a, Expr b);
Expr call(std::string fn, std::vector<Expr> args);

/// Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? power
///   power  := atom ("^" factor)?
///   atom   := number | ident | ident "(" expr ("," expr)* ")" | "(" expr ")"
/// Functions: exp, log, sqrt, gamma, pow(base, exponent).
/// "p/q" with two integer literals folds to an exact rational constant.
Expr parse(std::string_view text);

/// Renders so that parse(to_string(e)) is structurally equal to e.
std::string to_string(const Expr& e);

double eval(const Expr& e, const Bindings& b);

/// Exact symbolic partial derivative. gamma() of a var-dependent
/// argument is rejected.
Expr diff(const Expr& e, const std::string& v);

/// Simultaneous substitution of variables.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl);

std::set<std::string> free_variables(const Expr& e);

/// Structural equality (same tree shape and node payloads).
bool equal(const Expr& a, const Expr& b);

std::size_t leaf_count(const Expr& e);

}  // namespace fracsym
