#include "fracsym/expr.hpp"

#include "fracsym/fractional.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace fracsym {

namespace {

const std::map<std::string, int>& known_functions() {
    static const std::map<std::string, int> fns = {
        {"exp", 1}, {"log", 1}, {"sqrt", 1}, {"gamma", 1}, {"pow", 2}};
    return fns;
}

bool is_number(const Expr& e) { return e->kind == ExprKind::Number; }

bool is_exact_integer(const Expr& e) {
    return e->kind == ExprKind::Number && e->exact && is_integer(e->rat);
}

double number_value(const Expr& e) { return e->exact ? to_double(e->rat) : e->dec; }

bool is_exact_value(const Expr& e, long long v) {
    return e->kind == ExprKind::Number && e->exact && e->rat == v;
}

}  // namespace

Expr make_number(Rational r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Number;
    n->exact = true;
    n->rat = std::move(r);
    return n;
}

Expr make_decimal(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Number;
    n->exact = false;
    n->dec = v;
    return n;
}

Expr make_var(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Variable;
    n->name = std::move(name);
    return n;
}

Expr make_unary(ExprKind k, Expr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->args = {std::move(a)};
    return n;
}

Expr make_binary(ExprKind k, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->args = {std::move(a), std::move(b)};
    return n;
}

Expr make_call(std::string fn, std::vector<Expr> args) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Call;
    n->name = std::move(fn);
    n->args = std::move(args);
    return n;
}

Expr num(Rational r) { return make_number(std::move(r)); }
Expr num(long long v) { return make_number(Rational(v)); }
Expr dnum(double v) { return make_decimal(v); }
Expr var(std::string name) { return make_var(std::move(name)); }

Expr neg(Expr a) {
    if (is_number(a)) {
        return a->exact ? make_number(-a->rat) : make_decimal(-a->dec);
    }
    if (a->kind == ExprKind::Negate) return a->args[0];
    return make_unary(ExprKind::Negate, std::move(a));
}

Expr add(Expr a, Expr b) {
    if (is_exact_value(a, 0)) return b;
    if (is_exact_value(b, 0)) return a;
    if (is_number(a) && is_number(b)) {
        if (a->exact && b->exact) return make_number(a->rat + b->rat);
        return make_decimal(number_value(a) + number_value(b));
    }
    return make_binary(ExprKind::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
    if (is_exact_value(b, 0)) return a;
    if (is_exact_value(a, 0)) return neg(std::move(b));
    if (is_number(a) && is_number(b)) {
        if (a->exact && b->exact) return make_number(a->rat - b->rat);
        return make_decimal(number_value(a) - number_value(b));
    }
    return make_binary(ExprKind::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
    if (is_exact_value(a, 0) || is_exact_value(b, 0)) return num(0);
    if (is_exact_value(a, 1)) return b;
    if (is_exact_value(b, 1)) return a;
    if (is_number(a) && is_number(b)) {
        if (a->exact && b->exact) return make_number(a->rat * b->rat);
        return make_decimal(number_value(a) * number_value(b));
    }
    return make_binary(ExprKind::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
    if (is_exact_value(b, 1)) return a;
    if (is_number(a) && is_number(b)) {
        if (a->exact && b->exact && b->rat != 0) return make_number(a->rat / b->rat);
        if (!(a->exact && b->exact) && number_value(b) != 0.0)
            return make_decimal(number_value(a) / number_value(b));
    }
    return make_binary(ExprKind::Div, std::move(a), std::move(b));
}

Expr pow(Expr a, Expr b) {
    if (is_exact_value(b, 1)) return a;
    if (is_exact_value(b, 0)) return num(1);
    if (is_number(a) && is_number(b) && a->exact && is_exact_integer(b)) {
        const BigInt& e = numerator(b->rat);
        if (e >= 0 && e <= 64) {
            Rational r = 1;
            for (BigInt i = 0; i < e; ++i) r *= a->rat;
            return make_number(r);
        }
    }
    return make_binary(ExprKind::Pow, std::move(a), std::move(b));
}

Expr call(std::string fn, std::vector<Expr> args) {
    return make_call(std::move(fn), std::move(args));
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        skip_ws();
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_char(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    bool accept(char c) {
        if (peek_char(c)) {
            ++pos_;
            skip_ws();
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (accept('+')) {
                e = make_binary(ExprKind::Add, e, parse_term());
            } else if (accept('-')) {
                e = make_binary(ExprKind::Sub, e, parse_term());
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (accept('*')) {
                e = make_binary(ExprKind::Mul, e, parse_factor());
            } else if (accept('/')) {
                Expr rhs = parse_factor();
                // "p/q" with integer literals is an exact rational constant
                if (is_exact_integer(e) && is_exact_integer(rhs) && rhs->rat != 0) {
                    e = make_number(e->rat / rhs->rat);
                } else {
                    e = make_binary(ExprKind::Div, e, rhs);
                }
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        if (accept('-')) {
            // fold "-5" into a negative literal; "-(5)" stays a Negate node
            if (pos_ < s_.size() &&
                (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                Expr n = parse_number();
                Expr lit = n->exact ? make_number(-n->rat) : make_decimal(-n->dec);
                if (accept('^')) {
                    // "^" binds tighter than the leading minus: -5^2 = -(5^2)
                    return make_unary(ExprKind::Negate,
                                      make_binary(ExprKind::Pow, n, parse_factor()));
                }
                return lit;
            }
            return make_unary(ExprKind::Negate, parse_power());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (accept('^')) {
            return make_binary(ExprKind::Pow, base, parse_factor());  // right-assoc
        }
        return base;
    }

    Expr parse_atom() {
        if (pos_ >= s_.size()) fail("expected expression");
        char c = s_[pos_];
        if (c == '(') {
            accept('(');
            Expr e = parse_expr();
            expect(')', "to close parenthesis");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id = parse_ident();
            skip_ws();
            if (peek_char('(')) {
                auto it = known_functions().find(id);
                if (it == known_functions().end()) fail("unknown function '" + id + "'");
                accept('(');
                std::vector<Expr> args;
                args.push_back(parse_expr());
                while (accept(',')) args.push_back(parse_expr());
                expect(')', "to close argument list");
                if (static_cast<int>(args.size()) != it->second)
                    fail("function '" + id + "' expects " + std::to_string(it->second) +
                         " argument(s)");
                return make_call(id, std::move(args));
            }
            return make_var(id);
        }
        fail("expected expression");
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Expr parse_number() {
        std::size_t start = pos_;
        bool has_dot = false, has_exp = false;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.' && !has_dot && !has_exp) {
                has_dot = true;
                ++pos_;
            } else if ((c == 'e' || c == 'E') && !has_exp && pos_ > start &&
                       std::isdigit(static_cast<unsigned char>(s_[pos_ - 1]))) {
                // only a digit-led exponent: "1e-3", not "e" the identifier
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    has_exp = true;
                } else {
                    pos_ = save;
                    break;
                }
            } else {
                break;
            }
        }
        std::string text(s_.substr(start, pos_ - start));
        if (text.empty() || text == ".") {
            pos_ = start;
            fail("malformed number");
        }
        skip_ws();
        if (!has_dot && !has_exp) {
            // strip leading zeros: cpp_int would read them as an octal prefix
            std::size_t nz = text.find_first_not_of('0');
            if (nz == std::string::npos) return make_number(Rational(0));
            return make_number(Rational(BigInt(text.substr(nz))));
        }
        double v = 0.0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || p != text.data() + text.size()) {
            pos_ = start;
            fail("malformed number");
        }
        return make_decimal(v);
    }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string double_str(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Effective precedence of a node as re-parsed text. Negative literals
// read like unary minus; non-integer rationals read like division.
int print_prec(const ExprNode& e) {
    switch (e.kind) {
        case ExprKind::Number:
            if (e.exact) {
                if (!is_integer(e.rat)) return 2;
                return e.rat < 0 ? 3 : 5;
            }
            return e.dec < 0 ? 3 : 5;
        case ExprKind::Variable:
        case ExprKind::Call:
            return 5;
        case ExprKind::Pow:
            return 4;
        case ExprKind::Negate:
            return 3;
        case ExprKind::Mul:
        case ExprKind::Div:
            return 2;
        case ExprKind::Add:
        case ExprKind::Sub:
            return 1;
    }
    return 0;
}

void print_to(const Expr& e, int min_prec, std::string& out) {
    bool parens = print_prec(*e) < min_prec;
    if (parens) out += "(";
    switch (e->kind) {
        case ExprKind::Number:
            out += e->exact ? rational_str(e->rat) : double_str(e->dec);
            break;
        case ExprKind::Variable:
            out += e->name;
            break;
        case ExprKind::Negate:
            out += "-";
            // a bare numeral after "-" would re-parse as a folded literal
            if (e->args[0]->kind == ExprKind::Number) {
                out += "(";
                print_to(e->args[0], 0, out);
                out += ")";
            } else {
                print_to(e->args[0], 4, out);
            }
            break;
        case ExprKind::Add:
            print_to(e->args[0], 1, out);
            out += " + ";
            print_to(e->args[1], 2, out);
            break;
        case ExprKind::Sub:
            print_to(e->args[0], 1, out);
            out += " - ";
            print_to(e->args[1], 2, out);
            break;
        case ExprKind::Mul:
            print_to(e->args[0], 2, out);
            out += "*";
            print_to(e->args[1], 3, out);
            break;
        case ExprKind::Div:
            print_to(e->args[0], 2, out);
            out += "/";
            print_to(e->args[1], 3, out);
            break;
        case ExprKind::Pow:
            print_to(e->args[0], 5, out);
            out += "^";
            print_to(e->args[1], 3, out);
            break;
        case ExprKind::Call: {
            out += e->name;
            out += "(";
            for (std::size_t i = 0; i < e->args.size(); ++i) {
                if (i) out += ", ";
                print_to(e->args[i], 0, out);
            }
            out += ")";
            break;
        }
    }
    if (parens) out += ")";
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print_to(e, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double eval_rec(const ExprNode& e, const Bindings& b) {
    switch (e.kind) {
        case ExprKind::Number:
            return e.exact ? to_double(e.rat) : e.dec;
        case ExprKind::Variable: {
            auto it = b.find(e.name);
            if (it == b.end()) throw EvalError("unbound variable '" + e.name + "'");
            return it->second;
        }
        case ExprKind::Negate:
            return -eval_rec(*e.args[0], b);
        case ExprKind::Add:
            return eval_rec(*e.args[0], b) + eval_rec(*e.args[1], b);
        case ExprKind::Sub:
            return eval_rec(*e.args[0], b) - eval_rec(*e.args[1], b);
        case ExprKind::Mul:
            return eval_rec(*e.args[0], b) * eval_rec(*e.args[1], b);
        case ExprKind::Div: {
            double d = eval_rec(*e.args[1], b);
            if (d == 0.0) throw EvalError("division by zero");
            return eval_rec(*e.args[0], b) / d;
        }
        case ExprKind::Pow: {
            double base = eval_rec(*e.args[0], b);
            double ex = eval_rec(*e.args[1], b);
            if (base == 0.0 && ex < 0.0) throw EvalError("zero raised to negative power");
            if (base < 0.0 && ex != std::floor(ex))
                throw EvalError("negative base with non-integer exponent");
            return std::pow(base, ex);
        }
        case ExprKind::Call: {
            if (e.name == "pow") {
                double base = eval_rec(*e.args[0], b);
                double ex = eval_rec(*e.args[1], b);
                if (base == 0.0 && ex < 0.0) throw EvalError("zero raised to negative power");
                if (base < 0.0 && ex != std::floor(ex))
                    throw EvalError("negative base with non-integer exponent");
                return std::pow(base, ex);
            }
            double a = eval_rec(*e.args[0], b);
            if (e.name == "exp") return std::exp(a);
            if (e.name == "log") {
                if (a <= 0.0) throw EvalError("log of non-positive argument");
                return std::log(a);
            }
            if (e.name == "sqrt") {
                if (a < 0.0) throw EvalError("sqrt of negative argument");
                return std::sqrt(a);
            }
            if (e.name == "gamma") return gamma_fn(a);  // throws DomainError at poles
            throw EvalError("unknown function '" + e.name + "'");
        }
    }
    throw EvalError("corrupt expression node");
}

}  // namespace

double eval(const Expr& e, const Bindings& b) {
    double v = eval_rec(*e, b);
    if (!std::isfinite(v)) throw EvalError("non-finite result");
    return v;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr diff(const Expr& e, const std::string& v) {
    switch (e->kind) {
        case ExprKind::Number:
            return num(0);
        case ExprKind::Variable:
            return num(e->name == v ? 1 : 0);
        case ExprKind::Negate:
            return neg(diff(e->args[0], v));
        case ExprKind::Add:
            return add(diff(e->args[0], v), diff(e->args[1], v));
        case ExprKind::Sub:
            return sub(diff(e->args[0], v), diff(e->args[1], v));
        case ExprKind::Mul:
            return add(mul(diff(e->args[0], v), e->args[1]),
                       mul(e->args[0], diff(e->args[1], v)));
        case ExprKind::Div:
            return div(sub(mul(diff(e->args[0], v), e->args[1]),
                           mul(e->args[0], diff(e->args[1], v))),
                       pow(e->args[1], num(2)));
        case ExprKind::Pow:
        case ExprKind::Call: {
            if (e->kind == ExprKind::Call && e->name != "pow") {
                const Expr& a = e->args[0];
                Expr da = diff(a, v);
                if (e->name == "exp") return mul(call("exp", {a}), da);
                if (e->name == "log") return div(da, a);
                if (e->name == "sqrt") return div(da, mul(num(2), call("sqrt", {a})));
                if (e->name == "gamma") {
                    if (free_variables(a).count(v))
                        throw DiffError("derivative of gamma is not supported");
                    return num(0);
                }
                throw DiffError("unknown function '" + e->name + "'");
            }
            const Expr& base = e->args[0];
            const Expr& expo = e->args[1];
            bool expo_const = free_variables(expo).count(v) == 0;
            bool base_const = free_variables(base).count(v) == 0;
            if (base_const && expo_const) return num(0);
            if (expo_const) {
                // d f^c = c * f^(c-1) * f'
                Expr cm1 = sub(expo, num(1));
                return mul(mul(expo, pow(base, cm1)), diff(base, v));
            }
            if (base_const) {
                // d c^g = c^g * log(c) * g'
                return mul(mul(pow(base, expo), call("log", {base})), diff(expo, v));
            }
            // d f^g = f^g * (g' log f + g f'/f)
            return mul(pow(base, expo),
                       add(mul(diff(expo, v), call("log", {base})),
                           mul(expo, div(diff(base, v), base))));
        }
    }
    throw DiffError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Substitution, traversal
// ---------------------------------------------------------------------------

Expr substitute(const Expr& e, const std::map<std::string, Expr>& repl) {
    switch (e->kind) {
        case ExprKind::Number:
            return e;
        case ExprKind::Variable: {
            auto it = repl.find(e->name);
            return it == repl.end() ? e : it->second;
        }
        case ExprKind::Negate:
            return neg(substitute(e->args[0], repl));
        case ExprKind::Add:
            return add(substitute(e->args[0], repl), substitute(e->args[1], repl));
        case ExprKind::Sub:
            return sub(substitute(e->args[0], repl), substitute(e->args[1], repl));
        case ExprKind::Mul:
            return mul(substitute(e->args[0], repl), substitute(e->args[1], repl));
        case ExprKind::Div:
            return div(substitute(e->args[0], repl), substitute(e->args[1], repl));
        case ExprKind::Pow:
            return pow(substitute(e->args[0], repl), substitute(e->args[1], repl));
        case ExprKind::Call: {
            std::vector<Expr> args;
            args.reserve(e->args.size());
            for (const auto& a : e->args) args.push_back(substitute(a, repl));
            return call(e->name, std::move(args));
        }
    }
    throw Error("corrupt expression node");
}

namespace {

void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (e->kind == ExprKind::Variable) {
        out.insert(e->name);
        return;
    }
    for (const auto& a : e->args) collect_vars(a, out);
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Number:
            if (a->exact != b->exact) return false;
            return a->exact ? a->rat == b->rat : a->dec == b->dec;
        case ExprKind::Variable:
            return a->name == b->name;
        case ExprKind::Call:
            if (a->name != b->name) return false;
            break;
        default:
            break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    return true;
}

std::size_t leaf_count(const Expr& e) {
    if (e->kind == ExprKind::Number || e->kind == ExprKind::Variable) return 1;
    std::size_t n = 0;
    for (const auto& a : e->args) n += leaf_count(a);
    return n;
}

}  // namespace fracsym
