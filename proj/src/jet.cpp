#include "fracsym/jet.hpp"

#include <cmath>
#include <optional>

namespace fracsym {

const char* jet_var_name(JetVar v) {
    static const char* names[kJetVarCount] = {"x",    "T",    "u",    "u_x",  "u_T", "u_xx",
                                              "u_xT", "u_TT", "u_xxx", "u_xxT", "u_xxxx"};
    return names[static_cast<int>(v)];
}

JetPoly JetPoly::constant(Rational c) {
    JetPoly p;
    if (c != 0) p.terms_.emplace(MonoKey{}, std::move(c));
    return p;
}

JetPoly JetPoly::variable(JetVar v) {
    JetPoly p;
    MonoKey k;
    k.exps[static_cast<int>(v)] = 1;
    p.terms_.emplace(k, Rational(1));
    return p;
}

JetPoly JetPoly::exp_u(int m) {
    JetPoly p;
    MonoKey k;
    k.eu_power = m;
    p.terms_.emplace(k, Rational(1));
    return p;
}

void JetPoly::add_term(const MonoKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

JetPoly JetPoly::operator+(const JetPoly& o) const {
    JetPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

JetPoly JetPoly::operator-(const JetPoly& o) const {
    JetPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

JetPoly JetPoly::operator-() const { return scaled(Rational(-1)); }

JetPoly JetPoly::operator*(const JetPoly& o) const {
    JetPoly r;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            MonoKey k;
            k.eu_power = ka.eu_power + kb.eu_power;  // e^{au} e^{bu} = e^{(a+b)u}
            for (int i = 0; i < kJetVarCount; ++i)
                k.exps[i] = static_cast<std::uint8_t>(ka.exps[i] + kb.exps[i]);
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

JetPoly JetPoly::scaled(const Rational& r) const {
    JetPoly out;
    if (r == 0) return out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * r);
    return out;
}

JetPoly JetPoly::pow(unsigned k) const {
    JetPoly r = constant(Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

JetPoly JetPoly::partial(JetVar v) const {
    const int vi = static_cast<int>(v);
    JetPoly out;
    for (const auto& [k, c] : terms_) {
        if (k.exps[vi] > 0) {
            MonoKey nk = k;
            nk.exps[vi] -= 1;
            out.add_term(nk, c * k.exps[vi]);
        }
        if (v == JetVar::u && k.eu_power != 0) {
            out.add_term(k, c * k.eu_power);
        }
    }
    return out;
}

bool JetPoly::depends_on(JetVar v) const {
    const int vi = static_cast<int>(v);
    for (const auto& [k, c] : terms_)
        if (k.exps[vi] > 0) return true;
    return false;
}

bool JetPoly::has_exp_u() const {
    for (const auto& [k, c] : terms_)
        if (k.eu_power != 0) return true;
    return false;
}

Rational JetPoly::coefficient(const MonoKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

double JetPoly::eval(const std::array<double, kJetVarCount>& vals) const {
    double total = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = to_double(c);
        for (int i = 0; i < kJetVarCount; ++i)
            for (int e = 0; e < k.exps[i]; ++e) t *= vals[i];
        if (k.eu_power != 0) t *= std::exp(k.eu_power * vals[static_cast<int>(JetVar::u)]);
        total += t;
    }
    return total;
}

std::string JetPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string mono;
        for (int i = 0; i < kJetVarCount; ++i) {
            if (k.exps[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += jet_var_name(static_cast<JetVar>(i));
            if (k.exps[i] > 1) mono += "^" + std::to_string(k.exps[i]);
        }
        if (k.eu_power != 0) {
            if (!mono.empty()) mono += "*";
            if (k.eu_power == 1) {
                mono += "exp(u)";
            } else if (k.eu_power == -1) {
                mono += "exp(-u)";
            } else {
                mono += "exp(" + std::to_string(k.eu_power) + "*u)";
            }
        }
        if (mono.empty()) {
            out += rational_str(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += rational_str(mag) + "*" + mono;
        }
    }
    return out;
}

JetPoly jp_add(const JetPoly& p, const JetPoly& q) { return p + q; }
JetPoly jp_mul(const JetPoly& p, const JetPoly& q) { return p * q; }
JetPoly jp_scale(const Rational& r, const JetPoly& p) { return p.scaled(r); }
bool jp_is_zero(const JetPoly& p) { return p.is_zero(); }

JetPoly substitute(const JetPoly& p, JetVar v, const JetPoly& repl) {
    const int vi = static_cast<int>(v);
    JetPoly out;
    std::map<unsigned, JetPoly> powers;  // repl^k memo
    powers[0] = JetPoly::constant(Rational(1));
    for (const auto& [k, c] : p.terms()) {
        unsigned e = k.exps[vi];
        if (e == 0) {
            out.add_term(k, c);
            continue;
        }
        auto it = powers.find(e);
        if (it == powers.end()) {
            it = powers.emplace(e, repl.pow(e)).first;
        }
        MonoKey rest = k;
        rest.exps[vi] = 0;
        JetPoly base;
        base.add_term(rest, c);
        out = out + base * it->second;
    }
    return out;
}

namespace {

// Image of each jet variable under the total derivatives; nullopt means
// "constant direction" (x and T themselves), and missing entries overflow
// the supported variable list.
struct DerivativeTable {
    // pairs (source, image); sources not listed overflow when present
    std::array<std::optional<JetVar>, kJetVarCount> image{};
    std::array<bool, kJetVarCount> allowed{};
    JetVar chain_var;  // u_x for D_x, u_T for D_T
    JetVar base_var;   // x for D_x, T for D_T
};

const DerivativeTable& dx_table() {
    static const DerivativeTable t = [] {
        DerivativeTable t;
        t.base_var = JetVar::x;
        t.chain_var = JetVar::u_x;
        for (int i = 0; i < kJetVarCount; ++i) t.allowed[i] = false;
        auto set = [&](JetVar from, JetVar to) {
            t.image[static_cast<int>(from)] = to;
            t.allowed[static_cast<int>(from)] = true;
        };
        t.allowed[static_cast<int>(JetVar::x)] = true;
        t.allowed[static_cast<int>(JetVar::T)] = true;
        set(JetVar::u, JetVar::u_x);
        set(JetVar::u_x, JetVar::u_xx);
        set(JetVar::u_T, JetVar::u_xT);
        set(JetVar::u_xx, JetVar::u_xxx);
        set(JetVar::u_xT, JetVar::u_xxT);
        set(JetVar::u_xxx, JetVar::u_xxxx);
        return t;
    }();
    return t;
}

const DerivativeTable& dT_table() {
    static const DerivativeTable t = [] {
        DerivativeTable t;
        t.base_var = JetVar::T;
        t.chain_var = JetVar::u_T;
        for (int i = 0; i < kJetVarCount; ++i) t.allowed[i] = false;
        auto set = [&](JetVar from, JetVar to) {
            t.image[static_cast<int>(from)] = to;
            t.allowed[static_cast<int>(from)] = true;
        };
        t.allowed[static_cast<int>(JetVar::x)] = true;
        t.allowed[static_cast<int>(JetVar::T)] = true;
        set(JetVar::u, JetVar::u_T);
        set(JetVar::u_x, JetVar::u_xT);
        set(JetVar::u_T, JetVar::u_TT);
        set(JetVar::u_xx, JetVar::u_xxT);
        return t;
    }();
    return t;
}

JetPoly total_derivative(const JetPoly& p, const DerivativeTable& tab) {
    for (int i = 0; i < kJetVarCount; ++i) {
        if (!tab.allowed[i] && p.depends_on(static_cast<JetVar>(i)))
            throw OrderOverflowError(std::string("total derivative of ") +
                                     jet_var_name(static_cast<JetVar>(i)) +
                                     " leaves the supported jet order");
    }
    JetPoly out = p.partial(tab.base_var);
    for (int i = 0; i < kJetVarCount; ++i) {
        JetVar v = static_cast<JetVar>(i);
        if (v == tab.base_var) continue;
        if (v == JetVar::u) continue;  // handled with the chain term below
        if (tab.image[i].has_value()) {
            out = out + JetPoly::variable(*tab.image[i]) * p.partial(v);
        }
    }
    // chain through u: covers both explicit u powers and the e^{mu} factor
    out = out + JetPoly::variable(tab.chain_var) * p.partial(JetVar::u);
    return out;
}

}  // namespace

JetPoly total_dx(const JetPoly& p) { return total_derivative(p, dx_table()); }
JetPoly total_dT(const JetPoly& p) { return total_derivative(p, dT_table()); }

JetPoly on_shell_reduce(const JetPoly& p) {
    static const auto rules = [] {
        auto v = [](JetVar j) { return JetPoly::variable(j); };
        auto c = [](long val) { return JetPoly::constant(Rational(val)); };
        JetPoly u_T_rhs = v(JetVar::u_xx) + v(JetVar::u_x) * v(JetVar::u_x);
        JetPoly u_xT_rhs = v(JetVar::u_xxx) + c(2) * v(JetVar::u_x) * v(JetVar::u_xx);
        JetPoly u_TT_rhs = v(JetVar::u_xxxx) + c(4) * v(JetVar::u_x) * v(JetVar::u_xxx) +
                           c(2) * v(JetVar::u_xx) * v(JetVar::u_xx) +
                           c(4) * v(JetVar::u_x) * v(JetVar::u_x) * v(JetVar::u_xx);
        JetPoly u_xxT_rhs = v(JetVar::u_xxxx) + c(2) * v(JetVar::u_xx) * v(JetVar::u_xx) +
                            c(2) * v(JetVar::u_x) * v(JetVar::u_xxx);
        return std::vector<std::pair<JetVar, JetPoly>>{
            {JetVar::u_TT, u_TT_rhs},
            {JetVar::u_xxT, u_xxT_rhs},
            {JetVar::u_xT, u_xT_rhs},
            {JetVar::u_T, u_T_rhs},
        };
    }();
    JetPoly out = p;
    for (const auto& [v, rhs] : rules) out = substitute(out, v, rhs);
    return out;
}

// ---------------------------------------------------------------------------
// Expr bridge
// ---------------------------------------------------------------------------

namespace {

std::optional<JetVar> jet_var_by_name(const std::string& name) {
    for (int i = 0; i < kJetVarCount; ++i)
        if (name == jet_var_name(static_cast<JetVar>(i))) return static_cast<JetVar>(i);
    return std::nullopt;
}

bool poly_as_constant(const JetPoly& p, Rational& out) {
    if (p.is_zero()) {
        out = 0;
        return true;
    }
    if (p.term_count() != 1) return false;
    const auto& [k, c] = *p.terms().begin();
    if (k.eu_power != 0) return false;
    for (int i = 0; i < kJetVarCount; ++i)
        if (k.exps[i] != 0) return false;
    out = c;
    return true;
}

// matches c * u for integer c (the exponent of an exp() factor)
bool poly_as_int_multiple_of_u(const JetPoly& p, int& m_out) {
    if (p.is_zero()) {
        m_out = 0;
        return true;
    }
    if (p.term_count() != 1) return false;
    const auto& [k, c] = *p.terms().begin();
    if (k.eu_power != 0) return false;
    MonoKey expected;
    expected.exps[static_cast<int>(JetVar::u)] = 1;
    if (k.exps != expected.exps) return false;
    if (!is_integer(c)) return false;
    BigInt n = numerator(c);
    if (n > 1000 || n < -1000) return false;
    m_out = n.convert_to<int>();
    return true;
}

JetPoly convert(const Expr& e) {
    switch (e->kind) {
        case ExprKind::Number:
            return JetPoly::constant(e->exact ? e->rat : rational_from_double(e->dec));
        case ExprKind::Variable: {
            auto v = jet_var_by_name(e->name);
            if (!v) throw ConversionError("unknown jet variable '" + e->name + "'");
            return JetPoly::variable(*v);
        }
        case ExprKind::Negate:
            return -convert(e->args[0]);
        case ExprKind::Add:
            return convert(e->args[0]) + convert(e->args[1]);
        case ExprKind::Sub:
            return convert(e->args[0]) - convert(e->args[1]);
        case ExprKind::Mul:
            return convert(e->args[0]) * convert(e->args[1]);
        case ExprKind::Div: {
            JetPoly denom = convert(e->args[1]);
            Rational c;
            if (!poly_as_constant(denom, c) || c == 0)
                throw ConversionError("division by non-constant");
            return convert(e->args[0]).scaled(Rational(1) / c);
        }
        case ExprKind::Pow: {
            const Expr& ex = e->args[1];
            if (ex->kind != ExprKind::Number)
                throw ConversionError("non-constant exponent");
            Rational r = ex->exact ? ex->rat : rational_from_double(ex->dec);
            if (!is_integer(r) || r < 0 || r > 100)
                throw ConversionError("exponent must be a small non-negative integer");
            return convert(e->args[0]).pow(numerator(r).convert_to<unsigned>());
        }
        case ExprKind::Call: {
            if (e->name == "exp") {
                int m = 0;
                if (!poly_as_int_multiple_of_u(convert(e->args[0]), m))
                    throw ConversionError("exp() argument must be an integer multiple of u");
                return JetPoly::exp_u(m);
            }
            if (e->name == "pow") {
                return convert(make_binary(ExprKind::Pow, e->args[0], e->args[1]));
            }
            throw ConversionError("function '" + e->name + "' has no polynomial form");
        }
    }
    throw ConversionError("corrupt expression node");
}

}  // namespace

JetPoly to_jet_poly(const Expr& e) { return convert(e); }

JetPoly jet_parse(std::string_view text) { return to_jet_poly(parse(text)); }

}  // namespace fracsym
