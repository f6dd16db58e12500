#pragma once

#include "fracsym/errors.hpp"
#include "fracsym/expr.hpp"
#include "fracsym/rational.hpp"

#include <array>
#include <compare>
#include <map>
#include <string>

namespace fracsym {

// Second/third-order jet space of u(x, T) in the alpha-time coordinate
// T = t^alpha / Gamma(1+alpha). The T-partial stands in for the fractional
// time derivative; that identification is exact for the polynomial algebra
// here and its quantitative validity is probed in the quadrature module.
enum class JetVar : int {
    x = 0,
    T,
    u,
    u_x,
    u_T,
    u_xx,
    u_xT,
    u_TT,
    u_xxx,
    u_xxT,
    u_xxxx,
};

inline constexpr int kJetVarCount = 11;

const char* jet_var_name(JetVar v);

using Exponents = std::array<std::uint8_t, kJetVarCount>;

struct MonoKey {
    int eu_power = 0;  // m in e^{m u}
    Exponents exps{};

    auto operator<=>(const MonoKey&) const = default;
};

/// Polynomial with exact rational coefficients over the jet variables,
/// each term optionally multiplied by an integer power of e^u. Terms are
/// kept canonically sorted by (m, exponent vector) with no zero
/// coefficients, so equality is structural.
class JetPoly {
public:
    JetPoly() = default;

    static JetPoly constant(Rational c);
    static JetPoly variable(JetVar v);
    static JetPoly exp_u(int m);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    JetPoly operator+(const JetPoly& o) const;
    JetPoly operator-(const JetPoly& o) const;
    JetPoly operator*(const JetPoly& o) const;
    JetPoly operator-() const;
    bool operator==(const JetPoly& o) const { return terms_ == o.terms_; }

    JetPoly scaled(const Rational& r) const;
    JetPoly pow(unsigned k) const;

    /// Partial derivative with respect to one jet variable; for u this
    /// includes the e^{mu} factor's contribution.
    JetPoly partial(JetVar v) const;

    bool depends_on(JetVar v) const;
    bool has_exp_u() const;

    Rational coefficient(const MonoKey& k) const;
    const std::map<MonoKey, Rational>& terms() const { return terms_; }

    double eval(const std::array<double, kJetVarCount>& vals) const;

    /// Canonical rendering: terms in sorted order, coefficients as "p/q".
    std::string str() const;

private:
    std::map<MonoKey, Rational> terms_;

    void add_term(const MonoKey& k, const Rational& c);
    friend JetPoly substitute(const JetPoly&, JetVar, const JetPoly&);
};

JetPoly jp_add(const JetPoly& p, const JetPoly& q);
JetPoly jp_mul(const JetPoly& p, const JetPoly& q);
JetPoly jp_scale(const Rational& r, const JetPoly& p);
bool jp_is_zero(const JetPoly& p);

/// Replace every occurrence of variable v by the given polynomial.
JetPoly substitute(const JetPoly& p, JetVar v, const JetPoly& repl);

/// Total x-derivative: d/dx + u_x d/du + u_xx d/du_x + u_xT d/du_T
/// + u_xxx d/du_xx + u_xxT d/du_xT + u_xxxx d/du_xxx, with the e^{mu}
/// chain term m u_x. Throws OrderOverflowError when the input contains
/// u_TT, u_xxT or u_xxxx (their images leave the variable list).
JetPoly total_dx(const JetPoly& p);

/// Total T-derivative: d/dT + u_T d/du + u_xT d/du_x + u_TT d/du_T
/// + u_xxT d/du_xx, with the e^{mu} chain term m u_T. Throws
/// OrderOverflowError when the input contains u_xT, u_TT, u_xxx, u_xxT
/// or u_xxxx.
JetPoly total_dT(const JetPoly& p);

/// Substitution by the equation u_T = u_xx + u_x^2 and its differential
/// consequences, highest T-count first:
///   u_TT  -> u_xxxx + 4 u_x u_xxx + 2 u_xx^2 + 4 u_x^2 u_xx
///   u_xxT -> u_xxxx + 2 u_xx^2 + 2 u_x u_xxx
///   u_xT  -> u_xxx + 2 u_x u_xx
///   u_T   -> u_xx + u_x^2
/// The result contains no T-derivatives of u; the pass is idempotent.
JetPoly on_shell_reduce(const JetPoly& p);

/// Convert a polynomial-exponential expression (rational coefficients,
/// non-negative integer powers of the jet variables, optional exp(m*u)
/// factors) into canonical JetPoly form. Anything else throws
/// ConversionError.
JetPoly to_jet_poly(const Expr& e);

/// Parse convenience: to_jet_poly(parse(text)).
JetPoly jet_parse(std::string_view text);

}  // namespace fracsym
