#include "fracsym/groups.hpp"

#include "fracsym/report.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace fracsym {

const char* group_kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::g1: return "g1";
        case GroupKind::g2: return "g2";
        case GroupKind::g3: return "g3";
        case GroupKind::g4: return "g4";
        case GroupKind::g5: return "g5";
        case GroupKind::g6: return "g6";
        case GroupKind::g_alpha: return "g_alpha";
    }
    return "?";
}

GroupKind group_kind_from_name(const std::string& name) {
    for (GroupKind k : {GroupKind::g1, GroupKind::g2, GroupKind::g3, GroupKind::g4,
                        GroupKind::g5, GroupKind::g6, GroupKind::g_alpha})
        if (name == group_kind_name(k)) return k;
    if (name == "galpha") return GroupKind::g_alpha;
    throw DomainError("unknown group element '" + name + "'");
}

Point apply_point(const GroupElement& g, const Point& p) {
    const double e = g.eps;
    switch (g.kind) {
        case GroupKind::g1:
            return {p.x + e, p.T, p.u};
        case GroupKind::g2:
            return {p.x, p.T + e, p.u};
        case GroupKind::g3:
            return {p.x, p.T, p.u + e};
        case GroupKind::g4:
            return {p.x * std::exp(e), p.T * std::exp(2.0 * e), p.u};
        case GroupKind::g5:
            return {p.x + 2.0 * e * p.T, p.T, p.u - e * e * p.T - p.x * e};
        case GroupKind::g6: {
            const double d = 1.0 - 4.0 * e * p.T;
            if (d <= 0.0) throw DomainError("g6 domain violation: 1 - 4 eps T <= 0");
            return {p.x / d, p.T / d, p.u - p.x * p.x * e / d + 0.5 * std::log(d)};
        }
        case GroupKind::g_alpha: {
            if (!g.k) throw DomainError("g_alpha requires a heat profile k");
            double kv = eval(g.k, {{"x", p.x}, {"T", p.T}});
            double w = std::exp(p.u) + e * kv;
            if (w <= 0.0) throw DomainError("g_alpha domain violation: e^u + eps k <= 0");
            return {p.x, p.T, std::log(w)};
        }
    }
    throw DomainError("corrupt group element");
}

Point flow(const VectorField& V, double eps, const Point& p, int steps) {
    if (steps < 1) throw DomainError("flow requires at least one step");
    std::array<double, kJetVarCount> vals{};
    auto deriv = [&](const Point& q, double out[3]) {
        vals[static_cast<int>(JetVar::x)] = q.x;
        vals[static_cast<int>(JetVar::T)] = q.T;
        vals[static_cast<int>(JetVar::u)] = q.u;
        out[0] = V.xi.eval(vals);
        out[1] = V.tau.eval(vals);
        out[2] = V.phi.eval(vals);
    };
    const double h = eps / steps;
    Point q = p;
    double k1[3], k2[3], k3[3], k4[3];
    for (int i = 0; i < steps; ++i) {
        deriv(q, k1);
        deriv({q.x + 0.5 * h * k1[0], q.T + 0.5 * h * k1[1], q.u + 0.5 * h * k1[2]}, k2);
        deriv({q.x + 0.5 * h * k2[0], q.T + 0.5 * h * k2[1], q.u + 0.5 * h * k2[2]}, k3);
        deriv({q.x + h * k3[0], q.T + h * k3[1], q.u + h * k3[2]}, k4);
        q.x += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        q.T += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        q.u += h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
        if (!std::isfinite(q.x) || !std::isfinite(q.T) || !std::isfinite(q.u))
            throw DomainError("flow of " + V.name + " left its domain (finite-time blowup)");
    }
    return q;
}

namespace {

Expr x_var() { return var("x"); }
Expr T_var() { return var("T"); }

bool check_heat_profile(const Expr& k) {
    for (const auto& v : free_variables(k))
        if (v != "x" && v != "T") return false;
    Expr defect = sub(diff(k, "T"), diff(diff(k, "x"), "x"));
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> ux(0.0, 2.0), uT(0.1, 2.0);
    for (int i = 0; i < 40; ++i) {
        double d = eval(defect, {{"x", ux(rng)}, {"T", uT(rng)}});
        if (std::abs(d) > 1e-9) return false;
    }
    return true;
}

}  // namespace

Solution transform_solution(const GroupElement& g, const Solution& f) {
    const Expr e = dnum(g.eps);
    Solution out;
    out.provenance = f.provenance.empty() ? f.name : f.provenance;
    out.provenance += " -> " + g.name();
    out.name = g.name() + "(" + f.name + ")";
    switch (g.kind) {
        case GroupKind::g1:
            out.expr = substitute(f.expr, {{"x", sub(x_var(), e)}});
            return out;
        case GroupKind::g2:
            out.expr = substitute(f.expr, {{"T", sub(T_var(), e)}});
            return out;
        case GroupKind::g3:
            out.expr = add(f.expr, e);
            return out;
        case GroupKind::g4:
            out.expr = substitute(f.expr, {{"x", mul(x_var(), dnum(std::exp(-g.eps)))},
                                           {"T", mul(T_var(), dnum(std::exp(-2.0 * g.eps)))}});
            return out;
        case GroupKind::g5: {
            Expr shifted = substitute(
                f.expr, {{"x", sub(x_var(), mul(dnum(2.0 * g.eps), T_var()))}});
            out.expr = sub(add(shifted, mul(mul(e, e), T_var())), mul(x_var(), e));
            return out;
        }
        case GroupKind::g6: {
            Expr denom = add(num(1), mul(dnum(4.0 * g.eps), T_var()));
            Expr composed = substitute(
                f.expr, {{"x", div(x_var(), denom)}, {"T", div(T_var(), denom)}});
            Expr quad = div(mul(mul(x_var(), x_var()), e), denom);
            out.expr = sub(sub(composed, quad), call("log", {call("sqrt", {denom})}));
            return out;
        }
        case GroupKind::g_alpha:
            if (!g.k) throw DomainError("g_alpha requires a heat profile k");
            return superpose(f, g.k, g.eps);
    }
    throw DomainError("corrupt group element");
}

Solution iterate_transform(const GroupElement& g, const Solution& f, int n) {
    if (n < 0) throw DomainError("iterate_transform requires n >= 0");
    Solution out = f;
    for (int i = 0; i < n; ++i) out = transform_solution(g, out);
    return out;
}

Solution superpose(const Solution& f, const Expr& k, double eps) {
    if (!check_heat_profile(k))
        throw DomainError("superposition profile k is not a heat solution (k_T != k_xx)");
    Solution out;
    out.name = "g_alpha(" + f.name + ")";
    out.provenance = (f.provenance.empty() ? f.name : f.provenance) + " -> g_alpha";
    out.expr = call("log", {add(call("exp", {f.expr}), mul(dnum(eps), k))});
    return out;
}

double ResidualReport::value_near(double x, double t) const {
    double best = 0.0, dist = 1e300;
    for (const auto& r : rows) {
        double d = std::abs(r.x - x) + std::abs(r.t - t);
        if (d < dist) {
            dist = d;
            best = r.residual;
        }
    }
    return best;
}

void ResidualReport::write_csv(std::ostream& os) const {
    os << "x," << (semantics == "alpha-time" ? "T" : "t") << ",residual\n";
    for (const auto& r : rows)
        os << fmt17(r.x) << "," << fmt17(r.t) << "," << fmt17(r.residual) << "\n";
}

ResidualReport residual_alpha_time(const Solution& f, const GridSpec& xg, const GridSpec& Tg,
                                   const Bindings& params) {
    Expr ux = diff(f.expr, "x");
    Expr residual = sub(sub(diff(f.expr, "T"), diff(ux, "x")), mul(ux, ux));
    ResidualReport rep;
    rep.solution = f.name;
    rep.semantics = "alpha-time";
    rep.params = params;
    rep.rows.reserve(static_cast<std::size_t>(xg.n) * Tg.n);
    Bindings b = params;
    for (int i = 0; i < xg.n; ++i) {
        b["x"] = xg.node(i);
        for (int j = 0; j < Tg.n; ++j) {
            b["T"] = Tg.node(j);
            double r;
            try {
                r = eval(residual, b);
            } catch (const Error& err) {
                throw DomainError("residual evaluation failed at (x=" + fmt17(b["x"]) +
                                  ", T=" + fmt17(b["T"]) + "): " + err.what());
            }
            rep.rows.push_back({b["x"], b["T"], r});
            rep.max_abs = std::max(rep.max_abs, std::abs(r));
        }
    }
    return rep;
}

double cole_hopf_residual(const Solution& f, const GridSpec& xg, const GridSpec& Tg,
                          const Bindings& params) {
    Expr v = call("exp", {f.expr});
    Expr residual = sub(diff(v, "T"), diff(diff(v, "x"), "x"));
    double worst = 0.0;
    Bindings b = params;
    for (int i = 0; i < xg.n; ++i) {
        b["x"] = xg.node(i);
        for (int j = 0; j < Tg.n; ++j) {
            b["T"] = Tg.node(j);
            worst = std::max(worst, std::abs(eval(residual, b)));
        }
    }
    return worst;
}

ResidualReport residual_direct(const Solution& f, double alpha, const GridSpec& xg,
                               const TimeGrid& tg, const Bindings& params,
                               double interior_t_min) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("residual_direct requires 0 < alpha < 1");
    const double gn = gamma_fn(1.0 + alpha);
    Expr ux = diff(f.expr, "x");
    Expr rhs = add(diff(ux, "x"), mul(ux, ux));
    ResidualReport rep;
    rep.solution = f.name;
    rep.semantics = "direct-quadrature";
    rep.alpha = alpha;
    rep.params = params;
    rep.interior_t_min = interior_t_min;
    Bindings b = params;
    for (int i = 0; i < xg.n; ++i) {
        b["x"] = xg.node(i);
        GridFn line = sample(tg, [&](double t) {
            Bindings bb = b;
            bb["T"] = std::pow(t, alpha) / gn;
            return eval(f.expr, bb);
        });
        GridFn dline = mrl_deriv(line, alpha);
        for (int j = 0; j < tg.size(); ++j) {
            double t = tg.node(j);
            b["T"] = std::pow(t, alpha) / gn;
            double r = dline.values[j] - eval(rhs, b);
            rep.rows.push_back({b["x"], t, r});
            if (t >= interior_t_min) rep.max_abs = std::max(rep.max_abs, std::abs(r));
        }
        b.erase("T");
    }
    return rep;
}

std::vector<Solution> catalog() {
    auto entry = [](const char* name, const char* text, const char* prov) {
        return Solution{name, parse(text), prov};
    };
    std::vector<Solution> out;
    out.push_back(entry("u5_1", "c + eps^2*T - x*eps", "g5 applied to u = c"));
    out.push_back(entry("u5_2", "c - 2*x*eps + 4*eps^2*T", "g5 applied twice to u = c"));
    out.push_back(entry("u6_1", "c - x^2*eps/(1 + 4*eps*T) - log(sqrt(1 + 4*eps*T))",
                        "g6 applied to u = c"));
    out.push_back(entry("u6_2", "c - 2*eps*x^2/(1 + 8*eps*T) - log(sqrt(1 + 8*eps*T))",
                        "g6 applied twice to u = c"));
    // classical limit: T reduces to t
    out.push_back(entry("u5_1_alpha1", "c + eps^2*t - x*eps", "u5_1 at alpha = 1"));
    out.push_back(entry("u5_2_alpha1", "c - 2*x*eps + 4*eps^2*t", "u5_2 at alpha = 1"));
    out.push_back(entry("u6_1_alpha1", "c - x^2*eps/(1 + 4*eps*t) - log(sqrt(1 + 4*eps*t))",
                        "u6_1 at alpha = 1"));
    out.push_back(entry("u6_2_alpha1", "c - 2*eps*x^2/(1 + 8*eps*t) - log(sqrt(1 + 8*eps*t))",
                        "u6_2 at alpha = 1"));
    return out;
}

const Solution& catalog_entry(const std::string& name) {
    static const std::vector<Solution> entries = catalog();
    for (const auto& s : entries)
        if (s.name == name) return s;
    throw DomainError("unknown catalog solution '" + name + "'");
}

}  // namespace fracsym
