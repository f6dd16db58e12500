#include "fracsym/fractional.hpp"

#include "fracsym/report.hpp"

#include <cmath>
#include <ostream>

namespace fracsym {

double gamma_fn(double z) {
    static const double coef[9] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (std::isnan(z)) throw DomainError("gamma of NaN");
    if (z <= 0.0 && z == std::floor(z))
        throw DomainError("gamma pole at non-positive integer");
    const double pi = 3.14159265358979323846;
    if (z < 0.5) return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    z -= 1.0;
    double a = coef[0];
    for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double power_law_coeff(double alpha, double beta) {
    if (beta <= 0.0) throw DomainError("power_law_coeff requires beta > 0");
    if (beta - alpha <= -1.0)
        throw DomainError("power_law_coeff requires beta - alpha > -1");
    return gamma_fn(1.0 + beta) / gamma_fn(1.0 + beta - alpha);
}

TimeGrid::TimeGrid(double end, int nodes) : t_end(end), n(nodes) {
    if (!(end > 0.0)) throw DomainError("TimeGrid requires t_end > 0");
    if (nodes < 2) throw DomainError("TimeGrid requires n >= 2");
}

GridFn::GridFn(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.size())
        throw DomainError("GridFn length does not match grid");
    for (double x : values)
        if (!std::isfinite(x)) throw DomainError("GridFn contains non-finite value");
}

GridFn sample(const TimeGrid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return GridFn(g, std::move(v));
}

GridFn mrl_deriv(const GridFn& f, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("mrl_deriv requires 0 < alpha < 1");
    const int n = f.grid.n;
    const double h = f.grid.h();
    const double c = 1.0 / (h * gamma_fn(2.0 - alpha));
    std::vector<double> pw(n + 1);
    for (int d = 0; d <= n; ++d) pw[d] = std::pow(d * h, 1.0 - alpha);
    std::vector<double> out(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) {
            s += (f.values[j + 1] - f.values[j]) * (pw[k - j] - pw[k - j - 1]);
        }
        out[k] = s * c;
    }
    return GridFn(f.grid, std::move(out));
}

GridFn frac_integral(const GridFn& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("frac_integral requires 0 < alpha <= 1");
    const int n = f.grid.n;
    const double h = f.grid.h();
    const double inv_gamma = 1.0 / gamma_fn(alpha);
    std::vector<double> pa(n + 1), pa1(n + 1);
    for (int d = 0; d <= n; ++d) {
        pa[d] = std::pow(d * h, alpha);
        pa1[d] = std::pow(d * h, alpha + 1.0);
    }
    std::vector<double> out(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) {
            // panel [t_j, t_{j+1}];  a = t_k - t_j, b = t_k - t_{j+1}
            const double a = pa[k - j], b = pa[k - j - 1];
            const double a1 = pa1[k - j], b1 = pa1[k - j - 1];
            const double slope = (f.values[j + 1] - f.values[j]) / h;
            const double fa = f.values[j] + slope * ((k - j) * h);
            s += fa * (a - b) / alpha - slope * (a1 - b1) / (alpha + 1.0);
        }
        out[k] = s * inv_gamma;
    }
    return GridFn(f.grid, std::move(out));
}

double probe_newton_leibniz(const GridFn& f, double alpha) {
    GridFn integ = frac_integral(mrl_deriv(f, alpha), alpha);
    double worst = 0.0;
    for (int i = 0; i < f.grid.size(); ++i) {
        double d = std::abs(integ.values[i] - (f.values[i] - f.values[0]));
        worst = std::max(worst, d);
    }
    return worst;
}

GridFn probe_leibniz(const GridFn& u, const GridFn& v, double alpha) {
    if (u.grid.n != v.grid.n || u.grid.t_end != v.grid.t_end)
        throw DomainError("probe_leibniz requires a shared grid");
    GridFn prod = u;
    for (int i = 0; i < u.grid.size(); ++i) prod.values[i] = u.values[i] * v.values[i];
    GridFn dprod = mrl_deriv(prod, alpha);
    GridFn du = mrl_deriv(u, alpha);
    GridFn dv = mrl_deriv(v, alpha);
    std::vector<double> defect(u.grid.size());
    for (int i = 0; i < u.grid.size(); ++i)
        defect[i] = dprod.values[i] - du.values[i] * v.values[i] - u.values[i] * dv.values[i];
    return GridFn(u.grid, std::move(defect));
}

GridFn probe_chain_rule(const Expr& outer, double alpha, const TimeGrid& g) {
    for (const auto& v : free_variables(outer))
        if (v != "T") throw DomainError("probe_chain_rule outer function must be univariate in T");
    const double gn = gamma_fn(1.0 + alpha);
    Expr fprime = diff(outer, "T");
    GridFn composed = sample(g, [&](double t) {
        return eval(outer, {{"T", std::pow(t, alpha) / gn}});
    });
    GridFn lhs = mrl_deriv(composed, alpha);
    std::vector<double> defect(g.size());
    for (int i = 0; i < g.size(); ++i) {
        double T = std::pow(g.node(i), alpha) / gn;
        defect[i] = lhs.values[i] - eval(fprime, {{"T", T}});
    }
    defect[0] = 0.0;  // derivative at the base point is 0 by convention
    return GridFn(g, std::move(defect));
}

double max_abs_from(const GridFn& f, double t_min) {
    double worst = 0.0;
    for (int i = 0; i < f.grid.size(); ++i)
        if (f.grid.node(i) >= t_min) worst = std::max(worst, std::abs(f.values[i]));
    return worst;
}

double max_abs(const GridFn& f) { return max_abs_from(f, 0.0); }

void write_csv(const GridFn& f, std::ostream& os) {
    os << "t,value\n";
    for (int i = 0; i < f.grid.size(); ++i)
        os << fmt17(f.grid.node(i)) << "," << fmt17(f.values[i]) << "\n";
}

}  // namespace fracsym
