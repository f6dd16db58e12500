#include "fracsym/characteristics.hpp"

#include "fracsym/report.hpp"

#include <cmath>
#include <ostream>

namespace fracsym {

namespace {

struct SubstCoords {
    double ga;  // Gamma(1+alpha)
    double gb;  // Gamma(1+beta)
    double alpha, beta;

    explicit SubstCoords(const CharSystem& sys)
        : ga(gamma_fn(1.0 + sys.alpha)),
          gb(gamma_fn(1.0 + sys.beta)),
          alpha(sys.alpha),
          beta(sys.beta) {
        if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
            throw DomainError("characteristic orders must lie in (0, 1]");
    }

    double X_of_x(double x) const {
        if (beta == 1.0) return x;
        if (x < 0.0) throw DomainError("x < 0 with fractional space order");
        return std::pow(x, beta) / gb;
    }
    double x_of_X(double X) const {
        if (beta == 1.0) return X;
        if (X < 0.0) throw DomainError("characteristic left the x >= 0 half-line");
        return std::pow(gb * X, 1.0 / beta);
    }
    double T_of_t(double t) const {
        if (alpha == 1.0) return t;
        if (t < 0.0) throw DomainError("t < 0");
        return std::pow(t, alpha) / ga;
    }
    double t_of_T(double T) const {
        if (alpha == 1.0) return T;
        if (T < 0.0) throw DomainError("characteristic left the t >= 0 half-line");
        return std::pow(ga * T, 1.0 / alpha);
    }
};

double eval_xt(const Expr& e, double x, double t) {
    return eval(e, {{"x", x}, {"t", t}});
}

// reusable (x, t) binding slots: the integrators evaluate the coefficient
// expressions millions of times, so per-call map construction dominates
class XtEvaluator {
public:
    XtEvaluator() : b_{{"t", 0.0}, {"x", 0.0}} {
        t_ = &b_.find("t")->second;
        x_ = &b_.find("x")->second;
    }
    double operator()(const Expr& e, double x, double t) {
        *x_ = x;
        *t_ = t;
        return eval(e, b_);
    }

private:
    Bindings b_;
    double* x_;
    double* t_;
};

}  // namespace

Trajectory integrate_characteristic(const CharSystem& sys, double x0, double t0, double u0,
                                    double s_max, int steps) {
    if (steps < 1) throw DomainError("integration requires at least one step");
    SubstCoords co(sys);
    double X = co.X_of_x(x0);
    double T = co.T_of_t(t0);
    double u = u0;
    const double h = s_max / steps;

    XtEvaluator ev;
    auto rhs = [&](double Xv, double Tv, double out[3]) {
        double x = co.x_of_X(Xv);
        double t = co.t_of_T(Tv);
        out[0] = ev(sys.a, x, t);
        out[1] = sys.degenerate_time ? 0.0 : ev(sys.b, x, t);
        out[2] = ev(sys.c, x, t);
    };

    Trajectory tr;
    tr.reserve(steps + 1);
    tr.push_back({0.0, x0, t0, u0});
    double k1[3], k2[3], k3[3], k4[3];
    for (int i = 0; i < steps; ++i) {
        rhs(X, T, k1);
        rhs(X + 0.5 * h * k1[0], T + 0.5 * h * k1[1], k2);
        rhs(X + 0.5 * h * k2[0], T + 0.5 * h * k2[1], k3);
        rhs(X + h * k3[0], T + h * k3[1], k4);
        X += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        T += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        u += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
        tr.push_back({(i + 1) * h, co.x_of_X(X), co.t_of_T(T), u});
    }
    return tr;
}

std::vector<Trajectory> solve_characteristics(const CharSystem& sys,
                                              const std::vector<double>& launch_x, double s_max,
                                              int steps) {
    std::vector<Trajectory> out;
    out.reserve(launch_x.size());
    for (double x0 : launch_x) {
        double u0 = eval(sys.g, {{"x", x0}});
        out.push_back(integrate_characteristic(sys, x0, 0.0, u0, s_max, steps));
    }
    return out;
}

SampledSolution solution_surface(const CharSystem& sys, const std::vector<double>& xs,
                                 const TimeGrid& tg, int steps) {
    if (sys.degenerate_time)
        throw DomainError("surface evaluation requires non-degenerate time (b != 0)");
    SubstCoords co(sys);
    SampledSolution out;
    out.xs = xs;
    out.tgrid = tg;
    out.u.assign(xs.size() * static_cast<std::size_t>(tg.size()), 0.0);

    XtEvaluator ev;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        for (int it = 0; it < tg.size(); ++it) {
            const double x = xs[ix];
            const double t = tg.node(it);
            if (it == 0) {
                out.u[ix * tg.size()] = eval(sys.g, {{"x", x}});
                continue;
            }
            // trace back in T: dX/dT = a/b, dw/dT = c/b; u = g(foot) + w(T_target)
            double X = co.X_of_x(x);
            double T = co.T_of_t(t);
            double w = 0.0;
            // `steps` sets the step size for the deepest node; shallow nodes
            // take proportionally fewer steps at the same h
            const double T_max = co.T_of_t(tg.t_end);
            const int node_steps =
                std::max(8, static_cast<int>(std::ceil(steps * T / T_max)));
            const double hT = T / node_steps;
            auto rhs = [&](double Xv, double Tv, double out2[2]) {
                double xv = co.x_of_X(Xv);
                double tv = co.t_of_T(std::max(Tv, 0.0));
                double bv = ev(sys.b, xv, tv);
                if (!(bv > 0.0))
                    throw DomainError("backtrace requires b > 0 along the characteristic");
                out2[0] = ev(sys.a, xv, tv) / bv;
                out2[1] = ev(sys.c, xv, tv) / bv;
            };
            double k1[2], k2[2], k3[2], k4[2];
            for (int i = 0; i < node_steps; ++i) {
                rhs(X, T, k1);
                rhs(X - 0.5 * hT * k1[0], T - 0.5 * hT, k2);
                rhs(X - 0.5 * hT * k2[0], T - 0.5 * hT, k3);
                rhs(X - hT * k3[0], T - hT, k4);
                X -= hT / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
                w -= hT / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
                T -= hT;
            }
            // w accumulated -integral(c/b dT); forward value is g(foot) - w
            double foot = co.x_of_X(X);
            out.u[ix * tg.size() + it] = eval(sys.g, {{"x", foot}}) - w;
        }
    }
    return out;
}

namespace {

// second-order finite differences on a uniform grid (one-sided at ends)
std::vector<double> classical_deriv(const std::vector<double>& v, double h) {
    const int n = static_cast<int>(v.size());
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return d;
}

}  // namespace

double verify_char_solution(const CharSystem& sys, const SampledSolution& sol,
                            double interior_t_min) {
    const int nx = static_cast<int>(sol.xs.size());
    const int nt = sol.tgrid.size();
    if (nx < 3) throw DomainError("verification needs at least 3 x-samples");

    // D_t^alpha u along each x-line
    std::vector<std::vector<double>> dt(nx);
    for (int ix = 0; ix < nx; ++ix) {
        std::vector<double> line(nt);
        for (int it = 0; it < nt; ++it) line[it] = sol.at(ix, it);
        if (sys.alpha == 1.0) {
            dt[ix] = classical_deriv(line, sol.tgrid.h());
        } else {
            GridFn gf(sol.tgrid, std::move(line));
            dt[ix] = mrl_deriv(gf, sys.alpha).values;
        }
    }

    // D_x^beta u along each t-line; the x-grid must be uniform
    const double hx = sol.xs[1] - sol.xs[0];
    for (int ix = 1; ix + 1 < nx; ++ix)
        if (std::abs((sol.xs[ix + 1] - sol.xs[ix]) - hx) > 1e-12 * std::max(1.0, std::abs(hx)))
            throw DomainError("verification requires a uniform x-grid");
    std::vector<std::vector<double>> dx(nt);
    for (int it = 0; it < nt; ++it) {
        std::vector<double> line(nx);
        for (int ix = 0; ix < nx; ++ix) line[ix] = sol.at(ix, it);
        if (sys.beta == 1.0) {
            dx[it] = classical_deriv(line, hx);
        } else {
            if (std::abs(sol.xs[0]) > 1e-14)
                throw DomainError("fractional x-derivative needs an x-grid based at 0");
            GridFn gf(TimeGrid(sol.xs[nx - 1], nx - 1), std::move(line));
            dx[it] = mrl_deriv(gf, sys.beta).values;
        }
    }

    double worst = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
        for (int it = 0; it < nt; ++it) {
            double t = sol.tgrid.node(it);
            if (t < interior_t_min) continue;
            double x = sol.xs[ix];
            double r = eval_xt(sys.a, x, t) * dx[it][ix] + eval_xt(sys.b, x, t) * dt[ix][it] -
                       eval_xt(sys.c, x, t);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
    os << "s,x,t,u\n";
    for (const auto& p : tr)
        os << fmt17(p.s) << "," << fmt17(p.x) << "," << fmt17(p.t) << "," << fmt17(p.u) << "\n";
}

void write_surface_csv(const SampledSolution& s, std::ostream& os) {
    os << "x,t,u\n";
    for (std::size_t ix = 0; ix < s.xs.size(); ++ix)
        for (int it = 0; it < s.tgrid.size(); ++it)
            os << fmt17(s.xs[ix]) << "," << fmt17(s.tgrid.node(it)) << ","
               << fmt17(s.at(static_cast<int>(ix), it)) << "\n";
}

}  // namespace fracsym
