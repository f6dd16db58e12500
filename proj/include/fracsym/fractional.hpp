#pragma once

#include "fracsym/errors.hpp"
#include "fracsym/expr.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace fracsym {

/// Lanczos approximation (g = 7, 9 coefficients). Relative error below
/// 1e-12 on [0.5, 10]; poles at non-positive integers throw DomainError.
double gamma_fn(double z);

/// Coefficient of the power law D^alpha x^beta = G(1+beta)/G(1+beta-alpha) x^(beta-alpha).
/// Requires beta > 0 and beta - alpha > -1.
double power_law_coeff(double alpha, double beta);

/// Uniform grid on [0, t_end] with nodes t_i = i*h, h = t_end/n.
struct TimeGrid {
    double t_end = 1.0;
    int n = 2;

    TimeGrid() = default;
    TimeGrid(double end, int nodes);
    double h() const { return t_end / n; }
    double node(int i) const { return i * h(); }
    int size() const { return n + 1; }
};

struct GridFn {
    TimeGrid grid;
    std::vector<double> values;

    GridFn() = default;
    GridFn(TimeGrid g, std::vector<double> v);
};

GridFn sample(const TimeGrid& g, const std::function<double(double)>& f);

/// Modified Riemann-Liouville derivative of order alpha in (0,1) by the
/// L1 product-integration scheme applied to g = f - f(0):
///   D^a f(t_k) ~ sum_{j<k} (g_{j+1}-g_j) * ((t_k-t_j)^(1-a) - (t_k-t_{j+1})^(1-a)) / (h*G(2-a))
/// The value at t_0 = 0 is defined as 0.
GridFn mrl_deriv(const GridFn& f, double alpha);

/// Fractional integral of order alpha in (0,1]:
///   I^a f(x) = (1/G(a)) int_0^x (x-s)^(a-1) f(s) ds,
/// product integration with piecewise-linear f (exact per panel for
/// constant and linear data).
GridFn frac_integral(const GridFn& f, double alpha);

/// Max over all nodes of |I^a(D^a f)(t) - (f(t) - f(0))|.
double probe_newton_leibniz(const GridFn& f, double alpha);

/// Pointwise defect D^a(uv) - D^a(u) v - u D^a(v).
GridFn probe_leibniz(const GridFn& u, const GridFn& v, double alpha);

/// Pointwise defect D_t^a[F(T(t))] - F'(T(t)) with T(t) = t^a / G(1+a).
/// `outer` is univariate in the variable "T".
GridFn probe_chain_rule(const Expr& outer, double alpha, const TimeGrid& g);

/// Max |values| over nodes with t_i >= t_min. The first L1 nodes carry an
/// O(1) boundary layer for t^a-type data, so quadrature checks read the
/// grid from a cutoff.
double max_abs_from(const GridFn& f, double t_min);

double max_abs(const GridFn& f);

/// CSV with header "t,value", 17 significant digits.
void write_csv(const GridFn& f, std::ostream& os);

}  // namespace fracsym
