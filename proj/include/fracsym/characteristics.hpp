#pragma once

#include "fracsym/expr.hpp"
#include "fracsym/fractional.hpp"

#include <iosfwd>
#include <vector>

namespace fracsym {

/// Linear space-time fractional first-order problem
///   a(x,t) D_x^beta u + b(x,t) D_t^alpha u = c(x,t),  u(x, 0) = g(x).
/// The fractional differentials are given meaning through the substituted
/// coordinates X = x^beta/G(1+beta), T = t^alpha/G(1+alpha), in which the
/// characteristic system is classical: dX/ds = a, dT/ds = b, du/ds = c.
struct CharSystem {
    Expr a, b, c;
    double alpha = 1.0, beta = 1.0;
    Expr g;  // initial profile, univariate in x
    // set when b vanishes identically: time is frozen along characteristics
    bool degenerate_time = false;
};

struct TrajectoryPoint {
    double s, x, t, u;
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Integrate one characteristic from (x0, t0) with u(0) = u0 by RK4 in the
/// substituted coordinates, mapping back through x = (G(1+beta) X)^(1/beta),
/// t = (G(1+alpha) T)^(1/alpha). For beta < 1 the trajectory must keep
/// X >= 0 (the operators are based at 0); beta = 1 has no sign restriction.
Trajectory integrate_characteristic(const CharSystem& sys, double x0, double t0, double u0,
                                    double s_max, int steps);

/// Characteristics launched from the initial manifold t = 0 with u = g(x0).
std::vector<Trajectory> solve_characteristics(const CharSystem& sys,
                                              const std::vector<double>& launch_x, double s_max,
                                              int steps);

struct SampledSolution {
    std::vector<double> xs;
    TimeGrid tgrid;
    std::vector<double> u;  // row-major [ix * tgrid.size() + it]

    double at(int ix, int it) const { return u[static_cast<std::size_t>(ix) * tgrid.size() + it]; }
};

/// Evaluate u on a tensor grid by tracing each node's characteristic back
/// to the initial manifold (requires b > 0 so T advances monotonically).
SampledSolution solution_surface(const CharSystem& sys, const std::vector<double>& xs,
                                 const TimeGrid& tg, int steps = 200);

/// Max |a D_x^beta u + b D_t^alpha u - c| over the sampled grid, with the
/// fractional derivatives computed by the L1 scheme along grid lines and
/// classical second-order differences when the order is 1. The max is
/// taken over nodes with t >= interior_t_min.
double verify_char_solution(const CharSystem& sys, const SampledSolution& u,
                            double interior_t_min);

/// CSV "s,x,t,u".
void write_trajectory_csv(const Trajectory& tr, std::ostream& os);

/// CSV "x,t,u".
void write_surface_csv(const SampledSolution& s, std::ostream& os);

}  // namespace fracsym
