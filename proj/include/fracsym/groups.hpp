#pragma once

#include "fracsym/expr.hpp"
#include "fracsym/fractional.hpp"
#include "fracsym/symmetry.hpp"

#include <string>
#include <vector>

namespace fracsym {

enum class GroupKind { g1, g2, g3, g4, g5, g6, g_alpha };

const char* group_kind_name(GroupKind k);
GroupKind group_kind_from_name(const std::string& name);

/// One-parameter point transformation in (x, T, u) coordinates.
/// g_alpha carries the heat-solution profile k(x, T) of its superposition.
struct GroupElement {
    GroupKind kind;
    double eps = 0.0;
    Expr k;  // g_alpha only

    std::string name() const { return group_kind_name(kind); }
};

struct Point {
    double x = 0.0, T = 0.0, u = 0.0;
};

/// Closed-form action. g6 requires 1 - 4 eps T > 0; g_alpha requires
/// e^u + eps k > 0.
Point apply_point(const GroupElement& g, const Point& p);

/// RK4 integration of dx/ds = xi, dT/ds = tau, du/ds = phi from p over
/// parameter distance eps.
Point flow(const VectorField& V, double eps, const Point& p, int steps = 1000);

/// Closed-form u(x, T) with free parameters c and eps.
struct Solution {
    std::string name;
    Expr expr;
    std::string provenance;
};

/// Pullback of a solution by the group element (the transformed graph is
/// again a solution). For g6 every occurrence uses (1 + 4 eps T).
Solution transform_solution(const GroupElement& g, const Solution& f);

Solution iterate_transform(const GroupElement& g, const Solution& f, int n);

/// log(e^f + eps k); k must solve the heat equation k_T = k_xx (checked
/// via symbolic differentiation evaluated at random points).
Solution superpose(const Solution& f, const Expr& k, double eps);

struct GridSpec {
    double lo = 0.0, hi = 1.0;
    int n = 50;  // node count

    double node(int i) const { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

struct ResidualReport {
    std::string solution;
    std::string semantics;  // "alpha-time" or "direct-quadrature"
    double alpha = 1.0;
    Bindings params;
    double max_abs = 0.0;
    // per-node rows: (x, t-or-T, residual)
    struct Row {
        double x, t, residual;
    };
    std::vector<Row> rows;
    // direct-quadrature only: max taken over nodes with t >= interior_t_min
    double interior_t_min = 0.0;

    double value_near(double x, double t) const;
    void write_csv(std::ostream& os) const;
};

/// max |u_T - u_xx - u_x^2| over the (x, T) grid, derivatives symbolic.
ResidualReport residual_alpha_time(const Solution& f, const GridSpec& xg, const GridSpec& Tg,
                                   const Bindings& params);

/// Heat residual max |v_T - v_xx| of v = e^u over the grid (independent
/// route to the same solution property).
double cole_hopf_residual(const Solution& f, const GridSpec& xg, const GridSpec& Tg,
                          const Bindings& params);

/// max |D_t^alpha u - u_xx - u_x^2| with D_t^alpha the L1 quadrature along
/// each x-line; reported over nodes with t >= interior_t_min (the first L1
/// nodes carry an O(1) boundary layer for t^alpha-type data). The full
/// per-node field stays in the report.
ResidualReport residual_direct(const Solution& f, double alpha, const GridSpec& xg,
                               const TimeGrid& tg, const Bindings& params,
                               double interior_t_min);

/// The four closed forms u5_1, u5_2, u6_1, u6_2 plus their classical
/// (alpha = 1) specializations with T replaced by t.
std::vector<Solution> catalog();

const Solution& catalog_entry(const std::string& name);

}  // namespace fracsym
