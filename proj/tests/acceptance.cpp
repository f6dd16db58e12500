// Acceptance suite: one check per published property, one line per check.
// Exits nonzero when any criterion fails.

#include "fracsym/characteristics.hpp"
#include "fracsym/expr.hpp"
#include "fracsym/fractional.hpp"
#include "fracsym/groups.hpp"
#include "fracsym/jet.hpp"
#include "fracsym/symmetry.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace fracsym;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

double loglog_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
    const int n = static_cast<int>(hs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = std::log(hs[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const GridSpec kXGrid{0.0, 2.0, 50};
const GridSpec kTGrid{0.1, 2.0, 50};

// ---------------------------------------------------------------------------

void criterion_1_symmetry_verification() {
    bool ok = true;
    for (const auto& V : basis()) ok = ok && symmetry_defect(V).is_zero();
    for (const char* k : {"1", "x", "x^2/2 + T", "x^3/6 + x*T"})
        ok = ok && symmetry_defect(vk_field(jet_parse(k))).is_zero();
    ok = ok && !symmetry_defect(basis(V4Variant::printed)[3]).is_zero();
    std::array<Rational, 6> c6{0, 0, 0, 0, 0, 1};
    ok = ok && !symmetry_defect(infinitesimal_family(c6, Eq28Sign::plus)).is_zero();
    ok = ok && !symmetry_defect(vk_field(jet_parse("T"))).is_zero();
    report(1, ok,
           "exact symmetry defects: zero for V1..V6 (V4 corrected) and four heat-polynomial "
           "V_k; nonzero for V4 as printed, the +2c6T family, and V_k(T)");
}

void criterion_2_lie_algebra() {
    bool ok = true;
    auto b = basis();
    StructureTable t = structure_table(b);
    ok = ok && t.closed();
    for (int i = 0; i < 6 && ok; ++i)
        for (int j = 0; j < 6 && ok; ++j)
            for (int k = 0; k < 6 && ok; ++k)
                ok = t.entry[i][j].coeff[k] == -t.entry[j][i].coeff[k];
    for (const auto& V : b)
        for (const auto& W : b)
            for (const auto& Z : b) {
                VectorField s1 = bracket(V, bracket(W, Z));
                VectorField s2 = bracket(W, bracket(Z, V));
                VectorField s3 = bracket(Z, bracket(V, W));
                ok = ok && (s1.xi + s2.xi + s3.xi).is_zero() &&
                     (s1.tau + s2.tau + s3.tau).is_zero() &&
                     (s1.phi + s2.phi + s3.phi).is_zero();
            }
    PaperComparison cmp = compare_to_paper(t);
    ok = ok && cmp.convention == BracketConvention::global_sign_flipped &&
         cmp.zero_entries_exact;
    report(2, ok,
           "6x6 bracket table closes exactly; antisymmetry and Jacobi hold; published table "
           "matched under a global sign flip with zero entries exact");
}

void criterion_3_flow_equivalence() {
    bool ok = true;
    std::mt19937 rng(301);
    std::uniform_real_distribution<double> dx(0.0, 2.0), dT(0.1, 2.0), du(-1.0, 1.0);
    auto b = basis();
    const GroupKind kinds[] = {GroupKind::g1, GroupKind::g2, GroupKind::g3,
                               GroupKind::g4, GroupKind::g5, GroupKind::g6};
    double worst = 0.0;
    for (int f = 0; f < 6; ++f) {
        for (int i = 0; i < 20; ++i) {
            Point p{dx(rng), dT(rng), du(rng)};
            Point numeric = flow(b[f], 0.1, p, 1000);
            Point closed = apply_point({kinds[f], 0.1, nullptr}, p);
            worst = std::max({worst, std::abs(numeric.x - closed.x),
                              std::abs(numeric.T - closed.T), std::abs(numeric.u - closed.u)});
        }
    }
    ok = ok && worst <= 1e-8;

    // concrete g6 point (1,1,0) -> (5/3, 5/3, -1/6 + ln(0.6)/2)
    Point img = apply_point({GroupKind::g6, 0.1, nullptr}, {1.0, 1.0, 0.0});
    double ux = 5.0 / 3.0, uu = -1.0 / 6.0 + 0.5 * std::log(0.6);
    ok = ok && std::abs(img.x - ux) <= 1e-8 && std::abs(img.T - ux) <= 1e-8 &&
         std::abs(img.u - uu) <= 1e-8;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "RK4 flows match closed forms to %.2e (tol 1e-8); g6(1,1,0) = "
                  "(%.7f, %.7f, %.7f)",
                  worst, img.x, img.T, img.u);
    report(3, ok, buf);
}

void criterion_4_alpha_time_residuals() {
    bool ok = true;
    double worst_pde = 0.0, worst_heat = 0.0;
    for (const char* name : {"u5_1", "u5_2", "u6_1", "u6_2"}) {
        double eps = (name[1] == '5') ? 1.0 : 0.1;
        Bindings params{{"c", 0.0}, {"eps", eps}};
        auto rep = residual_alpha_time(catalog_entry(name), kXGrid, kTGrid, params);
        double heat = cole_hopf_residual(catalog_entry(name), kXGrid, kTGrid, params);
        worst_pde = std::max(worst_pde, rep.max_abs);
        worst_heat = std::max(worst_heat, heat);
    }
    ok = worst_pde <= 1e-10 && worst_heat <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "alpha-time residuals <= %.2e and Cole-Hopf heat residuals <= %.2e on 50x50 "
                  "grids (tol 1e-10)",
                  worst_pde, worst_heat);
    report(4, ok, buf);
}

void criterion_5_iteration_identities() {
    bool ok = true;
    Solution seed{"c", parse("c"), ""};
    std::mt19937 rng(305);
    std::uniform_real_distribution<double> dx(0.0, 2.0), dT(0.1, 2.0), dc(-1.0, 1.0),
        de(0.02, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double eps = de(rng);
        Bindings b{{"x", dx(rng)}, {"T", dT(rng)}, {"c", dc(rng)}, {"eps", eps}};
        Solution it5 = iterate_transform({GroupKind::g5, eps, nullptr}, seed, 2);
        Solution it6 = iterate_transform({GroupKind::g6, eps, nullptr}, seed, 2);
        worst = std::max(worst,
                         std::abs(eval(it5.expr, b) - eval(catalog_entry("u5_2").expr, b)));
        worst = std::max(worst,
                         std::abs(eval(it6.expr, b) - eval(catalog_entry("u6_2").expr, b)));
    }
    ok = ok && worst <= 1e-10;

    // alpha = 1: substituting T = t in the two-step g6 solution gives the
    // classical iteration form c - 2 eps x^2/(1+8 eps t) - (1/2) log(1+8 eps t)
    Expr reduced = substitute(catalog_entry("u6_2").expr, {{"T", var("t")}});
    Expr classical = parse("c - 2*eps*x^2/(1 + 8*eps*t) - 1/2*log(1 + 8*eps*t)");
    double worst_cl = 0.0;
    for (int i = 0; i < 100; ++i) {
        Bindings b{{"x", dx(rng)}, {"t", dT(rng)}, {"c", dc(rng)}, {"eps", de(rng)}};
        worst_cl = std::max(worst_cl, std::abs(eval(reduced, b) - eval(classical, b)));
    }
    ok = ok && worst_cl <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "two-step iterations match closed forms to %.2e (tol 1e-10); alpha=1 "
                  "reduction matches the classical form to %.2e (tol 1e-12)",
                  worst, worst_cl);
    report(5, ok, buf);
}

void criterion_6_quadrature_convergence() {
    bool ok = true;
    // the L1 scheme reproduces f = t exactly (the weights telescope), so the
    // order is measured on f = t^2; exactness on f = t is asserted outright
    std::string slopes;
    for (double alpha : {0.25, 0.5, 0.75}) {
        std::vector<double> hs, errs;
        for (int n : {64, 128, 256, 512, 1024}) {
            TimeGrid g(1.0, n);
            GridFn f = sample(g, [](double t) { return t * t; });
            GridFn df = mrl_deriv(f, alpha);
            double coeff = power_law_coeff(alpha, 2.0);
            double worst = 0.0;
            for (int k = 0; k <= n; ++k)
                worst = std::max(worst, std::abs(df.values[k] -
                                                 coeff * std::pow(g.node(k), 2 - alpha)));
            hs.push_back(g.h());
            errs.push_back(worst);

            GridFn lin = sample(g, [](double t) { return t; });
            GridFn dl = mrl_deriv(lin, alpha);
            double cl = power_law_coeff(alpha, 1.0);
            for (int k = 0; k <= n; ++k)
                ok = ok && std::abs(dl.values[k] - cl * std::pow(g.node(k), 1 - alpha)) <= 1e-12;
        }
        double slope = loglog_slope(hs, errs);
        ok = ok && std::abs(slope - (2.0 - alpha)) <= 0.25;
        char sb[48];
        std::snprintf(sb, sizeof(sb), " %.3f/%.2f", slope, 2.0 - alpha);
        slopes += sb;
    }
    TimeGrid g(1.0, 512);
    GridFn lin = sample(g, [](double t) { return t; });
    double terminal = mrl_deriv(lin, 0.5).values[512];
    ok = ok && std::abs(terminal - 1.1283792) <= 3e-3;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "L1 slopes on t^2 (measured/target):%s (tol 0.25); f=t exact to 1e-12; "
                  "D^0.5 t at t=1 is %.7f (ref 1.1283792, tol 3e-3)",
                  slopes.c_str(), terminal);
    report(6, ok, buf);
}

void criterion_7_direct_quadrature_residuals() {
    bool ok = true;
    const GridSpec xg{0.0, 2.0, 11};
    char detail[240];
    double r512_u51 = 0, r512_u52 = 0;
    for (const char* name : {"u5_1", "u5_2"}) {
        Bindings params{{"c", 0.0}, {"eps", 1.0}};
        double prev = 1e300;
        for (int n : {256, 512, 1024}) {
            auto rep = residual_direct(catalog_entry(name), 0.5, xg, TimeGrid(1.0, n), params,
                                       0.1);
            ok = ok && rep.max_abs < prev;
            prev = rep.max_abs;
            if (n == 512) {
                ok = ok && rep.max_abs <= 5e-3;
                (name[3] == '1' ? r512_u51 : r512_u52) = rep.max_abs;
            }
        }
    }
    Bindings params6{{"c", 0.0}, {"eps", 0.1}};
    auto r512 = residual_direct(catalog_entry("u6_1"), 0.5, xg, TimeGrid(1.0, 512), params6,
                                0.1);
    auto r1024 = residual_direct(catalog_entry("u6_1"), 0.5, xg, TimeGrid(1.0, 1024), params6,
                                 0.1);
    double v512 = std::abs(r512.value_near(1.0, 1.0));
    double v1024 = std::abs(r1024.value_near(1.0, 1.0));
    bool stabilizes = v512 >= 1e-3 && std::abs(v1024 - v512) / v512 < 0.10;
    ok = ok && stabilizes;
    std::snprintf(detail, sizeof(detail),
                  "u5_1/u5_2 interior residuals %.2e/%.2e at n=512 (tol 5e-3, decreasing); "
                  "u6_1 residual at (1,1) stabilizes at %.2e (>= 1e-3, change %.2f%%)",
                  r512_u51, r512_u52, v512, 100.0 * std::abs(v1024 - v512) / v512);
    report(7, ok, detail);
}

void criterion_8_identity_probes() {
    bool ok = true;
    const double two_over_pi = 2.0 / 3.14159265358979323846;

    TimeGrid g1024(1.0, 1024);
    GridFn u = sample(g1024, [](double t) { return std::sqrt(t); });
    GridFn prod = sample(g1024, [](double t) { return t; });
    double lhs = mrl_deriv(prod, 0.5).values[1024];
    double rhs = 2.0 * u.values[1024] * mrl_deriv(u, 0.5).values[1024];
    double leibniz_ratio = lhs / rhs;
    ok = ok && std::abs(leibniz_ratio - two_over_pi) <= 1e-2;

    TimeGrid g512(1.0, 512);
    GridFn comp = sample(g512, [](double t) { return std::pow(t, 0.5) / gamma_fn(1.5); });
    GridFn sq = comp;
    for (int i = 0; i < g512.size(); ++i) sq.values[i] = comp.values[i] * comp.values[i];
    double chain_ratio = mrl_deriv(sq, 0.5).values[512] / (2.0 * comp.values[512]);
    ok = ok && std::abs(chain_ratio - two_over_pi) <= 1e-2;

    GridFn leib999 = probe_leibniz(u, u, 0.999);
    ok = ok && max_abs_from(leib999, 0.1) <= 1e-2;
    GridFn chain999 = probe_chain_rule(parse("T^2"), 0.999, g1024);
    ok = ok && max_abs_from(chain999, 0.1) <= 1e-2;

    GridFn sq512 = sample(g512, [](double t) { return t * t; });
    double nl512 = probe_newton_leibniz(sq512, 0.5);
    GridFn sq1024 = sample(g1024, [](double t) { return t * t; });
    double nl1024 = probe_newton_leibniz(sq1024, 0.5);
    ok = ok && nl512 <= 2e-2 && nl1024 < nl512;

    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "Leibniz/chain defect ratios %.7f/%.7f (ref 2/pi = %.7f, tol 1e-2); both "
                  "vanish at alpha=0.999; Newton-Leibniz defect %.2e at n=512 (tol 2e-2), "
                  "decreasing",
                  leibniz_ratio, chain_ratio, two_over_pi, nl512);
    report(8, ok, buf);
}

void criterion_9_characteristics() {
    bool ok = true;
    CharSystem sys;
    sys.a = parse("1");
    sys.b = parse("1");
    sys.c = parse("0");
    sys.alpha = 0.5;
    sys.beta = 1.0;
    sys.g = parse("x");

    auto point = solution_surface(sys, {1.0}, TimeGrid(1.0, 4), 1000);
    double u11 = point.at(0, 4);
    double expected = 1.0 - 1.0 / gamma_fn(1.5);
    ok = ok && std::abs(u11 - expected) <= 1e-8;

    std::vector<double> xs(257);
    for (int i = 0; i < 257; ++i) xs[i] = 2.0 * i / 256;
    auto surf = solution_surface(sys, xs, TimeGrid(1.0, 256), 200);
    double residual = verify_char_solution(sys, surf, 0.1);
    ok = ok && residual <= 1e-2;

    CharSystem adv;
    adv.a = parse("1");
    adv.b = parse("1");
    adv.c = parse("0");
    adv.alpha = 1.0;
    adv.beta = 1.0;
    adv.g = parse("x^2");
    std::vector<double> xs2(65);
    for (int i = 0; i < 65; ++i) xs2[i] = 2.0 * i / 64;
    auto asurf = solution_surface(adv, xs2, TimeGrid(1.0, 64), 400);
    double aresid = verify_char_solution(adv, asurf, 0.0);
    ok = ok && aresid <= 1e-8;

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "transport u(1,1) = %.7f (ref %.7f, tol 1e-8); PDE residual %.2e on 256x256 "
                  "(tol 1e-2); advection residual %.2e (tol 1e-8)",
                  u11, expected, residual, aresid);
    report(9, ok, buf);
}

void criterion_10_group_laws() {
    bool ok = true;
    std::mt19937 rng(310);
    std::uniform_real_distribution<double> dx(0.0, 2.0), dT(0.1, 2.0), du(-1.0, 1.0),
        de(-0.25, 0.25);
    double worst = 0.0;
    for (GroupKind k : {GroupKind::g1, GroupKind::g2, GroupKind::g3, GroupKind::g4,
                        GroupKind::g5, GroupKind::g6}) {
        for (int i = 0; i < 20; ++i) {
            Point p{dx(rng), dT(rng), du(rng)};
            double e1 = de(rng), e2 = de(rng);
            if (k == GroupKind::g6) {
                e1 = std::abs(e1) * 0.2;
                e2 = std::abs(e2) * 0.2;
            }
            Point two = apply_point({k, e2, nullptr}, apply_point({k, e1, nullptr}, p));
            Point once = apply_point({k, e1 + e2, nullptr}, p);
            worst = std::max({worst, std::abs(two.x - once.x), std::abs(two.T - once.T),
                              std::abs(two.u - once.u)});
            Point back = apply_point({k, -e1, nullptr}, apply_point({k, e1, nullptr}, p));
            worst = std::max({worst, std::abs(back.x - p.x), std::abs(back.T - p.T),
                              std::abs(back.u - p.u)});
        }
    }
    ok = worst <= 1e-10;
    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "one-parameter group law and inverses hold to %.2e (tol 1e-10) for g1..g6",
                  worst);
    report(10, ok, buf);
}

}  // namespace

int main() {
    criterion_1_symmetry_verification();
    criterion_2_lie_algebra();
    criterion_3_flow_equivalence();
    criterion_4_alpha_time_residuals();
    criterion_5_iteration_identities();
    criterion_6_quadrature_convergence();
    criterion_7_direct_quadrature_residuals();
    criterion_8_identity_probes();
    criterion_9_characteristics();
    criterion_10_group_laws();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
