// fracsym: batch verification front end. Every capability is a subcommand
// that writes a JSON report (sorted keys, fixed float format) plus CSV plot
// data. Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage
// error.

#include "CLI11.hpp"

#include "fracsym/characteristics.hpp"
#include "fracsym/expr.hpp"
#include "fracsym/fractional.hpp"
#include "fracsym/groups.hpp"
#include "fracsym/jet.hpp"
#include "fracsym/report.hpp"
#include "fracsym/symmetry.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

using namespace fracsym;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string out = ".";
    bool json = false;
    std::map<std::string, double> tol = {
        {"flow_match", 1e-8},        {"group_law", 1e-10},
        {"alpha_time_residual", 1e-10}, {"iterate_match", 1e-10},
        {"direct_u5_max", 5e-3},     {"direct_min_defect", 1e-3},
        {"direct_stabilize_rel", 0.10}, {"probe_ratio", 1e-2},
        {"probe_classical", 1e-2},   {"newton_leibniz", 2e-2},
        {"power_law_value", 3e-3},   {"char_value", 1e-8},
        {"char_residual", 1e-2},     {"advection_residual", 1e-8},
    };
    std::vector<std::string> tol_overrides;

    double tolerance(const std::string& name) const {
        auto it = tol.find(name);
        if (it == tol.end()) throw DomainError("unknown tolerance '" + name + "'");
        return it->second;
    }

    void apply_overrides() {
        for (const auto& s : tol_overrides) {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--tol", "expected NAME=VALUE, got '" + s + "'");
            std::string name = s.substr(0, eq);
            if (!tol.count(name))
                throw CLI::ValidationError("--tol", "unknown tolerance '" + name + "'");
            tol[name] = std::stod(s.substr(eq + 1));
        }
    }
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "output directory for JSON/CSV artifacts");
    cmd->add_flag("--json", opt.json, "print the JSON report to stdout");
    cmd->add_option("--tol", opt.tol_overrides, "override a named tolerance (NAME=VALUE)")
        ->take_all();
}

fs::path prepare_out(const Options& opt) {
    fs::path dir(opt.out);
    fs::create_directories(dir);
    return dir;
}

void emit(const Options& opt, const std::string& basename, const Json& report) {
    fs::path file = prepare_out(opt) / (basename + ".json");
    std::ofstream os(file);
    os << report.dump(2) << "\n";
    std::printf("report: %s\n", file.string().c_str());
    if (opt.json) std::printf("%s\n", report.dump(2).c_str());
}

void write_text(const Options& opt, const std::string& name, const std::string& content) {
    fs::path file = prepare_out(opt) / name;
    std::ofstream os(file);
    os << content;
}

struct GridArg {
    double lo = 0.0, hi = 1.0;
    int n = 50;
};

GridArg parse_grid(const std::string& s, const char* flag) {
    GridArg g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &g.lo, &g.hi, &g.n) != 3 || g.n < 2 ||
        !(g.hi > g.lo))
        throw CLI::ValidationError(flag, "expected lo:hi:n with n >= 2, got '" + s + "'");
    return g;
}

Json grid_json(const GridArg& g) {
    Json j = Json::object();
    j.set("lo", Json::number(g.lo));
    j.set("hi", Json::number(g.hi));
    j.set("n", Json::integer(g.n));
    return j;
}

Json rational_array(const std::array<Rational, 6>& a) {
    Json arr = Json::array();
    for (const auto& r : a) arr.push(Json::str(rational_str(r)));
    return arr;
}

// ---------------------------------------------------------------------------
// verify-symmetries
// ---------------------------------------------------------------------------

int run_verify_symmetries(const Options& opt, const std::string& v4, const std::string& sign) {
    V4Variant variant = v4 == "printed" ? V4Variant::printed : V4Variant::corrected;
    Eq28Sign eq28 = sign == "plus" ? Eq28Sign::plus : Eq28Sign::minus;

    std::vector<VectorField> fields = basis(variant);
    for (const char* k : {"1", "x", "x^2/2 + T", "x^3/6 + x*T"})
        fields.push_back(vk_field(jet_parse(k)));
    for (int i = 0; i < 6; ++i) {
        std::array<Rational, 6> cs{};
        cs[i] = 1;
        VectorField f = infinitesimal_family(cs, eq28);
        f.name = "family(c" + std::to_string(i + 1) + ")";
        fields.push_back(f);
    }

    Json checks = Json::array();
    bool all_zero = true;
    for (const auto& V : fields) {
        JetPoly defect = symmetry_defect(V);
        bool zero = defect.is_zero();
        all_zero = all_zero && zero;
        Json row = Json::object();
        row.set("field", Json::str(V.name));
        row.set("defect_canonical_text", Json::str(defect.str()));
        row.set("is_symmetry", Json::boolean(zero));
        checks.push(std::move(row));
        std::printf("%-14s defect = %s\n", V.name.c_str(), zero ? "0" : defect.str().c_str());
    }

    Json report = Json::object();
    Json config = Json::object();
    config.set("v4", Json::str(v4));
    config.set("eq28_sign", Json::str(sign));
    report.set("config", std::move(config));
    report.set("checks", std::move(checks));
    report.set("all_symmetries", Json::boolean(all_zero));
    emit(opt, "symmetries", report);
    std::printf(all_zero ? "all fields are symmetries\n"
                         : "nonzero defect found (expected under printed/plus variants)\n");
    return all_zero ? 0 : 1;
}

// ---------------------------------------------------------------------------
// commutators
// ---------------------------------------------------------------------------

int run_commutators(const Options& opt, const std::string& v4, bool compare) {
    V4Variant variant = v4 == "printed" ? V4Variant::printed : V4Variant::corrected;
    auto b = basis(variant);
    StructureTable t = structure_table(b);

    bool antisym = true;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k)
                antisym = antisym && t.entry[i][j].coeff[k] == -t.entry[j][i].coeff[k];
    bool jacobi = true;
    for (const auto& V : b)
        for (const auto& W : b)
            for (const auto& Z : b) {
                VectorField s1 = bracket(V, bracket(W, Z));
                VectorField s2 = bracket(W, bracket(Z, V));
                VectorField s3 = bracket(Z, bracket(V, W));
                jacobi = jacobi && (s1.xi + s2.xi + s3.xi).is_zero() &&
                         (s1.tau + s2.tau + s3.tau).is_zero() &&
                         (s1.phi + s2.phi + s3.phi).is_zero();
            }

    PaperComparison cmp = compare_to_paper(t);

    Json entries = Json::array();
    for (const auto& e : cmp.entries) {
        std::string pair = "[V" + std::to_string(e.i) + ",V" + std::to_string(e.j) + "]";
        Json row = Json::object();
        row.set("pair", Json::str(pair));
        row.set("coefficients", rational_array(e.computed));
        if (compare) {
            row.set("printed_coefficients", rational_array(e.printed));
            row.set("matches_paper", Json::boolean(e.matches_flipped));
            row.set("convention",
                    Json::str(e.matches_identity && e.matches_flipped ? "zero"
                              : e.matches_flipped                     ? "global-sign-flipped"
                              : e.matches_identity                    ? "identity"
                                                                      : "mismatch"));
        }
        entries.push(std::move(row));
        std::string coeffs;
        for (int k = 0; k < 6; ++k) {
            if (e.computed[k] == 0) continue;
            if (!coeffs.empty()) coeffs += " + ";
            coeffs += rational_str(e.computed[k]) + "*V" + std::to_string(k + 1);
        }
        bool entry_closed = t.entry[e.i - 1][e.j - 1].closed;
        std::printf("%-9s = %s%s\n", pair.c_str(), coeffs.empty() ? "0" : coeffs.c_str(),
                    entry_closed ? "" : "  [not in the span]");
    }

    Json report = Json::object();
    report.set("v4", Json::str(v4));
    report.set("closed", Json::boolean(t.closed()));
    report.set("antisymmetry", Json::boolean(antisym));
    report.set("jacobi", Json::boolean(jacobi));
    report.set("entries", std::move(entries));
    bool ok = t.closed() && antisym && jacobi;
    if (compare) {
        report.set("convention", Json::str(convention_name(cmp.convention)));
        report.set("zero_entries_exact", Json::boolean(cmp.zero_entries_exact));
        std::printf("convention: %s\n", convention_name(cmp.convention));
        ok = ok && cmp.convention == BracketConvention::global_sign_flipped &&
             cmp.zero_entries_exact;
    }
    emit(opt, "commutators", report);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

int run_flow(const Options& opt, const std::string& field, double eps, int steps,
             const std::string& point) {
    auto b = basis();
    const GroupKind kinds[] = {GroupKind::g1, GroupKind::g2, GroupKind::g3,
                               GroupKind::g4, GroupKind::g5, GroupKind::g6};
    std::vector<int> which;
    if (field == "all") {
        which = {0, 1, 2, 3, 4, 5};
    } else {
        for (int i = 0; i < 6; ++i)
            if (field == b[i].name) which.push_back(i);
        if (which.empty()) throw CLI::ValidationError("--field", "expected V1..V6 or all");
    }

    std::vector<Point> points;
    if (!point.empty()) {
        Point p;
        if (std::sscanf(point.c_str(), "%lf,%lf,%lf", &p.x, &p.T, &p.u) != 3)
            throw CLI::ValidationError("--point", "expected x,T,u");
        points.push_back(p);
    } else {
        std::mt19937 rng(301);
        std::uniform_real_distribution<double> dx(0.0, 2.0), dT(0.1, 2.0), du(-1.0, 1.0);
        for (int i = 0; i < 20; ++i) points.push_back({dx(rng), dT(rng), du(rng)});
    }

    const double tol = opt.tolerance("flow_match");
    Json rows = Json::array();
    double worst_all = 0.0;
    for (int f : which) {
        double worst = 0.0;
        for (const Point& p : points) {
            Point numeric = flow(b[f], eps, p, steps);
            Point closed = apply_point({kinds[f], eps, nullptr}, p);
            worst = std::max({worst, std::abs(numeric.x - closed.x),
                              std::abs(numeric.T - closed.T), std::abs(numeric.u - closed.u)});
        }
        worst_all = std::max(worst_all, worst);
        Json row = Json::object();
        row.set("field", Json::str(b[f].name));
        row.set("closed_form", Json::str(group_kind_name(kinds[f])));
        row.set("max_error", Json::number(worst));
        row.set("within_tolerance", Json::boolean(worst <= tol));
        rows.push(std::move(row));
        std::printf("%s vs %s: max |flow - closed form| = %s\n", b[f].name.c_str(),
                    group_kind_name(kinds[f]), fmt17(worst).c_str());
    }

    Json report = Json::object();
    report.set("eps", Json::number(eps));
    report.set("steps", Json::integer(steps));
    report.set("points", Json::integer(static_cast<std::int64_t>(points.size())));
    report.set("tolerance", Json::number(tol));
    report.set("fields", std::move(rows));
    report.set("max_error", Json::number(worst_all));
    emit(opt, "flow", report);
    return worst_all <= tol ? 0 : 1;
}

// ---------------------------------------------------------------------------
// transform / iterate
// ---------------------------------------------------------------------------

Solution seed_solution(const std::string& name) {
    if (name == "c") return Solution{"c", parse("c"), "trivial constant"};
    return catalog_entry(name);
}

Bindings seed_params(const std::string& seed, double c_val, double seed_eps) {
    Bindings b{{"c", c_val}};
    if (seed != "c") b["eps"] = seed_eps > 0 ? seed_eps : (seed[1] == '5' ? 1.0 : 0.1);
    if (seed == "c" && seed_eps > 0) b["eps"] = seed_eps;
    return b;
}

int run_transform(const Options& opt, const std::string& g_name, const std::string& seed,
                  double eps, const std::string& k_text, double c_val, double seed_eps,
                  int iterations) {
    GroupKind kind = group_kind_from_name(g_name);
    GroupElement g{kind, eps, kind == GroupKind::g_alpha ? parse(k_text) : nullptr};
    Solution f = seed_solution(seed);
    Solution moved = iterations == 1 ? transform_solution(g, f)
                                     : iterate_transform(g, f, iterations);

    std::printf("%s\n", to_string(moved.expr).c_str());

    Bindings params = seed_params(seed, c_val, seed_eps);
    // stay inside the g2/g6 domains when the transform shifts T
    GridSpec Tg{0.1 + (kind == GroupKind::g2 ? std::max(0.0, eps) : 0.0), 2.0, 50};
    auto rep = residual_alpha_time(moved, {0.0, 2.0, 50}, Tg, params);
    const double tol = opt.tolerance("alpha_time_residual");
    std::printf("alpha-time residual: %s (tol %s)\n", fmt17(rep.max_abs).c_str(),
                fmt17(tol).c_str());

    std::ostringstream csv;
    rep.write_csv(csv);
    std::string csv_name = (iterations == 1 ? "transform_" : "iterate_") + moved.name + ".csv";
    for (auto& ch : csv_name)
        if (ch == '(' || ch == ')' || ch == '*' || ch == '/') ch = '_';
    write_text(opt, csv_name, csv.str());

    Json report = Json::object();
    report.set("group", Json::str(g.name()));
    report.set("eps", Json::number(eps));
    report.set("iterations", Json::integer(iterations));
    report.set("seed", Json::str(seed));
    report.set("expression", Json::str(to_string(moved.expr)));
    report.set("provenance", Json::str(moved.provenance));
    report.set("max_residual", Json::number(rep.max_abs));
    report.set("csv_path", Json::str(csv_name));
    bool ok = rep.max_abs <= tol;

    // the published two-step forms are pinned; check when they apply
    if (iterations == 2 && seed == "c" &&
        (kind == GroupKind::g5 || kind == GroupKind::g6)) {
        const Solution& ref = catalog_entry(kind == GroupKind::g5 ? "u5_2" : "u6_2");
        std::mt19937 rng(305);
        std::uniform_real_distribution<double> dx(0.0, 2.0), dT(0.1, 2.0), dc(-1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            Bindings b{{"x", dx(rng)}, {"T", dT(rng)}, {"c", dc(rng)}, {"eps", eps}};
            worst = std::max(worst, std::abs(eval(moved.expr, {{"x", b["x"]},
                                                               {"T", b["T"]},
                                                               {"c", b["c"]}}) -
                                             eval(ref.expr, b)));
        }
        double itol = opt.tolerance("iterate_match");
        report.set("matches_catalog", Json::boolean(worst <= itol));
        report.set("catalog_reference", Json::str(ref.name));
        report.set("catalog_max_difference", Json::number(worst));
        std::printf("matches %s to %s (tol %s)\n", ref.name.c_str(), fmt17(worst).c_str(),
                    fmt17(itol).c_str());
        ok = ok && worst <= itol;
    }
    emit(opt, iterations == 1 ? "transform" : "iterate", report);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// residual
// ---------------------------------------------------------------------------

int run_residual(const Options& opt, const std::string& solution, const std::string& semantics,
                 double alpha, double eps, double c_val, const GridArg& gx, const GridArg& gt) {
    const Solution& f = catalog_entry(solution);
    Bindings params{{"c", c_val}, {"eps", eps}};
    bool u5_family = solution[1] == '5';
    bool ok = true;
    Json report = Json::object();
    report.set("solution", Json::str(solution));
    report.set("semantics", Json::str(semantics));
    report.set("alpha", Json::number(alpha));
    report.set("eps", Json::number(eps));
    report.set("c", Json::number(c_val));
    Json grid = Json::object();
    grid.set("x", grid_json(gx));
    grid.set("t", grid_json(gt));
    report.set("grid", std::move(grid));

    if (semantics == "alpha-time" || semantics == "both") {
        GridSpec xg{gx.lo, gx.hi, gx.n};
        GridSpec Tg{std::max(gt.lo, 0.1), gt.hi, gt.n};
        auto rep = residual_alpha_time(f, xg, Tg, params);
        double tol = opt.tolerance("alpha_time_residual");
        std::ostringstream csv;
        rep.write_csv(csv);
        std::string csv_name = "residual_" + solution + "_alpha_time.csv";
        write_text(opt, csv_name, csv.str());
        Json j = Json::object();
        j.set("max_residual", Json::number(rep.max_abs));
        j.set("tolerance", Json::number(tol));
        j.set("converged", Json::boolean(rep.max_abs <= tol));
        j.set("csv_path", Json::str(csv_name));
        report.set("alpha_time", std::move(j));
        std::printf("alpha-time max residual: %s (tol %s)\n", fmt17(rep.max_abs).c_str(),
                    fmt17(tol).c_str());
        ok = ok && rep.max_abs <= tol;
    }

    if (semantics == "direct" || semantics == "both") {
        if (gt.lo != 0.0)
            throw CLI::ValidationError("--grid-t", "direct semantics requires a t-grid from 0");
        GridSpec xg{gx.lo, gx.hi, gx.n};
        const double t_min = 0.1 * gt.hi;
        auto rep1 = residual_direct(f, alpha, xg, TimeGrid(gt.hi, gt.n), params, t_min);
        auto rep2 = residual_direct(f, alpha, xg, TimeGrid(gt.hi, 2 * gt.n), params, t_min);
        std::ostringstream csv;
        rep1.write_csv(csv);
        std::string csv_name = "residual_" + solution + "_direct.csv";
        write_text(opt, csv_name, csv.str());

        Json j = Json::object();
        j.set("interior_t_min", Json::number(t_min));
        j.set("max_residual", Json::number(rep1.max_abs));
        j.set("max_residual_refined", Json::number(rep2.max_abs));
        j.set("csv_path", Json::str(csv_name));
        bool behaved;
        if (u5_family) {
            // T-linear solutions: quadrature-limited, shrinking residual
            double tol = opt.tolerance("direct_u5_max");
            behaved = rep1.max_abs <= tol && rep2.max_abs < rep1.max_abs;
            j.set("expected_behavior", Json::str("converges to zero"));
            j.set("tolerance", Json::number(tol));
            std::printf("direct max residual: %s -> %s under refinement (tol %s)\n",
                        fmt17(rep1.max_abs).c_str(), fmt17(rep2.max_abs).c_str(),
                        fmt17(tol).c_str());
        } else {
            // chain-rule defect: stabilizes at a nonzero field
            double vmin = opt.tolerance("direct_min_defect");
            double rel = opt.tolerance("direct_stabilize_rel");
            double v1 = std::abs(rep1.value_near(1.0, gt.hi));
            double v2 = std::abs(rep2.value_near(1.0, gt.hi));
            behaved = v1 >= vmin && std::abs(v2 - v1) / v1 < rel;
            j.set("expected_behavior", Json::str("stabilizes at a nonzero defect"));
            j.set("defect_at_x1_tend", Json::number(v1));
            j.set("defect_at_x1_tend_refined", Json::number(v2));
            std::printf("direct defect at (1, t_end): %s -> %s under refinement "
                        "(min %s, rel change < %s)\n",
                        fmt17(v1).c_str(), fmt17(v2).c_str(), fmt17(vmin).c_str(),
                        fmt17(rel).c_str());
        }
        j.set("converged", Json::boolean(behaved));
        report.set("direct_quadrature", std::move(j));
        ok = ok && behaved;
    }

    emit(opt, "residual_" + solution, report);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

int run_probe(const Options& opt, const std::string& which, double alpha, double beta,
              const GridArg& gt, const std::string& outer_text) {
    if (gt.lo != 0.0) throw CLI::ValidationError("--grid-t", "probes require a t-grid from 0");
    TimeGrid g(gt.hi, gt.n);
    const double two_over_pi = 2.0 / 3.14159265358979323846;
    Json report = Json::object();
    report.set("probe", Json::str(which));
    report.set("alpha", Json::number(alpha));
    Json gj = grid_json(gt);
    report.set("grid_t", std::move(gj));
    bool ok = true;

    if (which == "leibniz") {
        GridFn u = sample(g, [](double t) { return std::sqrt(t); });
        GridFn defect = probe_leibniz(u, u, alpha);
        std::ostringstream csv;
        write_csv(defect, csv);
        write_text(opt, "probe_leibniz.csv", csv.str());
        report.set("csv_path", Json::str("probe_leibniz.csv"));
        report.set("test_functions", Json::str("u = v = t^(1/2)"));
        double interior = max_abs_from(defect, 0.1 * gt.hi);
        report.set("max_interior_defect", Json::number(interior));
        if (alpha >= 0.99) {
            double tol = opt.tolerance("probe_classical");
            ok = interior <= tol;
            report.set("classical_limit_tolerance", Json::number(tol));
            std::printf("leibniz defect at alpha=%g: %s (classical tol %s)\n", alpha,
                        fmt17(interior).c_str(), fmt17(tol).c_str());
        } else {
            GridFn prod = sample(g, [](double t) { return t; });
            double lhs = mrl_deriv(prod, alpha).values[g.n];
            double rhs = 2.0 * u.values[g.n] * mrl_deriv(u, alpha).values[g.n];
            double ratio = lhs / rhs;
            report.set("lhs_terminal", Json::number(lhs));
            report.set("rhs_terminal", Json::number(rhs));
            report.set("ratio", Json::number(ratio));
            std::printf("D^a(uv) / (D^a(u) v + u D^a(v)) at t=%g: %s\n", gt.hi,
                        fmt17(ratio).c_str());
            if (alpha == 0.5) {
                double tol = opt.tolerance("probe_ratio");
                ok = std::abs(ratio - two_over_pi) <= tol;
                report.set("reference_ratio", Json::number(two_over_pi));
                std::printf("reference 2/pi = %s (tol %s)\n", fmt17(two_over_pi).c_str(),
                            fmt17(tol).c_str());
            }
        }
    } else if (which == "chain") {
        Expr outer = parse(outer_text);
        GridFn defect = probe_chain_rule(outer, alpha, g);
        std::ostringstream csv;
        write_csv(defect, csv);
        write_text(opt, "probe_chain.csv", csv.str());
        report.set("csv_path", Json::str("probe_chain.csv"));
        report.set("outer", Json::str(outer_text));
        double interior = max_abs_from(defect, 0.1 * gt.hi);
        report.set("max_interior_defect", Json::number(interior));
        if (alpha >= 0.99) {
            double tol = opt.tolerance("probe_classical");
            ok = interior <= tol;
            report.set("classical_limit_tolerance", Json::number(tol));
            std::printf("chain-rule defect at alpha=%g: %s (classical tol %s)\n", alpha,
                        fmt17(interior).c_str(), fmt17(tol).c_str());
        } else if (alpha == 0.5 && outer_text == "T^2") {
            const double gn = gamma_fn(1.5);
            GridFn comp = sample(g, [&](double t) { return std::pow(t, alpha) / gn; });
            GridFn sq = comp;
            for (int i = 0; i < g.size(); ++i) sq.values[i] = comp.values[i] * comp.values[i];
            double ratio = mrl_deriv(sq, alpha).values[g.n] / (2.0 * comp.values[g.n]);
            report.set("ratio", Json::number(ratio));
            report.set("reference_ratio", Json::number(two_over_pi));
            double tol = opt.tolerance("probe_ratio");
            ok = std::abs(ratio - two_over_pi) <= tol;
            std::printf("measured/claimed at t=%g: %s, reference 2/pi = %s (tol %s)\n", gt.hi,
                        fmt17(ratio).c_str(), fmt17(two_over_pi).c_str(), fmt17(tol).c_str());
        } else {
            std::printf("chain-rule max interior defect: %s\n", fmt17(interior).c_str());
        }
    } else if (which == "newton-leibniz") {
        GridFn f = sample(g, [](double t) { return t * t; });
        double defect = probe_newton_leibniz(f, alpha);
        TimeGrid g2(gt.hi, 2 * gt.n);
        double refined = probe_newton_leibniz(sample(g2, [](double t) { return t * t; }), alpha);
        report.set("test_function", Json::str("f = t^2"));
        report.set("defect", Json::number(defect));
        report.set("defect_refined", Json::number(refined));
        double tol = opt.tolerance("newton_leibniz");
        report.set("tolerance", Json::number(tol));
        ok = defect <= tol && refined < defect;
        std::printf("Newton-Leibniz defect: %s -> %s under refinement (tol %s)\n",
                    fmt17(defect).c_str(), fmt17(refined).c_str(), fmt17(tol).c_str());
    } else if (which == "power-law") {
        double coeff = power_law_coeff(alpha, beta);
        report.set("beta", Json::number(beta));
        report.set("coefficient", Json::number(coeff));
        std::printf("D^%g t^%g = %s * t^%g\n", alpha, beta, fmt17(coeff).c_str(), beta - alpha);
        GridFn f = sample(g, [&](double t) { return std::pow(t, beta); });
        GridFn df = mrl_deriv(f, alpha);
        double terminal = df.values[g.n];
        double oracle = coeff * std::pow(gt.hi, beta - alpha);
        report.set("terminal_value", Json::number(terminal));
        report.set("terminal_oracle", Json::number(oracle));
        std::printf("quadrature at t=%g: %s vs closed form %s\n", gt.hi,
                    fmt17(terminal).c_str(), fmt17(oracle).c_str());
        if (beta == 1.0) {
            double tol = opt.tolerance("power_law_value");
            ok = std::abs(terminal - oracle) <= tol;
            report.set("tolerance", Json::number(tol));
        }
    } else {
        throw CLI::ValidationError("probe", "expected leibniz|chain|newton-leibniz|power-law");
    }
    report.set("passed", Json::boolean(ok));
    emit(opt, "probe_" + which, report);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// characteristics
// ---------------------------------------------------------------------------

int run_characteristics(const Options& opt, const std::string& a_text,
                        const std::string& b_text, const std::string& c_text, double alpha,
                        double beta, const std::string& g_text, const GridArg& launch,
                        double s_max, int steps, bool degenerate, bool verify,
                        const GridArg& gx, const GridArg& gt) {
    CharSystem sys;
    sys.a = parse(a_text);
    sys.b = parse(b_text);
    sys.c = parse(c_text);
    sys.alpha = alpha;
    sys.beta = beta;
    sys.g = parse(g_text);
    sys.degenerate_time = degenerate;

    std::vector<double> launch_x(launch.n);
    for (int i = 0; i < launch.n; ++i)
        launch_x[i] = launch.lo + (launch.hi - launch.lo) * i / (launch.n - 1);
    auto trajectories = solve_characteristics(sys, launch_x, s_max, steps);
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        std::ostringstream csv;
        write_trajectory_csv(trajectories[i], csv);
        char name[64];
        std::snprintf(name, sizeof(name), "characteristic_%03zu.csv", i);
        write_text(opt, name, csv.str());
    }
    std::printf("%zu characteristics integrated to s = %g (%d steps)\n", trajectories.size(),
                s_max, steps);

    Json report = Json::object();
    report.set("a", Json::str(a_text));
    report.set("b", Json::str(b_text));
    report.set("c", Json::str(c_text));
    report.set("g", Json::str(g_text));
    report.set("alpha", Json::number(alpha));
    report.set("beta", Json::number(beta));
    report.set("s_max", Json::number(s_max));
    report.set("steps", Json::integer(steps));
    report.set("trajectories", Json::integer(static_cast<std::int64_t>(trajectories.size())));
    bool ok = true;

    if (verify) {
        std::vector<double> xs(gx.n);
        for (int i = 0; i < gx.n; ++i) xs[i] = gx.lo + (gx.hi - gx.lo) * i / (gx.n - 1);
        if (gt.lo != 0.0)
            throw CLI::ValidationError("--grid-t", "verification requires a t-grid from 0");
        auto surface = solution_surface(sys, xs, TimeGrid(gt.hi, gt.n), steps);
        std::ostringstream csv;
        write_surface_csv(surface, csv);
        write_text(opt, "characteristics_surface.csv", csv.str());
        double t_min = (alpha == 1.0 && beta == 1.0) ? 0.0 : 0.1 * gt.hi;
        double residual = verify_char_solution(sys, surface, t_min);
        double tol = (alpha == 1.0 && beta == 1.0) ? opt.tolerance("advection_residual")
                                                   : opt.tolerance("char_residual");
        Json v = Json::object();
        v.set("surface_csv", Json::str("characteristics_surface.csv"));
        v.set("interior_t_min", Json::number(t_min));
        v.set("max_residual", Json::number(residual));
        v.set("tolerance", Json::number(tol));
        v.set("passed", Json::boolean(residual <= tol));
        report.set("verification", std::move(v));
        std::printf("PDE residual on %dx%d grid: %s (tol %s)\n", gx.n, gt.n,
                    fmt17(residual).c_str(), fmt17(tol).c_str());
        ok = residual <= tol;
    }
    emit(opt, "characteristics", report);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

int run_catalog(const Options& opt) {
    Json entries = Json::array();
    for (const auto& s : catalog()) {
        Json row = Json::object();
        row.set("name", Json::str(s.name));
        row.set("expression", Json::str(to_string(s.expr)));
        row.set("provenance", Json::str(s.provenance));
        entries.push(std::move(row));
        std::printf("%-12s %s\n", s.name.c_str(), to_string(s.expr).c_str());
    }
    Json report = Json::object();
    report.set("solutions", std::move(entries));
    emit(opt, "catalog", report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracsym: Lie symmetry verification for the time-fractional potential "
                 "Burgers equation u_t^(a) = u_xx + u_x^2 in alpha-time coordinates"};
    app.require_subcommand(1);
    Options opt;

    std::string v4 = "corrected", eq28 = "minus";
    auto* cmd_sym = app.add_subcommand(
        "verify-symmetries", "exact symmetry defects for the basis, V_k profiles, and family");
    cmd_sym->add_option("--v4", v4, "V4 variant: corrected | printed")
        ->check(CLI::IsMember({"corrected", "printed"}));
    cmd_sym->add_option("--eq28-sign", eq28, "sign of the 2 c6 T term: minus | plus")
        ->check(CLI::IsMember({"minus", "plus"}));
    add_common(cmd_sym, opt);

    bool compare_paper = false;
    std::string v4c = "corrected";
    auto* cmd_comm = app.add_subcommand("commutators", "bracket table and structure constants");
    cmd_comm->add_flag("--compare-paper", compare_paper,
                       "match against the published table and report the convention");
    cmd_comm->add_option("--v4", v4c, "V4 variant: corrected | printed")
        ->check(CLI::IsMember({"corrected", "printed"}));
    add_common(cmd_comm, opt);

    std::string flow_field = "all", flow_point;
    double flow_eps = 0.1;
    int flow_steps = 1000;
    auto* cmd_flow =
        app.add_subcommand("flow", "RK4 characteristic flow against the closed-form actions");
    cmd_flow->add_option("--field", flow_field, "V1..V6 or all");
    cmd_flow->add_option("--eps", flow_eps, "group parameter");
    cmd_flow->add_option("--steps", flow_steps, "RK4 step count")->check(CLI::PositiveNumber);
    cmd_flow->add_option("--point", flow_point, "start point x,T,u (default: 20 random points)");
    add_common(cmd_flow, opt);

    std::string tr_g = "g5", tr_seed = "c", tr_k = "x";
    double tr_eps = 0.1, tr_c = 0.0, tr_seed_eps = -1.0;
    auto* cmd_tr = app.add_subcommand("transform", "apply a one-parameter group to a solution");
    cmd_tr->add_option("--g", tr_g, "g1..g6 or g_alpha");
    cmd_tr->add_option("--solution", tr_seed, "seed: c or a catalog name");
    cmd_tr->add_option("--eps", tr_eps, "group parameter");
    cmd_tr->add_option("--k", tr_k, "heat profile k(x,T) for g_alpha");
    cmd_tr->add_option("--c", tr_c, "value bound to the free constant c");
    cmd_tr->add_option("--seed-eps", tr_seed_eps, "value bound to the seed's eps parameter");
    add_common(cmd_tr, opt);

    std::string it_g = "g5", it_seed = "c", it_k = "x";
    double it_eps = 0.1, it_c = 0.0, it_seed_eps = -1.0;
    int it_n = 2;
    auto* cmd_it = app.add_subcommand("iterate", "n-fold group application");
    cmd_it->add_option("--g", it_g, "g1..g6 or g_alpha");
    cmd_it->add_option("--solution", it_seed, "seed: c or a catalog name");
    cmd_it->add_option("--n", it_n, "iteration count")->check(CLI::NonNegativeNumber);
    cmd_it->add_option("--eps", it_eps, "group parameter");
    cmd_it->add_option("--k", it_k, "heat profile k(x,T) for g_alpha");
    cmd_it->add_option("--c", it_c, "value bound to the free constant c");
    cmd_it->add_option("--seed-eps", it_seed_eps, "value bound to the seed's eps parameter");
    add_common(cmd_it, opt);

    std::string res_solution = "u5_1", res_semantics = "both";
    double res_alpha = 0.5, res_eps = -1.0, res_c = 0.0;
    std::string res_gx = "0:2:11", res_gt = "0:1:512";
    auto* cmd_res = app.add_subcommand("residual", "PDE residuals in both semantics");
    cmd_res->add_option("--solution", res_solution, "u5_1 | u5_2 | u6_1 | u6_2")
        ->check(CLI::IsMember({"u5_1", "u5_2", "u6_1", "u6_2"}));
    cmd_res->add_option("--semantics", res_semantics, "alpha-time | direct | both")
        ->check(CLI::IsMember({"alpha-time", "direct", "both"}));
    cmd_res->add_option("--alpha", res_alpha, "fractional order")
        ->check(CLI::Range(1e-6, 0.999999));
    cmd_res->add_option("--eps", res_eps, "eps parameter (default 1 for u5, 0.1 for u6)");
    cmd_res->add_option("--c", res_c, "c parameter");
    cmd_res->add_option("--grid-x", res_gx, "x grid lo:hi:n");
    cmd_res->add_option("--grid-t", res_gt, "t grid 0:hi:n");
    add_common(cmd_res, opt);

    std::string probe_kind, probe_outer = "T^2", probe_gt = "0:1:1024";
    double probe_alpha = 0.5, probe_beta = 1.0;
    auto* cmd_probe = app.add_subcommand("probe", "quantify the fractional identities");
    cmd_probe->add_option("kind", probe_kind, "leibniz | chain | newton-leibniz | power-law")
        ->required()
        ->check(CLI::IsMember({"leibniz", "chain", "newton-leibniz", "power-law"}));
    cmd_probe->add_option("--alpha", probe_alpha, "fractional order")
        ->check(CLI::Range(1e-6, 0.999999));
    cmd_probe->add_option("--beta", probe_beta, "power-law exponent");
    cmd_probe->add_option("--outer", probe_outer, "outer function F(T) for the chain probe");
    cmd_probe->add_option("--grid-t", probe_gt, "t grid 0:hi:n");
    add_common(cmd_probe, opt);

    std::string ch_a = "1", ch_b = "1", ch_c = "0", ch_g = "x";
    double ch_alpha = 0.5, ch_beta = 1.0, ch_smax = 1.0;
    int ch_steps = 400;
    bool ch_degenerate = false, ch_verify = false;
    std::string ch_launch = "0:2:21", ch_gx = "0:2:257", ch_gt = "0:1:256";
    auto* cmd_ch = app.add_subcommand("characteristics",
                                      "fractional method of characteristics");
    cmd_ch->add_option("--a", ch_a, "coefficient a(x,t)");
    cmd_ch->add_option("--b", ch_b, "coefficient b(x,t)");
    cmd_ch->add_option("--c", ch_c, "source c(x,t)");
    cmd_ch->add_option("--alpha", ch_alpha, "time order in (0,1]")->check(CLI::Range(1e-6, 1.0));
    cmd_ch->add_option("--beta", ch_beta, "space order in (0,1]")->check(CLI::Range(1e-6, 1.0));
    cmd_ch->add_option("--g", ch_g, "initial profile g(x)");
    cmd_ch->add_option("--launch", ch_launch, "launch points lo:hi:n on t = 0");
    cmd_ch->add_option("--s-max", ch_smax, "characteristic parameter range");
    cmd_ch->add_option("--steps", ch_steps, "RK4 step count")->check(CLI::PositiveNumber);
    cmd_ch->add_flag("--degenerate-time", ch_degenerate, "freeze time (b = 0 systems)");
    cmd_ch->add_flag("--verify", ch_verify, "sample a surface and check the PDE residual");
    cmd_ch->add_option("--grid-x", ch_gx, "verification x grid lo:hi:n");
    cmd_ch->add_option("--grid-t", ch_gt, "verification t grid 0:hi:n");
    add_common(cmd_ch, opt);

    auto* cmd_cat = app.add_subcommand("catalog", "closed-form solution catalog");
    add_common(cmd_cat, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        opt.apply_overrides();
        if (app.got_subcommand(cmd_sym)) return run_verify_symmetries(opt, v4, eq28);
        if (app.got_subcommand(cmd_comm)) return run_commutators(opt, v4c, compare_paper);
        if (app.got_subcommand(cmd_flow))
            return run_flow(opt, flow_field, flow_eps, flow_steps, flow_point);
        if (app.got_subcommand(cmd_tr))
            return run_transform(opt, tr_g, tr_seed, tr_eps, tr_k, tr_c, tr_seed_eps, 1);
        if (app.got_subcommand(cmd_it))
            return run_transform(opt, it_g, it_seed, it_eps, it_k, it_c, it_seed_eps, it_n);
        if (app.got_subcommand(cmd_res)) {
            if (res_eps < 0) res_eps = res_solution[1] == '5' ? 1.0 : 0.1;
            return run_residual(opt, res_solution, res_semantics, res_alpha, res_eps, res_c,
                                parse_grid(res_gx, "--grid-x"), parse_grid(res_gt, "--grid-t"));
        }
        if (app.got_subcommand(cmd_probe))
            return run_probe(opt, probe_kind, probe_alpha, probe_beta,
                             parse_grid(probe_gt, "--grid-t"), probe_outer);
        if (app.got_subcommand(cmd_ch))
            return run_characteristics(opt, ch_a, ch_b, ch_c, ch_alpha, ch_beta, ch_g,
                                       parse_grid(ch_launch, "--launch"), ch_smax, ch_steps,
                                       ch_degenerate, ch_verify, parse_grid(ch_gx, "--grid-x"),
                                       parse_grid(ch_gt, "--grid-t"));
        if (app.got_subcommand(cmd_cat)) return run_catalog(opt);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
