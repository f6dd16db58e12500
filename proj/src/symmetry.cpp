#include "fracsym/symmetry.hpp"

#include <set>
#include <utility>

namespace fracsym {

namespace {

void require_xT_only(const JetPoly& p, const char* what) {
    static const JetVar forbidden[] = {JetVar::u,    JetVar::u_x,  JetVar::u_T,
                                       JetVar::u_xx, JetVar::u_xT, JetVar::u_TT,
                                       JetVar::u_xxx, JetVar::u_xxT, JetVar::u_xxxx};
    for (JetVar v : forbidden)
        if (p.depends_on(v))
            throw DomainError(std::string(what) + " may depend only on (x, T)");
    if (p.has_exp_u()) throw DomainError(std::string(what) + " may not carry exp(u) factors");
}

void require_point_phi(const JetPoly& p) {
    static const JetVar forbidden[] = {JetVar::u_x,  JetVar::u_T,  JetVar::u_xx,
                                       JetVar::u_xT, JetVar::u_TT, JetVar::u_xxx,
                                       JetVar::u_xxT, JetVar::u_xxxx};
    for (JetVar v : forbidden)
        if (p.depends_on(v)) throw DomainError("phi may not depend on jet variables");
}

JetPoly jv(JetVar v) { return JetPoly::variable(v); }
JetPoly jc(long v) { return JetPoly::constant(Rational(v)); }

}  // namespace

VectorField::VectorField(std::string n, JetPoly xi_, JetPoly tau_, JetPoly phi_)
    : name(std::move(n)), xi(std::move(xi_)), tau(std::move(tau_)), phi(std::move(phi_)) {
    require_xT_only(xi, "xi");
    require_xT_only(tau, "tau");
    require_point_phi(phi);
}

std::vector<VectorField> basis(V4Variant v4) {
    std::vector<VectorField> b;
    b.emplace_back("V1", jc(1), jc(0), jc(0));
    b.emplace_back("V2", jc(0), jc(1), jc(0));
    b.emplace_back("V3", jc(0), jc(0), jc(1));
    if (v4 == V4Variant::corrected) {
        b.emplace_back("V4", jv(JetVar::x), jc(2) * jv(JetVar::T), jc(0));
    } else {
        b.emplace_back("V4", jc(0), jc(2) * jv(JetVar::T), jv(JetVar::x));
    }
    b.emplace_back("V5", jc(2) * jv(JetVar::T), jc(0), -jv(JetVar::x));
    b.emplace_back("V6", jc(4) * jv(JetVar::x) * jv(JetVar::T),
                   jc(4) * jv(JetVar::T) * jv(JetVar::T),
                   -(jv(JetVar::x) * jv(JetVar::x) + jc(2) * jv(JetVar::T)));
    return b;
}

VectorField vk_field(const JetPoly& k) {
    require_xT_only(k, "k");
    return VectorField("V_k[" + k.str() + "]", jc(0), jc(0), k * JetPoly::exp_u(-1));
}

VectorField infinitesimal_family(const std::array<Rational, 6>& c, Eq28Sign sign) {
    JetPoly x = jv(JetVar::x), T = jv(JetVar::T);
    JetPoly xi = JetPoly::constant(c[0]) + x.scaled(c[3]) + T.scaled(2 * c[4]) +
                 (x * T).scaled(4 * c[5]);
    JetPoly tau = JetPoly::constant(c[1]) + T.scaled(2 * c[3]) + (T * T).scaled(4 * c[5]);
    Rational s = sign == Eq28Sign::minus ? Rational(-2) : Rational(2);
    JetPoly phi = JetPoly::constant(c[2]) - x.scaled(c[4]) + T.scaled(s * c[5]) -
                  (x * x).scaled(c[5]);
    return VectorField("family", std::move(xi), std::move(tau), std::move(phi));
}

ProlongationCoeffs prolong(const VectorField& V) {
    const JetPoly ux = jv(JetVar::u_x);
    const JetPoly uT = jv(JetVar::u_T);
    const JetPoly uxx = jv(JetVar::u_xx);
    const JetPoly uxT = jv(JetVar::u_xT);

    JetPoly dx_xi = total_dx(V.xi), dT_xi = total_dT(V.xi);
    JetPoly dx_tau = total_dx(V.tau), dT_tau = total_dT(V.tau);
    JetPoly dxx_xi = total_dx(dx_xi), dxx_tau = total_dx(dx_tau);
    JetPoly dx_phi = total_dx(V.phi), dT_phi = total_dT(V.phi);

    ProlongationCoeffs pc;
    pc.phi_t = dT_phi - dT_xi * ux - dT_tau * uT;
    pc.phi_x = dx_phi - dx_xi * ux - dx_tau * uT;
    pc.phi_xx = total_dx(dx_phi) - (jc(2) * dx_xi) * uxx - dxx_xi * ux -
                (jc(2) * dx_tau) * uxT - dxx_tau * uT;
    return pc;
}

JetPoly symmetry_defect(const VectorField& V) {
    ProlongationCoeffs pc = prolong(V);
    JetPoly defect = pc.phi_t - pc.phi_xx - jc(2) * jv(JetVar::u_x) * pc.phi_x;
    return on_shell_reduce(defect);
}

namespace {

// Action of the field on a coefficient function of (x, T, u, e^{mu}).
JetPoly apply_field(const VectorField& V, const JetPoly& f) {
    return V.xi * f.partial(JetVar::x) + V.tau * f.partial(JetVar::T) +
           V.phi * f.partial(JetVar::u);
}

}  // namespace

VectorField bracket(const VectorField& V, const VectorField& W) {
    return VectorField("[" + V.name + "," + W.name + "]",
                       apply_field(V, W.xi) - apply_field(W, V.xi),
                       apply_field(V, W.tau) - apply_field(W, V.tau),
                       apply_field(V, W.phi) - apply_field(W, V.phi));
}

namespace {

// Exact decomposition of target = sum_k a_k fields_k per component by
// Gaussian elimination over the rationals.
bool decompose(const std::vector<VectorField>& fields, const VectorField& target,
               std::array<Rational, 6>& out) {
    const int n = static_cast<int>(fields.size());
    struct Row {
        std::vector<Rational> a;
        Rational rhs;
    };
    std::vector<Row> rows;
    auto add_component = [&](auto get) {
        std::set<MonoKey> keys;
        for (const auto& f : fields)
            for (const auto& [k, c] : get(f).terms()) keys.insert(k);
        for (const auto& [k, c] : get(target).terms()) keys.insert(k);
        for (const auto& key : keys) {
            Row r;
            r.a.resize(n);
            for (int i = 0; i < n; ++i) r.a[i] = get(fields[i]).coefficient(key);
            r.rhs = get(target).coefficient(key);
            rows.push_back(std::move(r));
        }
    };
    add_component([](const VectorField& f) -> const JetPoly& { return f.xi; });
    add_component([](const VectorField& f) -> const JetPoly& { return f.tau; });
    add_component([](const VectorField& f) -> const JetPoly& { return f.phi; });

    // forward elimination
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int sel = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r].a[col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r].a[col] == 0) continue;
            Rational factor = rows[r].a[col] / rows[rank].a[col];
            for (int cc = 0; cc < n; ++cc) rows[r].a[cc] -= factor * rows[rank].a[cc];
            rows[r].rhs -= factor * rows[rank].rhs;
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (auto& v : out) v = 0;
    for (int r = 0; r < rank; ++r) out[pivot_col[r]] = rows[r].rhs / rows[r].a[pivot_col[r]];
    // consistency of the remaining rows (0 = rhs with every coefficient 0)
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
        bool all_zero = true;
        for (int c = 0; c < n; ++c)
            if (rows[r].a[c] != 0) all_zero = false;
        if (all_zero && rows[r].rhs != 0) return false;
    }
    return true;
}

}  // namespace

bool StructureTable::closed() const {
    for (const auto& row : entry)
        for (const auto& e : row)
            if (!e.closed) return false;
    return true;
}

StructureTable structure_table(const std::vector<VectorField>& fields) {
    if (fields.size() != 6) throw DomainError("structure_table expects a basis of 6 fields");
    StructureTable t;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            VectorField br = bracket(fields[i], fields[j]);
            StructureEntry& e = t.entry[i][j];
            e.closed = decompose(fields, br, e.coeff);
            JetPoly cx, ct, cp;
            for (int k = 0; k < 6; ++k) {
                cx = cx + fields[k].xi.scaled(e.coeff[k]);
                ct = ct + fields[k].tau.scaled(e.coeff[k]);
                cp = cp + fields[k].phi.scaled(e.coeff[k]);
            }
            e.residual_xi = br.xi - cx;
            e.residual_tau = br.tau - ct;
            e.residual_phi = br.phi - cp;
            if (!e.residual_xi.is_zero() || !e.residual_tau.is_zero() ||
                !e.residual_phi.is_zero())
                e.closed = false;
        }
    }
    return t;
}

namespace {

// Published commutator list, upper triangle (1-based): the coefficient
// vector of [V_i, V_j] in the basis.
std::array<Rational, 6> paper_entry(int i, int j) {
    std::array<Rational, 6> c{};
    auto set = [&](int k, long v) { c[k - 1] = v; };
    if (i == 1 && j == 4) set(1, -1);
    if (i == 1 && j == 5) set(3, 1);
    if (i == 1 && j == 6) set(5, -2);
    if (i == 2 && j == 4) set(2, -2);
    if (i == 2 && j == 5) set(1, -2);
    if (i == 2 && j == 6) {
        set(3, 2);
        set(4, -4);
    }
    if (i == 4 && j == 5) set(5, -1);
    if (i == 4 && j == 6) set(6, -2);
    return c;
}

}  // namespace

PaperComparison compare_to_paper(const StructureTable& t) {
    PaperComparison cmp;
    bool all_identity = true, all_flipped = true;
    cmp.zero_entries_exact = true;
    for (int i = 1; i <= 6; ++i) {
        for (int j = i + 1; j <= 6; ++j) {
            PaperComparison::Entry e;
            e.i = i;
            e.j = j;
            e.computed = t.entry[i - 1][j - 1].coeff;
            e.printed = paper_entry(i, j);
            bool is_zero = true, id = true, fl = true;
            for (int k = 0; k < 6; ++k) {
                if (e.printed[k] != 0) is_zero = false;
                if (e.computed[k] != e.printed[k]) id = false;
                if (e.computed[k] != -e.printed[k]) fl = false;
            }
            e.matches_identity = id;
            e.matches_flipped = fl;
            if (!id) all_identity = false;
            if (!fl) all_flipped = false;
            if (is_zero && !id) cmp.zero_entries_exact = false;
            cmp.entries.push_back(std::move(e));
        }
    }
    if (all_identity) {
        cmp.convention = BracketConvention::identity;
    } else if (all_flipped) {
        cmp.convention = BracketConvention::global_sign_flipped;
    } else {
        cmp.convention = BracketConvention::mixed;
    }
    return cmp;
}

const char* convention_name(BracketConvention c) {
    switch (c) {
        case BracketConvention::identity: return "identity";
        case BracketConvention::global_sign_flipped: return "global-sign-flipped";
        case BracketConvention::mixed: return "mixed";
    }
    return "?";
}

}  // namespace fracsym
