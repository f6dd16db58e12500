#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fracsym/symmetry.hpp"
#include "support.hpp"

using namespace fracsym;

namespace {

JetPoly v(JetVar j) { return JetPoly::variable(j); }
JetPoly c(long n) { return JetPoly::constant(Rational(n)); }

const std::vector<JetPoly>& heat_polynomials() {
    static const std::vector<JetPoly> ks = {
        jet_parse("1"),
        jet_parse("x"),
        jet_parse("x^2/2 + T"),
        jet_parse("x^3/6 + x*T"),
    };
    return ks;
}

}  // namespace

TEST_CASE("basis fields have the published coefficients") {
    auto b = basis();
    CHECK(b[4].xi == c(2) * v(JetVar::T));
    CHECK(b[4].phi == -v(JetVar::x));
    CHECK(b[5].phi == -(v(JetVar::x) * v(JetVar::x)) - c(2) * v(JetVar::T));
    CHECK(b[0].tau.is_zero());
    auto printed = basis(V4Variant::printed);
    CHECK(printed[3].xi.is_zero());
    CHECK(printed[3].phi == v(JetVar::x));
}

TEST_CASE("vector field invariants are enforced") {
    CHECK_THROWS_AS(VectorField("bad", v(JetVar::u), c(0), c(0)), DomainError);
    CHECK_THROWS_AS(VectorField("bad", c(0), v(JetVar::u_x), c(0)), DomainError);
    CHECK_THROWS_AS(VectorField("bad", c(0), c(0), v(JetVar::u_xx)), DomainError);
    CHECK_THROWS_AS(vk_field(jet_parse("u")), DomainError);
    CHECK_THROWS_AS(vk_field(jet_parse("u_x + x")), DomainError);
}

TEST_CASE("prolongation coefficients, hand-expanded cases") {
    auto b = basis();
    auto p1 = prolong(b[0]);
    CHECK(p1.phi_x.is_zero());
    CHECK(p1.phi_t.is_zero());
    CHECK(p1.phi_xx.is_zero());

    auto p5 = prolong(b[4]);
    CHECK(p5.phi_x == c(-1));
    CHECK(p5.phi_t == c(-2) * v(JetVar::u_x));
    CHECK(p5.phi_xx.is_zero());

    auto p4 = prolong(b[3]);
    CHECK(p4.phi_x == -v(JetVar::u_x));
    CHECK(p4.phi_t == c(-2) * v(JetVar::u_T));
    CHECK(p4.phi_xx == c(-2) * v(JetVar::u_xx));
}

TEST_CASE("symmetry defect vanishes exactly for the basis") {
    for (const auto& V : basis()) {
        INFO(V.name);
        CHECK(symmetry_defect(V).is_zero());
    }
}

TEST_CASE("symmetry defect vanishes for heat-polynomial V_k") {
    for (const auto& k : heat_polynomials()) {
        INFO(k.str());
        CHECK(symmetry_defect(vk_field(k)).is_zero());
    }
    // defect is exactly (k_T - k_xx) e^{-u}
    JetPoly k = jet_parse("x^4 + T^2");
    JetPoly expected = (total_dT(k) - total_dx(total_dx(k))) * JetPoly::exp_u(-1);
    CHECK(symmetry_defect(vk_field(k)) == expected);
}

TEST_CASE("negative controls have nonzero defect") {
    CHECK(!symmetry_defect(basis(V4Variant::printed)[3]).is_zero());
    CHECK(!symmetry_defect(vk_field(jet_parse("T"))).is_zero());
    std::array<Rational, 6> c6_only{0, 0, 0, 0, 0, 1};
    CHECK(!symmetry_defect(infinitesimal_family(c6_only, Eq28Sign::plus)).is_zero());
    CHECK(symmetry_defect(infinitesimal_family(c6_only, Eq28Sign::minus)).is_zero());
}

TEST_CASE("six-parameter family is a symmetry identically in the c's") {
    // unit vectors: exhaustive for the 6-dimensional space by linearity
    for (int i = 0; i < 6; ++i) {
        std::array<Rational, 6> cs{};
        cs[i] = 1;
        INFO("c" << i + 1);
        CHECK(symmetry_defect(infinitesimal_family(cs)).is_zero());
    }
    std::mt19937 rng = testing::make_rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<Rational, 6> cs;
        for (auto& x : cs) x = testing::random_rational(rng);
        CHECK(symmetry_defect(infinitesimal_family(cs)).is_zero());
    }
}

TEST_CASE("family unit vectors reproduce the basis") {
    auto b = basis();
    for (int i = 0; i < 6; ++i) {
        std::array<Rational, 6> cs{};
        cs[i] = 1;
        VectorField f = infinitesimal_family(cs);
        CHECK(f.xi == b[i].xi);
        CHECK(f.tau == b[i].tau);
        CHECK(f.phi == b[i].phi);
    }
}

TEST_CASE("bracket antisymmetry") {
    auto b = basis();
    std::vector<VectorField> fields = b;
    for (const auto& k : heat_polynomials()) fields.push_back(vk_field(k));
    for (const auto& V : fields) {
        for (const auto& W : fields) {
            VectorField vw = bracket(V, W);
            VectorField wv = bracket(W, V);
            CHECK(vw.xi == -wv.xi);
            CHECK(vw.tau == -wv.tau);
            CHECK(vw.phi == -wv.phi);
        }
    }
}

TEST_CASE("Jacobi identity on the basis") {
    auto b = basis();
    for (const auto& V : b) {
        for (const auto& W : b) {
            for (const auto& Z : b) {
                VectorField s1 = bracket(V, bracket(W, Z));
                VectorField s2 = bracket(W, bracket(Z, V));
                VectorField s3 = bracket(Z, bracket(V, W));
                CHECK((s1.xi + s2.xi + s3.xi).is_zero());
                CHECK((s1.tau + s2.tau + s3.tau).is_zero());
                CHECK((s1.phi + s2.phi + s3.phi).is_zero());
            }
        }
    }
}

TEST_CASE("specific brackets") {
    auto b = basis();
    VectorField b12 = bracket(b[0], b[1]);
    CHECK(b12.xi.is_zero());
    CHECK(b12.tau.is_zero());
    CHECK(b12.phi.is_zero());

    VectorField b56 = bracket(b[4], b[5]);
    CHECK(b56.xi.is_zero());
    CHECK(b56.tau.is_zero());
    CHECK(b56.phi.is_zero());

    // [V4corrected, V6] = 2 V6 in the ab - ba convention
    VectorField b46 = bracket(b[3], b[5]);
    CHECK(b46.xi == b[5].xi.scaled(Rational(2)));
    CHECK(b46.tau == b[5].tau.scaled(Rational(2)));
    CHECK(b46.phi == b[5].phi.scaled(Rational(2)));
}

TEST_CASE("brackets against the infinite-dimensional part") {
    auto b = basis();
    for (const auto& k : heat_polynomials()) {
        VectorField vk = vk_field(k);
        // [V3, V_k] = -V_k, matching the published relation sign-for-sign
        VectorField b3k = bracket(b[2], vk);
        CHECK(b3k.xi.is_zero());
        CHECK(b3k.tau.is_zero());
        CHECK(b3k.phi == -vk.phi);
        // [V1, V_k] = V_{k_x} in the ab - ba convention
        VectorField b1k = bracket(b[0], vk);
        CHECK(b1k.phi == total_dx(k) * JetPoly::exp_u(-1));
    }
}

TEST_CASE("structure table closes with zero residuals") {
    StructureTable t = structure_table(basis());
    CHECK(t.closed());
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            CHECK(t.entry[i][j].residual_xi.is_zero());
            CHECK(t.entry[i][j].residual_tau.is_zero());
            CHECK(t.entry[i][j].residual_phi.is_zero());
            for (int k = 0; k < 6; ++k)
                CHECK(t.entry[i][j].coeff[k] == -t.entry[j][i].coeff[k]);
        }
        for (int k = 0; k < 6; ++k) CHECK(t.entry[i][i].coeff[k] == 0);
    }
}

TEST_CASE("structure constants against the published table") {
    StructureTable t = structure_table(basis());
    // spot checks in the ab - ba convention
    CHECK(t.entry[0][4].coeff == std::array<Rational, 6>{0, 0, -1, 0, 0, 0});
    CHECK(t.entry[1][5].coeff == std::array<Rational, 6>{0, 0, -2, 4, 0, 0});
    CHECK(t.entry[3][5].coeff == std::array<Rational, 6>{0, 0, 0, 0, 0, 2});

    PaperComparison cmp = compare_to_paper(t);
    CHECK(cmp.convention == BracketConvention::global_sign_flipped);
    CHECK(cmp.zero_entries_exact);
    for (const auto& e : cmp.entries) {
        INFO("[V" << e.i << ",V" << e.j << "]");
        CHECK(e.matches_flipped);
    }
}

TEST_CASE("printed V4 breaks the table convention") {
    StructureTable t = structure_table(basis(V4Variant::printed));
    PaperComparison cmp = compare_to_paper(t);
    CHECK(cmp.convention != BracketConvention::global_sign_flipped);
}
