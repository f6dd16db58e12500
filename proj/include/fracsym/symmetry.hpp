#pragma once

#include "fracsym/jet.hpp"
#include "fracsym/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace fracsym {

/// Point vector field xi d/dx + tau d/dT + phi d/du. xi and tau depend
/// only on (x, T); phi may also depend on u and carry e^{mu} factors.
struct VectorField {
    std::string name;
    JetPoly xi, tau, phi;

    VectorField(std::string n, JetPoly xi_, JetPoly tau_, JetPoly phi_);
};

enum class V4Variant { printed, corrected };
enum class Eq28Sign { plus, minus };

/// The six-dimensional symmetry basis. V4 defaults to the scaling field
/// x d/dx + 2T d/dT; the printed variant x d/du + 2T d/dT is kept
/// selectable as a negative control.
std::vector<VectorField> basis(V4Variant v4 = V4Variant::corrected);

/// Infinite-dimensional subalgebra member k(x,T) e^{-u} d/du.
VectorField vk_field(const JetPoly& k);

/// Six-parameter family
///   xi  = c1 + c4 x + 2 c5 T + 4 c6 x T
///   tau = c2 + 2 c4 T + 4 c6 T^2
///   phi = c3 - c5 x (+/-) 2 c6 T - c6 x^2
/// The minus sign is the consistent one; plus is the printed variant.
VectorField infinitesimal_family(const std::array<Rational, 6>& c,
                                 Eq28Sign sign = Eq28Sign::minus);

/// Second prolongation coefficients, off shell:
///   phi_t  = D_T phi - (D_T xi) u_x - (D_T tau) u_T
///   phi_x  = D_x phi - (D_x xi) u_x - (D_x tau) u_T
///   phi_xx = D_x^2 phi - 2 (D_x xi) u_xx - (D_x^2 xi) u_x
///            - 2 (D_x tau) u_xT - (D_x^2 tau) u_T
struct ProlongationCoeffs {
    JetPoly phi_x, phi_t, phi_xx;
};

ProlongationCoeffs prolong(const VectorField& V);

/// on_shell_reduce(phi_t - phi_xx - 2 u_x phi_x); zero iff V generates a
/// symmetry of u_T = u_xx + u_x^2.
JetPoly symmetry_defect(const VectorField& V);

/// Lie bracket [V, W] = V W - W V of first-order operators.
VectorField bracket(const VectorField& V, const VectorField& W);

struct StructureEntry {
    std::array<Rational, 6> coeff{};  // [V_i, V_j] = sum_k coeff[k] V_{k+1}
    bool closed = true;               // bracket lies in the span
    JetPoly residual_xi, residual_tau, residual_phi;
};

struct StructureTable {
    std::array<std::array<StructureEntry, 6>, 6> entry;
    bool closed() const;
};

/// Decompose each pairwise bracket of the basis by exact linear solve.
StructureTable structure_table(const std::vector<VectorField>& fields);

enum class BracketConvention { identity, global_sign_flipped, mixed };

struct PaperComparison {
    struct Entry {
        int i, j;                            // 1-based pair, i < j
        std::array<Rational, 6> computed{};
        std::array<Rational, 6> printed{};
        bool matches_identity = false;
        bool matches_flipped = false;
    };
    std::vector<Entry> entries;
    BracketConvention convention = BracketConvention::mixed;
    bool zero_entries_exact = false;  // all printed-zero brackets computed zero
};

/// Match the computed table against the published commutator list, under
/// the identity convention and under a global sign flip, and report which
/// one holds. The discrepancy is preserved, not patched.
PaperComparison compare_to_paper(const StructureTable& t);

const char* convention_name(BracketConvention c);

}  // namespace fracsym
