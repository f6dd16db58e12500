#pragma once

#include "fracsym/expr.hpp"
#include "fracsym/jet.hpp"

#include <random>

namespace fracsym::testing {

inline std::mt19937 make_rng(unsigned seed = 0xC0FFEE) { return std::mt19937(seed); }

inline Rational random_rational(std::mt19937& rng, int num_range = 9, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

/// Random polynomial over a restricted variable set, with optional e^{mu}.
inline JetPoly random_jet_poly(std::mt19937& rng, const std::vector<JetVar>& vars,
                               int max_terms = 4, int max_deg = 2, int max_eu = 1) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> eu(-max_eu, max_eu);
    std::uniform_int_distribution<std::size_t> pick(0, vars.empty() ? 0 : vars.size() - 1);
    JetPoly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        JetPoly term = JetPoly::constant(random_rational(rng));
        if (!vars.empty()) {
            int d = deg(rng);
            for (int j = 0; j < d; ++j) term = term * JetPoly::variable(vars[pick(rng)]);
        }
        if (max_eu > 0) term = term * JetPoly::exp_u(eu(rng));
        p = p + term;
    }
    return p;
}

inline std::array<double, kJetVarCount> random_jet_bindings(std::mt19937& rng) {
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::array<double, kJetVarCount> out{};
    for (auto& v : out) v = val(rng);
    return out;
}

}  // namespace fracsym::testing
