#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fracsym {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double v) { return Rational(v); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace fracsym
