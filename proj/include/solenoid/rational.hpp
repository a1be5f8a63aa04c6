#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace solenoid {

// All exact arithmetic runs on arbitrary-precision integers/rationals;
// nothing in the library silently wraps.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e != 0) {
        if (e & 1UL) r *= base;
        base *= base;
        e >>= 1UL;
    }
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("floor_div: zero divisor");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Representative of a mod m in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) throw std::domain_error("mod_floor: modulus must be positive");
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Rat frac_mod1(const Rat& r) {
    const Int fl = floor_div(numerator(r), denominator(r));
    return r - Rat(fl);
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

// Canonical "n/d" form, denominator always printed, used wherever reports
// must be byte-identical across runs.
inline std::string frac_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

}  // namespace solenoid
