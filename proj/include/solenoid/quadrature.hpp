#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace solenoid {

// Adaptive Simpson quadrature for complex-valued integrands on [a, b].
// Used as the independent numeric cross-check of every closed-form real
// integral in the library; tolerance is exposed through --quad-tol.
namespace quadrature {

using Integrand = std::function<std::complex<double>(double)>;

namespace detail {

inline std::complex<double> simpson(const Integrand& f, double a, double b, std::complex<double> fa,
                                    std::complex<double> fm, std::complex<double> fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline std::complex<double> adaptive(const Integrand& f, double a, double b, std::complex<double> fa,
                                     std::complex<double> fm, std::complex<double> fb,
                                     std::complex<double> whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const std::complex<double> flm = f(lm);
    const std::complex<double> frm = f(rm);
    const std::complex<double> left = simpson(f, a, m, fa, flm, fm);
    const std::complex<double> right = simpson(f, m, b, fm, frm, fb);
    const std::complex<double> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

inline std::complex<double> integrate(const Integrand& f, double a, double b, double tol = 1e-10,
                                      int max_depth = 48) {
    const std::complex<double> fa = f(a);
    const std::complex<double> fb = f(b);
    const std::complex<double> fm = f(0.5 * (a + b));
    const std::complex<double> whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace quadrature
}  // namespace solenoid
