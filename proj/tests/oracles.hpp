// Test-only oracles. These stay independent of the library code paths they
// check: quadrature for density normalization and moments, and closed-form
// helpers for the power-law transform.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

using Fn = std::function<double(double)>;

inline double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const Fn& f, double a, double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    if (depth <= 0) return left + right;
    if (std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

// Adaptive Simpson on [a, b].
inline double integrate(const Fn& f, double a, double b, double tol = 1e-10, int depth = 30) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_slice(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, depth);
}

// Integral of f over [lo, hi] computed in log space (substitution s = ln r),
// for smooth heavy-tailed integrands. Requires 0 < lo < hi.
inline double integrate_log(const Fn& f, double lo, double hi, double tol = 1e-10) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("integrate_log: bad range");
    const Fn g = [&f](double s) {
        const double r = std::exp(s);
        return f(r) * r;
    };
    return integrate(g, std::log(lo), std::log(hi), tol);
}

// Integral of a symmetric density h(|r|) over [-r_max, r_max]: direct core
// plus log-space wings.
inline double integrate_symmetric(const Fn& h, double r_max, double core = 10.0,
                                  double tol = 1e-11) {
    double total = integrate(h, 0.0, std::min(core, r_max), tol);
    if (r_max > core) total += integrate_log(h, core, r_max, tol);
    return 2.0 * total;
}

}  // namespace oracle
