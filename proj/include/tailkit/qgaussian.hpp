// Student-t density in its q-Gaussian parametrization and a weighted
// log-density least-squares fit of (alpha, L) to an empirical PDF.
//
//   f(r) = sqrt(L/alpha) / B(1/2, alpha/2) * (1 + L r^2 / alpha)^-((alpha+1)/2)
//
// alpha is the degrees of freedom; the density tail decays like |r|^-(alpha+1)
// so the CCDF tail exponent equals alpha. For alpha > 2 the variance is
// alpha / (L (alpha - 2)); unit-variance data therefore pin L at
// alpha / (alpha - 2). In nonextensive-statistics terms this is the
// q-Gaussian with q = 1 + 2/(alpha + 1).
#pragma once

#include <cstdint>

#include "tailkit/histogram.hpp"

namespace tailkit {

double qgaussian_pdf(double r, double alpha, double scale);
double qgaussian_log_pdf(double r, double alpha, double scale);

struct QGaussianFit {
    double alpha = 0.0;
    double scale = 0.0;      // L
    double objective = 0.0;  // count-weighted mean squared log-density residual
    bool converged = false;
    int n_bins_used = 0;
    bool near_gaussian = false;  // alpha ran high enough to be unidentifiable
};

struct QGaussianFitOptions {
    uint64_t min_bin_count = 5;  // bins below this are ignored by the fit
    int min_bins = 10;
    bool unit_variance = false;  // pin L = alpha / (alpha - 2)
    double alpha_cap = 200.0;
    double param_tol = 1e-6;
    double near_gaussian_alpha = 20.0;
};

// Multi-start Nelder-Mead over (ln alpha, ln L), starts on the grid
// alpha in {1, 2, 3, 5, 10, 30} x L in {0.5, 1, 2}, run in fixed order.
QGaussianFit fit_qgaussian(const EmpiricalPdf& pdf, const QGaussianFitOptions& options = {});

}  // namespace tailkit
