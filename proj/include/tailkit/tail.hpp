// Power-law tail exponent estimation: maximum-likelihood exponent with the
// cutoff chosen by minimizing the Kolmogorov-Smirnov distance over candidate
// cutoffs (the Clauset-Shalizi-Newman procedure).
//
// Conventions: the CCDF above the cutoff is P(|r| >= x) = (x / r_min)^-alpha,
// so the reported alpha is the CCDF exponent and the density exponent is
// alpha + 1.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailkit/histogram.hpp"

namespace tailkit {

struct TailFit {
    TailSign sign = TailSign::positive;
    double r_min = 0.0;
    double alpha = 0.0;
    size_t n_tail = 0;
    double ks = 0.0;
    double std_error = 0.0;  // alpha / sqrt(n_tail), the asymptotic MLE error
    std::vector<std::string> flags;
};

// alpha_hat = N / sum_j ln(r_j / r_eff). r_eff = r_min - 0.5 when
// discrete_shift is set (integer-valued data), r_min otherwise. Every value
// must be >= r_min and at least one must exceed it.
double mle_alpha(const std::vector<double>& tail, double r_min, bool discrete_shift = false);

// D = sup_{r >= r_min} |S(r) - P(r)| with P(r) = 1 - (r/r_min)^-alpha,
// evaluated on both sides of every sample point.
double ks_statistic(const std::vector<double>& tail, double r_min, double alpha);

struct TailFitOptions {
    size_t min_tail = 50;         // smallest admissible tail size
    size_t max_candidates = 1000; // cutoff scan capped by quantile thinning
    bool discrete_shift = false;
    double thin_tail_alpha = 4.0; // alpha above this raises thin_tail_warning
};

// Scans every distinct value whose tail holds at least min_tail points
// (thinned to max_candidates), picks the cutoff with the smallest KS
// statistic; ties broken by larger tail, then smaller cutoff.
TailFit fit_tail(const std::vector<double>& returns, TailSign sign,
                 const TailFitOptions& options = {});

// Semiparametric goodness-of-fit bootstrap (body resampled empirically, tail
// redrawn from the fitted power law); returns the fraction of synthetic KS
// statistics at least as large as the observed one.
double gof_pvalue_bootstrap(const std::vector<double>& returns, TailSign sign, const TailFit& fit,
                            int n_bootstrap, uint64_t seed, const TailFitOptions& options = {});

// Per-stock tail report CSV: stock_id,sign,alpha,r_min,n_tail,ks,stderr,flags
std::string tail_fits_to_csv(const std::vector<std::pair<std::string, TailFit>>& fits);

}  // namespace tailkit
