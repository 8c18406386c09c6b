// Special functions needed by the density fits and the regression t-tests.
#pragma once

namespace tailkit {

// ln B(a, b)
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// relative accuracy ~1e-13 for a, b > 0 and x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Student-t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);
double student_t_two_sided_p(double t, double df);

// Inverse CDF; p in (0, 1).
double student_t_quantile(double p, double df);

}  // namespace tailkit
