// Ordinary least squares with t-tests, plus the specific tail-exponent
// regressions: alpha against ln(turnover), ln(capitalization), both, and
// ln(traded value), and the model-comparison table with significance stars.
#pragma once

#include <string>
#include <vector>

namespace tailkit {

struct Coefficient {
    std::string name;  // "intercept" or the predictor label
    double estimate = 0.0;
    double std_error = 0.0;
    double t_stat = 0.0;
    double p_value = 0.0;        // two-sided
    double ci_half_width = 0.0;  // 95% t-interval half width
};

struct RegressionFit {
    std::string model;
    std::vector<Coefficient> coefficients;  // intercept first
    double r_squared = 0.0;
    size_t n_obs = 0;
    size_t df_residual = 0;
    std::vector<size_t> outlier_indices;  // |studentized residual| > 3; flagged, never dropped
};

// Least squares with intercept. `predictors` holds one vector per slope.
// Throws on length mismatch, too few observations, or a rank-deficient
// ("collinear") design.
RegressionFit ols(const std::vector<std::vector<double>>& predictors,
                  const std::vector<double>& response, const std::vector<std::string>& names,
                  const std::string& model_tag);

struct AttributePoint {
    double attribute = 0.0;  // raw attribute; the regressions take its log
    double alpha = 0.0;
};

struct BivariatePoint {
    double turnover = 0.0;
    double capitalization = 0.0;
    double alpha = 0.0;
};

// alpha = A + B ln<v/c>
RegressionFit regress_alpha_turnover(const std::vector<AttributePoint>& points);
// alpha = A + B ln c
RegressionFit regress_alpha_cap(const std::vector<AttributePoint>& points);
// alpha = A + B_vc ln<v/c> + B_c ln c
RegressionFit regress_alpha_bivariate(const std::vector<BivariatePoint>& points);
// alpha = A + B ln<v>
RegressionFit regress_alpha_traded_value(const std::vector<AttributePoint>& points);

struct ReparametrizedCoefficients {
    double intercept = 0.0;
    double slope_traded_value = 0.0;  // equals the bivariate turnover slope
    double slope_cap = 0.0;           // equals B_c - B_vc
};

// Rewrites the bivariate fit in (ln<v>, ln c) coordinates and checks the
// exact least-squares identity against a direct fit on those predictors
// (tolerance 1e-9 relative). Throws on violation.
ReparametrizedCoefficients reparametrize_check(const RegressionFit& bivariate_fit,
                                               const std::vector<BivariatePoint>& points);

// "***" for p <= 0.01, "**" for p <= 0.05, "*" for p <= 0.10, else "".
std::string significance_stars(double p_value);

struct ModelComparison {
    std::string csv;
    std::string text;  // aligned, human-readable
};

// Rows per fitted model: every slope with stars, then R^2. All fits must
// share the same observation count.
ModelComparison model_comparison(const std::vector<RegressionFit>& fits);

std::string regression_to_json(const RegressionFit& fit);

}  // namespace tailkit
