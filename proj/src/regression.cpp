#include "tailkit/regression.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tailkit/special.hpp"

#include <json.hpp>

namespace tailkit {

namespace {

// Invert a small symmetric positive-definite matrix by Gauss-Jordan with
// partial pivoting. Throws on rank deficiency.
std::vector<std::vector<long double>> invert(std::vector<std::vector<long double>> a) {
    const size_t k = a.size();
    std::vector<std::vector<long double>> inv(k, std::vector<long double>(k, 0.0L));
    long double scale = 0.0L;
    for (size_t i = 0; i < k; ++i) {
        inv[i][i] = 1.0L;
        scale = std::max(scale, std::fabs(a[i][i]));
    }
    for (size_t col = 0; col < k; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-13L * (scale > 0.0L ? scale : 1.0L))
            throw std::runtime_error("ols: collinear design");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const long double d = a[col][col];
        for (size_t c = 0; c < k; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const long double f = a[r][col];
            if (f == 0.0L) continue;
            for (size_t c = 0; c < k; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

std::vector<double> log_of(const std::vector<AttributePoint>& points) {
    std::vector<double> v;
    v.reserve(points.size());
    for (const auto& p : points) {
        if (!(p.attribute > 0.0))
            throw std::runtime_error("regression: attribute must be positive to take its log");
        v.push_back(std::log(p.attribute));
    }
    return v;
}

std::vector<double> alphas_of(const std::vector<AttributePoint>& points) {
    std::vector<double> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.alpha);
    return v;
}

}  // namespace

RegressionFit ols(const std::vector<std::vector<double>>& predictors,
                  const std::vector<double>& response, const std::vector<std::string>& names,
                  const std::string& model_tag) {
    const size_t n = response.size();
    const size_t k = predictors.size() + 1;  // with intercept
    if (names.size() != predictors.size())
        throw std::invalid_argument("ols: one name per predictor required");
    for (const auto& p : predictors)
        if (p.size() != n) throw std::invalid_argument("ols: predictor/response length mismatch");
    if (n <= k)
        throw std::runtime_error("ols: " + std::to_string(n) + " observations cannot identify " +
                                 std::to_string(k) + " coefficients");

    auto x_at = [&](size_t row, size_t col) -> double {
        return col == 0 ? 1.0 : predictors[col - 1][row];
    };

    std::vector<std::vector<long double>> gram(k, std::vector<long double>(k, 0.0L));
    std::vector<long double> xty(k, 0.0L);
    for (size_t r = 0; r < n; ++r) {
        for (size_t i = 0; i < k; ++i) {
            const long double xi = x_at(r, i);
            xty[i] += xi * response[r];
            for (size_t j = i; j < k; ++j) gram[i][j] += xi * x_at(r, j);
        }
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < i; ++j) gram[i][j] = gram[j][i];

    const auto gram_inv = invert(gram);
    std::vector<long double> beta(k, 0.0L);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) beta[i] += gram_inv[i][j] * xty[j];

    long double mean_y = 0.0L;
    for (double y : response) mean_y += y;
    mean_y /= static_cast<long double>(n);

    long double ssr = 0.0L, sst = 0.0L;
    std::vector<double> residuals(n);
    for (size_t r = 0; r < n; ++r) {
        long double fitted = 0.0L;
        for (size_t i = 0; i < k; ++i) fitted += beta[i] * x_at(r, i);
        const long double e = response[r] - fitted;
        residuals[r] = static_cast<double>(e);
        ssr += e * e;
        sst += (response[r] - mean_y) * (response[r] - mean_y);
    }

    RegressionFit fit;
    fit.model = model_tag;
    fit.n_obs = n;
    fit.df_residual = n - k;
    fit.r_squared = sst > 0.0L ? static_cast<double>(1.0L - ssr / sst) : 0.0;

    const double df = static_cast<double>(fit.df_residual);
    const double s2 = static_cast<double>(ssr) / df;
    const double t975 = student_t_quantile(0.975, df);
    for (size_t i = 0; i < k; ++i) {
        Coefficient c;
        c.name = i == 0 ? "intercept" : names[i - 1];
        c.estimate = static_cast<double>(beta[i]);
        c.std_error = std::sqrt(std::max(0.0, s2 * static_cast<double>(gram_inv[i][i])));
        if (c.std_error > 0.0) {
            c.t_stat = c.estimate / c.std_error;
            c.p_value = student_t_two_sided_p(c.t_stat, df);
        } else {
            c.t_stat = 0.0;
            c.p_value = c.estimate == 0.0 ? 1.0 : 0.0;
        }
        c.ci_half_width = t975 * c.std_error;
        fit.coefficients.push_back(std::move(c));
    }

    // Internally studentized residuals; > 3 only flags, never drops. A fit
    // whose SSR is at rounding level has nothing meaningful to flag.
    const double s = std::sqrt(s2);
    if (s > 0.0 && ssr > 1e-20L * sst) {
        for (size_t r = 0; r < n; ++r) {
            long double leverage = 0.0L;
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) leverage += x_at(r, i) * gram_inv[i][j] * x_at(r, j);
            const double denom = s * std::sqrt(std::max(1e-12, 1.0 - static_cast<double>(leverage)));
            if (std::fabs(residuals[r] / denom) > 3.0) fit.outlier_indices.push_back(r);
        }
    }
    return fit;
}

RegressionFit regress_alpha_turnover(const std::vector<AttributePoint>& points) {
    return ols({log_of(points)}, alphas_of(points), {"ln_turnover"}, "alpha_vs_ln_turnover");
}

RegressionFit regress_alpha_cap(const std::vector<AttributePoint>& points) {
    return ols({log_of(points)}, alphas_of(points), {"ln_cap"}, "alpha_vs_ln_cap");
}

RegressionFit regress_alpha_traded_value(const std::vector<AttributePoint>& points) {
    return ols({log_of(points)}, alphas_of(points), {"ln_traded_value"}, "alpha_vs_ln_traded_value");
}

RegressionFit regress_alpha_bivariate(const std::vector<BivariatePoint>& points) {
    std::vector<double> ln_turnover, ln_cap, alpha;
    for (const auto& p : points) {
        if (!(p.turnover > 0.0) || !(p.capitalization > 0.0))
            throw std::runtime_error("regression: attributes must be positive to take logs");
        ln_turnover.push_back(std::log(p.turnover));
        ln_cap.push_back(std::log(p.capitalization));
        alpha.push_back(p.alpha);
    }
    return ols({ln_turnover, ln_cap}, alpha, {"ln_turnover", "ln_cap"},
               "alpha_vs_ln_turnover_ln_cap");
}

ReparametrizedCoefficients reparametrize_check(const RegressionFit& bivariate_fit,
                                               const std::vector<BivariatePoint>& points) {
    if (bivariate_fit.coefficients.size() != 3)
        throw std::invalid_argument("reparametrize_check expects a bivariate fit");
    ReparametrizedCoefficients out;
    out.intercept = bivariate_fit.coefficients[0].estimate;
    out.slope_traded_value = bivariate_fit.coefficients[1].estimate;
    out.slope_cap = bivariate_fit.coefficients[2].estimate - bivariate_fit.coefficients[1].estimate;

    std::vector<double> ln_value, ln_cap, alpha;
    for (const auto& p : points) {
        ln_value.push_back(std::log(p.turnover * p.capitalization));
        ln_cap.push_back(std::log(p.capitalization));
        alpha.push_back(p.alpha);
    }
    const auto direct = ols({ln_value, ln_cap}, alpha, {"ln_traded_value", "ln_cap"},
                            "alpha_vs_ln_traded_value_ln_cap");

    const double expected[3] = {out.intercept, out.slope_traded_value, out.slope_cap};
    for (size_t i = 0; i < 3; ++i) {
        const double got = direct.coefficients[i].estimate;
        const double tol = 1e-9 * std::max(1.0, std::fabs(expected[i]));
        if (std::fabs(got - expected[i]) > tol)
            throw std::runtime_error("reparametrize_check: least-squares identity violated for " +
                                     direct.coefficients[i].name);
    }
    return out;
}

std::string significance_stars(double p_value) {
    if (p_value <= 0.01) return "***";
    if (p_value <= 0.05) return "**";
    if (p_value <= 0.10) return "*";
    return "";
}

ModelComparison model_comparison(const std::vector<RegressionFit>& fits) {
    if (fits.empty()) throw std::invalid_argument("model_comparison: no fits");
    for (const auto& f : fits)
        if (f.n_obs != fits.front().n_obs)
            throw std::runtime_error("model_comparison: fits cover different datasets (N " +
                                     std::to_string(f.n_obs) + " vs " +
                                     std::to_string(fits.front().n_obs) + ")");

    std::vector<std::string> slope_names;
    for (const auto& f : fits)
        for (size_t i = 1; i < f.coefficients.size(); ++i) {
            const auto& nm = f.coefficients[i].name;
            bool known = false;
            for (const auto& s : slope_names) known = known || s == nm;
            if (!known) slope_names.push_back(nm);
        }

    auto find_coeff = [](const RegressionFit& f, const std::string& nm) -> const Coefficient* {
        for (size_t i = 1; i < f.coefficients.size(); ++i)
            if (f.coefficients[i].name == nm) return &f.coefficients[i];
        return nullptr;
    };

    ModelComparison table;
    table.csv = "model";
    for (const auto& nm : slope_names) table.csv += "," + nm + "," + nm + "_stars";
    table.csv += ",r_squared\n";

    char buf[64];
    std::string text = "model";
    for (const auto& nm : slope_names) {
        std::snprintf(buf, sizeof buf, "  %16s", nm.c_str());
        text += buf;
    }
    text += "      R^2\n";
    for (const auto& f : fits) {
        table.csv += f.model;
        std::snprintf(buf, sizeof buf, "%-28s", f.model.c_str());
        text += buf;
        for (const auto& nm : slope_names) {
            const auto* c = find_coeff(f, nm);
            if (c) {
                const std::string stars = significance_stars(c->p_value);
                std::snprintf(buf, sizeof buf, "%.4f", c->estimate);
                table.csv += std::string(",") + buf + "," + stars;
                std::snprintf(buf, sizeof buf, "  %10.4f%-4s", c->estimate, stars.c_str());
                text += buf;
            } else {
                table.csv += ",,";
                std::snprintf(buf, sizeof buf, "  %10s%-4s", "/", "");
                text += buf;
            }
        }
        std::snprintf(buf, sizeof buf, "%.4f", f.r_squared);
        table.csv += std::string(",") + buf + "\n";
        std::snprintf(buf, sizeof buf, "   %6.4f\n", f.r_squared);
        text += buf;
    }
    table.text = std::move(text);
    return table;
}

std::string regression_to_json(const RegressionFit& fit) {
    nlohmann::ordered_json doc;
    doc["model"] = fit.model;
    doc["n_obs"] = fit.n_obs;
    doc["df_residual"] = fit.df_residual;
    doc["r_squared"] = fit.r_squared;
    auto& coeffs = doc["coefficients"] = nlohmann::ordered_json::array();
    for (const auto& c : fit.coefficients) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["estimate"] = c.estimate;
        jc["std_error"] = c.std_error;
        jc["t_stat"] = c.t_stat;
        jc["p_value"] = c.p_value;
        jc["ci_half_width"] = c.ci_half_width;
        jc["stars"] = significance_stars(c.p_value);
        coeffs.push_back(std::move(jc));
    }
    doc["outlier_indices"] = fit.outlier_indices;
    return doc.dump(2) + "\n";
}

}  // namespace tailkit
