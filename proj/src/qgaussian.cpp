#include "tailkit/qgaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailkit/simplex.hpp"
#include "tailkit/special.hpp"

namespace tailkit {

double qgaussian_log_pdf(double r, double alpha, double scale) {
    if (!(alpha > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("qgaussian density needs alpha > 0 and L > 0");
    return 0.5 * (std::log(scale) - std::log(alpha)) - log_beta(0.5, 0.5 * alpha) -
           0.5 * (alpha + 1.0) * std::log1p(scale * r * r / alpha);
}

double qgaussian_pdf(double r, double alpha, double scale) {
    return std::exp(qgaussian_log_pdf(r, alpha, scale));
}

QGaussianFit fit_qgaussian(const EmpiricalPdf& pdf, const QGaussianFitOptions& opt) {
    struct FitBin {
        double center, log_density, weight;
    };
    std::vector<FitBin> data;
    double total_weight = 0.0;
    for (const auto& b : pdf.bins) {
        if (b.count < opt.min_bin_count) continue;
        data.push_back({b.center, std::log(b.density), double(b.count)});
        total_weight += double(b.count);
    }
    if (data.size() < static_cast<size_t>(opt.min_bins))
        throw std::runtime_error("fit_qgaussian: only " + std::to_string(data.size()) +
                                 " usable bins, need " + std::to_string(opt.min_bins));
    for (auto& d : data) d.weight /= total_weight;

    const double huge = std::numeric_limits<double>::max();
    auto reduced = [&](double alpha, double scale) {
        if (!(alpha > 0.0) || alpha > opt.alpha_cap || !(scale > 0.0) || !std::isfinite(scale))
            return huge;
        double s = 0.0;
        for (const auto& d : data) {
            const double resid = d.log_density - qgaussian_log_pdf(d.center, alpha, scale);
            s += d.weight * resid * resid;
        }
        return s;
    };

    std::function<double(const std::vector<double>&)> objective;
    std::vector<std::vector<double>> starts;
    if (opt.unit_variance) {
        objective = [&](const std::vector<double>& x) {
            const double alpha = std::exp(x[0]);
            if (!(alpha > 2.0)) return huge;
            return reduced(alpha, alpha / (alpha - 2.0));
        };
        for (double a0 : {2.5, 3.0, 5.0, 10.0, 30.0}) starts.push_back({std::log(a0)});
    } else {
        objective = [&](const std::vector<double>& x) {
            return reduced(std::exp(x[0]), std::exp(x[1]));
        };
        for (double a0 : {1.0, 2.0, 3.0, 5.0, 10.0, 30.0})
            for (double l0 : {0.5, 1.0, 2.0}) starts.push_back({std::log(a0), std::log(l0)});
    }

    SimplexResult best;
    best.fmin = huge;
    bool have_best = false;
    for (const auto& s : starts) {
        const auto run = nelder_mead(objective, s, 0.5, opt.param_tol, 2000);
        if (!have_best || run.fmin < best.fmin) {
            best = run;
            have_best = true;
        }
    }

    QGaussianFit fit;
    fit.alpha = std::exp(best.x[0]);
    fit.scale = opt.unit_variance ? fit.alpha / (fit.alpha - 2.0) : std::exp(best.x[1]);
    fit.objective = best.fmin;
    fit.converged = best.converged;
    fit.n_bins_used = static_cast<int>(data.size());
    fit.near_gaussian = fit.alpha > opt.near_gaussian_alpha;
    return fit;
}

}  // namespace tailkit
