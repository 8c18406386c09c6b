#include "tailkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tailkit {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start, double initial_step, double param_tol,
                          int max_iterations) {
    const size_t n = start.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");

    std::vector<std::vector<double>> verts(n + 1, start);
    for (size_t i = 0; i < n; ++i) verts[i + 1][i] += initial_step;
    std::vector<double> fvals(n + 1);
    for (size_t i = 0; i <= n; ++i) fvals[i] = objective(verts[i]);

    const double refl = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;
    SimplexResult result;

    auto order = [&] {
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fvals[a] < fvals[b]; });
        std::vector<std::vector<double>> v2;
        std::vector<double> f2;
        for (size_t i : idx) {
            v2.push_back(verts[i]);
            f2.push_back(fvals[i]);
        }
        verts = std::move(v2);
        fvals = std::move(f2);
    };

    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        order();
        double spread = 0.0;
        for (size_t i = 1; i <= n; ++i)
            for (size_t d = 0; d < n; ++d)
                spread = std::max(spread, std::fabs(verts[i][d] - verts[0][d]));
        if (spread < param_tol) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i)
            for (size_t d = 0; d < n; ++d) centroid[d] += verts[i][d] / double(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (size_t d = 0; d < n; ++d) p[d] = centroid[d] + coeff * (centroid[d] - verts[n][d]);
            return p;
        };

        const auto reflected = blend(refl);
        const double f_refl = objective(reflected);
        if (f_refl < fvals[0]) {
            const auto expanded = blend(refl * expand);
            const double f_exp = objective(expanded);
            if (f_exp < f_refl) {
                verts[n] = expanded;
                fvals[n] = f_exp;
            } else {
                verts[n] = reflected;
                fvals[n] = f_refl;
            }
            continue;
        }
        if (f_refl < fvals[n - 1]) {
            verts[n] = reflected;
            fvals[n] = f_refl;
            continue;
        }
        // Contract toward the better of worst/reflected.
        if (f_refl < fvals[n]) {
            const auto outside = blend(refl * contract);
            const double f_out = objective(outside);
            if (f_out <= f_refl) {
                verts[n] = outside;
                fvals[n] = f_out;
                continue;
            }
        } else {
            const auto inside = blend(-contract);
            const double f_in = objective(inside);
            if (f_in < fvals[n]) {
                verts[n] = inside;
                fvals[n] = f_in;
                continue;
            }
        }
        for (size_t i = 1; i <= n; ++i) {
            for (size_t d = 0; d < n; ++d)
                verts[i][d] = verts[0][d] + shrink * (verts[i][d] - verts[0][d]);
            fvals[i] = objective(verts[i]);
        }
    }
    order();
    result.x = verts[0];
    result.fmin = fvals[0];
    result.iterations = iter;
    return result;
}

}  // namespace tailkit
