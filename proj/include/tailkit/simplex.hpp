// Derivative-free Nelder-Mead minimizer, used by the density fit.
#pragma once

#include <functional>
#include <vector>

namespace tailkit {

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Standard reflection/expansion/contraction/shrink coefficients. Converged
// when every vertex is within `param_tol` (max-norm) of the best vertex.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start, double initial_step,
                          double param_tol = 1e-6, int max_iterations = 2000);

}  // namespace tailkit
