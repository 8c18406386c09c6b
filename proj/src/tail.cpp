#include "tailkit/tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailkit/io.hpp"
#include "tailkit/rng.hpp"

namespace tailkit {

namespace {

double effective_cutoff(double r_min, bool discrete_shift) {
    const double r_eff = discrete_shift ? r_min - 0.5 : r_min;
    if (!(r_eff > 0.0))
        throw std::invalid_argument("tail cutoff must leave a positive effective minimum");
    return r_eff;
}

// Signed magnitudes: r > 0 as-is for the positive tail, |r| of r < 0 for the
// negative tail. Sorted ascending.
std::vector<double> signed_magnitudes(const std::vector<double>& returns, TailSign sign) {
    std::vector<double> sub;
    for (double r : returns) {
        if (sign == TailSign::positive && r > 0.0) sub.push_back(r);
        if (sign == TailSign::negative && r < 0.0) sub.push_back(-r);
    }
    std::sort(sub.begin(), sub.end());
    return sub;
}

}  // namespace

double mle_alpha(const std::vector<double>& tail, double r_min, bool discrete_shift) {
    if (!(r_min > 0.0)) throw std::invalid_argument("mle_alpha: r_min must be positive");
    const double r_eff = effective_cutoff(r_min, discrete_shift);
    if (tail.size() < 2) throw std::runtime_error("mle_alpha: need at least 2 tail points");

    // Sorted summation makes the estimate invariant under permutation of the
    // input, bit for bit.
    std::vector<double> sorted(tail);
    std::sort(sorted.begin(), sorted.end());
    long double log_sum = 0.0L;
    for (double r : sorted) {
        if (r < r_eff)
            throw std::runtime_error("mle_alpha: tail value below the effective cutoff");
        log_sum += std::log(r / r_eff);
    }
    if (!(log_sum > 0.0L)) throw std::runtime_error("mle_alpha: degenerate tail");
    return static_cast<double>(tail.size() / log_sum);
}

double ks_statistic(const std::vector<double>& tail, double r_min, double alpha) {
    if (!(r_min > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("ks_statistic: r_min and alpha must be positive");
    if (tail.empty()) throw std::runtime_error("ks_statistic: empty tail");
    std::vector<double> sorted(tail);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < r_min)
        throw std::runtime_error("ks_statistic: tail value below r_min");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double model = 1.0 - std::exp(-alpha * std::log(sorted[i] / r_min));
        const double above = (static_cast<double>(i) + 1.0) / n;
        const double below = static_cast<double>(i) / n;
        d = std::max(d, std::fabs(above - model));
        d = std::max(d, std::fabs(below - model));
    }
    return d;
}

TailFit fit_tail(const std::vector<double>& returns, TailSign sign, const TailFitOptions& opt) {
    if (opt.min_tail < 2 || opt.max_candidates < 2)
        throw std::invalid_argument("fit_tail: min_tail and max_candidates must be at least 2");
    const std::vector<double> sub = signed_magnitudes(returns, sign);
    const size_t n = sub.size();
    if (n < 2 * opt.min_tail)
        throw std::runtime_error(std::string("fit_tail: ") + tail_sign_name(sign) +
                                 " subsample has " + std::to_string(n) + " points, need at least " +
                                 std::to_string(2 * opt.min_tail));

    std::vector<double> log_values(n);
    for (size_t i = 0; i < n; ++i) log_values[i] = std::log(sub[i]);
    std::vector<long double> suffix_log(n + 1, 0.0L);
    for (size_t i = n; i-- > 0;) suffix_log[i] = suffix_log[i + 1] + log_values[i];

    // Candidate cutoffs: every distinct value whose tail keeps min_tail
    // points, thinned evenly to max_candidates.
    std::vector<size_t> candidates;
    for (size_t i = 0; i + opt.min_tail <= n; ++i)
        if (i == 0 || sub[i] != sub[i - 1]) candidates.push_back(i);
    if (candidates.empty())
        throw std::runtime_error("fit_tail: no admissible cutoff keeps min_tail points");
    if (candidates.size() > opt.max_candidates) {
        std::vector<size_t> thinned;
        thinned.reserve(opt.max_candidates);
        const double step = static_cast<double>(candidates.size() - 1) /
                            static_cast<double>(opt.max_candidates - 1);
        for (size_t j = 0; j < opt.max_candidates; ++j) {
            const size_t pick = candidates[static_cast<size_t>(std::llround(j * step))];
            if (thinned.empty() || pick != thinned.back()) thinned.push_back(pick);
        }
        candidates = std::move(thinned);
    }

    bool have_best = false;
    size_t best_index = 0;
    double best_d = 0.0;
    for (size_t i : candidates) {
        const size_t n_tail = n - i;
        const double r_min = sub[i];
        const double r_eff = opt.discrete_shift ? r_min - 0.5 : r_min;
        if (!(r_eff > 0.0)) continue;
        const double log_sum =
            static_cast<double>(suffix_log[i] - static_cast<long double>(n_tail) * std::log(r_eff));
        if (!(log_sum > 0.0)) continue;  // all tail values at the cutoff
        const double alpha = static_cast<double>(n_tail) / log_sum;

        const double log_rmin = log_values[i];
        double d = 0.0;
        for (size_t k = i; k < n; ++k) {
            const double model = 1.0 - std::exp(-alpha * (log_values[k] - log_rmin));
            const double rank = static_cast<double>(k - i);
            const double nt = static_cast<double>(n_tail);
            d = std::max(d, std::fabs((rank + 1.0) / nt - model));
            d = std::max(d, std::fabs(rank / nt - model));
        }

        const bool better =
            !have_best || d < best_d ||
            (d == best_d && (n_tail > n - best_index ||
                             (n_tail == n - best_index && r_min < sub[best_index])));
        if (better) {
            have_best = true;
            best_index = i;
            best_d = d;
        }
    }
    if (!have_best) throw std::runtime_error("fit_tail: every candidate cutoff was degenerate");

    // Recompute the winner through the public estimators so the reported fit
    // is definitionally consistent with mle_alpha / ks_statistic.
    TailFit fit;
    fit.sign = sign;
    fit.r_min = sub[best_index];
    fit.n_tail = n - best_index;
    const std::vector<double> tail(sub.begin() + static_cast<ptrdiff_t>(best_index), sub.end());
    fit.alpha = mle_alpha(tail, fit.r_min, opt.discrete_shift);
    fit.ks = ks_statistic(tail, fit.r_min, fit.alpha);
    fit.std_error = fit.alpha / std::sqrt(static_cast<double>(fit.n_tail));
    if (fit.alpha > opt.thin_tail_alpha) fit.flags.push_back("thin_tail_warning");
    return fit;
}

double gof_pvalue_bootstrap(const std::vector<double>& returns, TailSign sign, const TailFit& fit,
                            int n_bootstrap, uint64_t seed, const TailFitOptions& opt) {
    if (n_bootstrap <= 0) throw std::invalid_argument("gof bootstrap needs a positive replicate count");
    const std::vector<double> sub = signed_magnitudes(returns, sign);
    std::vector<double> body;
    for (double r : sub)
        if (r < fit.r_min) body.push_back(r);
    const double p_body = static_cast<double>(body.size()) / static_cast<double>(sub.size());

    int at_least_as_bad = 0;
    for (int b = 0; b < n_bootstrap; ++b) {
        Rng rng(sub_seed(seed, static_cast<uint64_t>(b)));
        std::vector<double> synth(sub.size());
        for (auto& v : synth) {
            if (!body.empty() && rng.uniform01() < p_body) {
                v = body[static_cast<size_t>(rng.uniform01() * static_cast<double>(body.size()))];
            } else {
                v = fit.r_min * std::pow(1.0 - rng.uniform01(), -1.0 / fit.alpha);
            }
        }
        const TailFit refit = fit_tail(synth, TailSign::positive, opt);
        if (refit.ks >= fit.ks) ++at_least_as_bad;
    }
    return static_cast<double>(at_least_as_bad) / static_cast<double>(n_bootstrap);
}

std::string tail_fits_to_csv(const std::vector<std::pair<std::string, TailFit>>& fits) {
    std::string out = "stock_id,sign,alpha,r_min,n_tail,ks,stderr,flags\n";
    for (const auto& [id, f] : fits) {
        out += id;
        out += ',';
        out += tail_sign_name(f.sign);
        out += ',';
        out += fmt_double(f.alpha);
        out += ',';
        out += fmt_double(f.r_min);
        out += ',';
        out += std::to_string(f.n_tail);
        out += ',';
        out += fmt_double(f.ks);
        out += ',';
        out += fmt_double(f.std_error);
        out += ',';
        for (size_t i = 0; i < f.flags.size(); ++i) {
            if (i) out += ';';
            out += f.flags[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace tailkit
