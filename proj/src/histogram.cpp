#include "tailkit/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tailkit/io.hpp"

namespace tailkit {

const char* tail_sign_name(TailSign s) { return s == TailSign::positive ? "positive" : "negative"; }

EmpiricalPdf estimate_pdf(const std::vector<double>& sample, const BinningConfig& cfg) {
    if (sample.size() < cfg.min_sample)
        throw std::runtime_error("estimate_pdf: sample of " + std::to_string(sample.size()) +
                                 " is below the minimum of " + std::to_string(cfg.min_sample));
    if (!(cfg.core_bin_width > 0.0) || !(cfg.core_half_range > 0.0) || !(cfg.log_ratio > 1.0))
        throw std::invalid_argument("estimate_pdf: bad binning config");

    double max_abs = 0.0;
    for (double r : sample) {
        if (!std::isfinite(r)) throw std::runtime_error("estimate_pdf: non-finite sample value");
        max_abs = std::max(max_abs, std::fabs(r));
    }

    // Positive half-edges: 0, w, 2w, ..., core_half_range, then * log_ratio
    // until the sample is covered.
    std::vector<double> half_edges;
    const int n_core = static_cast<int>(std::lround(cfg.core_half_range / cfg.core_bin_width));
    for (int i = 0; i <= n_core; ++i) half_edges.push_back(i * cfg.core_bin_width);
    half_edges.back() = cfg.core_half_range;
    while (half_edges.back() < max_abs) half_edges.push_back(half_edges.back() * cfg.log_ratio);

    const size_t m = half_edges.size() - 1;  // bins per side
    std::vector<double> edges(2 * m + 1);
    for (size_t i = 0; i <= m; ++i) {
        edges[m + i] = half_edges[i];
        edges[m - i] = -half_edges[i];
    }

    EmpiricalPdf pdf;
    pdf.n_sample = sample.size();
    pdf.bins.resize(2 * m);
    for (size_t b = 0; b < 2 * m; ++b) {
        auto& bin = pdf.bins[b];
        bin.lo = edges[b];
        bin.hi = edges[b + 1];
        const bool wing = bin.lo >= cfg.core_half_range || bin.hi <= -cfg.core_half_range;
        if (wing)
            bin.center = (bin.lo > 0.0 ? 1.0 : -1.0) * std::sqrt(bin.lo * bin.hi);
        else
            bin.center = 0.5 * (bin.lo + bin.hi);
    }

    for (double r : sample) {
        // [lo, hi) everywhere, closed at the outermost edges.
        auto it = std::upper_bound(edges.begin(), edges.end(), r);
        size_t b;
        if (it == edges.begin())
            b = 0;  // r == -max edge (upper_bound can't return begin otherwise)
        else if (it == edges.end())
            b = 2 * m - 1;
        else
            b = static_cast<size_t>(it - edges.begin()) - 1;
        pdf.bins[b].count += 1;
    }

    const double n = static_cast<double>(pdf.n_sample);
    for (auto& bin : pdf.bins)
        bin.density = static_cast<double>(bin.count) / (n * (bin.hi - bin.lo));
    return pdf;
}

std::vector<CcdfPoint> ccdf(const std::vector<double>& sample, TailSign sign) {
    std::vector<double> sub;
    for (double r : sample) {
        if (sign == TailSign::positive && r > 0.0) sub.push_back(r);
        if (sign == TailSign::negative && r < 0.0) sub.push_back(-r);
    }
    if (sub.empty())
        throw std::runtime_error(std::string("ccdf: no ") + tail_sign_name(sign) +
                                 " values in the sample");
    std::sort(sub.begin(), sub.end());
    const double n = static_cast<double>(sub.size());
    std::vector<CcdfPoint> points;
    for (size_t i = 0; i < sub.size();) {
        size_t j = i;
        while (j < sub.size() && sub[j] == sub[i]) ++j;
        points.push_back({sub[i], static_cast<double>(sub.size() - i) / n});
        i = j;
    }
    return points;
}

std::string pdf_to_csv(const EmpiricalPdf& pdf) {
    std::string out = "bin_center,density,count\n";
    for (const auto& b : pdf.bins) {
        out += fmt_double(b.center);
        out += ',';
        out += fmt_double(b.density);
        out += ',';
        out += std::to_string(b.count);
        out += '\n';
    }
    return out;
}

std::string ccdf_to_csv(const std::vector<CcdfPoint>& points) {
    std::string out = "r,ccdf\n";
    for (const auto& p : points) {
        out += fmt_double(p.r);
        out += ',';
        out += fmt_double(p.p);
        out += '\n';
    }
    return out;
}

}  // namespace tailkit
