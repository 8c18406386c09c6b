// Empirical probability density on a hybrid grid: uniform bins through the
// body, log-widening bins in the wings, mirrored about zero. The linear core
// resolves the tick-size structure near r = 0; the log wings keep tail bins
// populated.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailkit {

enum class TailSign { positive, negative };

const char* tail_sign_name(TailSign s);

struct PdfBin {
    double lo = 0.0;
    double hi = 0.0;
    double center = 0.0;  // midpoint in the core, geometric mean in the wings
    uint64_t count = 0;
    double density = 0.0;  // count / (N * width)
};

struct EmpiricalPdf {
    std::vector<PdfBin> bins;  // edges strictly increasing, zero-count bins kept
    uint64_t n_sample = 0;
};

struct BinningConfig {
    double core_half_range = 5.0;
    double core_bin_width = 0.1;
    double log_ratio = 1.2;  // wing bin edge ratio
    uint64_t min_sample = 100;
};

EmpiricalPdf estimate_pdf(const std::vector<double>& sample, const BinningConfig& cfg = {});

struct CcdfPoint {
    double r = 0.0;
    double p = 0.0;  // P(|r'| >= r) within the signed subsample
};

// Exact empirical complementary CDF of the positive subsample (r > 0) or of
// the magnitudes of the negative subsample, one point per distinct value,
// strictly decreasing in p.
std::vector<CcdfPoint> ccdf(const std::vector<double>& sample, TailSign sign);

// Plot-data emission. `pdf_to_csv` columns: bin_center,density,count;
// `ccdf_to_csv` columns: r,ccdf.
std::string pdf_to_csv(const EmpiricalPdf& pdf);
std::string ccdf_to_csv(const std::vector<CcdfPoint>& points);

}  // namespace tailkit
