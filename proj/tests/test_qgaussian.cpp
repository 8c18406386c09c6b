// q-Gaussian / Student-t density and the weighted log-density fit.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tailkit/qgaussian.hpp"
#include "tailkit/returns.hpp"
#include "tailkit/rng.hpp"
#include "tailkit/synth.hpp"

using namespace tailkit;

namespace {

// Bins shaped like the default grid, with densities read off an exact curve.
EmpiricalPdf exact_curve_pdf(double alpha, double scale) {
    EmpiricalPdf pdf;
    pdf.n_sample = 1000000;
    double lo = -8.0;
    while (lo < 8.0 - 1e-12) {
        const double hi = lo + 0.2;
        PdfBin bin;
        bin.lo = lo;
        bin.hi = hi;
        bin.center = 0.5 * (lo + hi);
        bin.count = 1000;  // equal weights
        bin.density = qgaussian_pdf(bin.center, alpha, scale);
        pdf.bins.push_back(bin);
        lo = hi;
    }
    return pdf;
}

}  // namespace

TEST_CASE("density hits the Cauchy special case") {
    CHECK(qgaussian_pdf(0.0, 1.0, 1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    CHECK(qgaussian_pdf(1.0, 1.0, 1.0) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
    CHECK_THROWS(qgaussian_pdf(0.0, -1.0, 1.0));
    CHECK_THROWS(qgaussian_pdf(0.0, 1.0, 0.0));
}

TEST_CASE("density is symmetric and unimodal") {
    for (double alpha : {0.7, 1.0, 3.0, 12.0}) {
        for (double scale : {0.5, 1.0, 2.0}) {
            double prev = qgaussian_pdf(0.0, alpha, scale);
            for (double r = 0.25; r < 30.0; r *= 1.7) {
                CHECK(qgaussian_pdf(r, alpha, scale) == qgaussian_pdf(-r, alpha, scale));
                const double cur = qgaussian_pdf(r, alpha, scale);
                CHECK(cur < prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("density integrates to one over [-1e6, 1e6]") {
    Rng rng(404);
    for (int trial = 0; trial < 12; ++trial) {
        const double alpha = std::exp(rng.uniform(0.0, std::log(30.0)));
        const double scale = rng.uniform(0.5, 2.0);
        const auto f = [&](double r) { return qgaussian_pdf(r, alpha, scale); };
        const double integral = oracle::integrate_symmetric(f, 1e6);
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("log-density tail slope matches the CCDF exponent convention") {
    // ln f(r) + (alpha+1) ln r must flatten as r grows; the residual drift at
    // r = 100 is (alpha+1) alpha / (2 L 1e4), so the 1e-3 budget needs
    // L > alpha (alpha+1) / 20.
    for (double alpha : {1.0, 3.0, 5.0}) {
        const double scale = 2.0;
        double lo = 1e300, hi = -1e300;
        for (double r : {1e2, 1e3, 1e4}) {
            const double c = qgaussian_log_pdf(r, alpha, scale) + (alpha + 1.0) * std::log(r);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        CHECK(hi - lo < 1e-3);
    }
}

TEST_CASE("variance identity: var = alpha / (L (alpha - 2))") {
    for (double alpha : {3.0, 4.0, 6.0, 10.0}) {
        for (double scale : {0.5, 1.0, 3.0}) {
            const auto second_moment = [&](double r) {
                return r * r * qgaussian_pdf(r, alpha, scale);
            };
            const double var = oracle::integrate_symmetric(second_moment, 1e9);
            CHECK(var == doctest::Approx(alpha / (scale * (alpha - 2.0))).epsilon(1e-6));
        }
    }
}

TEST_CASE("noiseless alpha=1, L=1 curve is recovered almost exactly") {
    const auto fit = fit_qgaussian(exact_curve_pdf(1.0, 1.0));
    CHECK(fit.converged);
    CHECK(std::fabs(fit.alpha - 1.0) < 0.01);
    CHECK(std::fabs(fit.scale - 1.0) < 0.01);
    CHECK(fit.objective < 1e-8);
    CHECK(!fit.near_gaussian);
}

TEST_CASE("fit needs enough populated bins") {
    EmpiricalPdf pdf = exact_curve_pdf(3.0, 1.0);
    for (auto& b : pdf.bins) b.count = 1;  // all below the count floor
    CHECK_THROWS(fit_qgaussian(pdf));
}

TEST_CASE("unit-variance mode pins the scale at alpha/(alpha-2)") {
    const auto sample = gen_student_t(5.0, 300000, 51);
    const auto std_sample = standardize("t5", sample);
    QGaussianFitOptions opt;
    opt.unit_variance = true;
    const auto fit = fit_qgaussian(estimate_pdf(std_sample.values), opt);
    CHECK(fit.scale == doctest::Approx(fit.alpha / (fit.alpha - 2.0)).epsilon(1e-12));
    CHECK(fit.alpha == doctest::Approx(5.0).epsilon(0.25));
}

TEST_CASE("standardized Student-t(3) draws fit back to alpha near 3") {
    const auto sample = gen_student_t(3.0, 300000, 40);
    const auto std_sample = standardize("t3", sample);
    const auto fit = fit_qgaussian(estimate_pdf(std_sample.values));
    CHECK(fit.converged);
    CHECK(fit.alpha > 2.7);
    CHECK(fit.alpha < 3.3);
    // Unit-variance data implies L ~ alpha/(alpha-2) up to fit noise.
    CHECK(fit.scale == doctest::Approx(fit.alpha / (fit.alpha - 2.0)).epsilon(0.15));
}

TEST_CASE("standard normal draws run the exponent high with a warning") {
    Rng rng(77);
    std::vector<double> sample(1000000);
    for (auto& v : sample) v = rng.normal();
    const auto fit = fit_qgaussian(estimate_pdf(sample));
    CHECK(fit.alpha > 20.0);
    CHECK(fit.near_gaussian);
}
