#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "spillage/distribution.hpp"
#include "spillage/moments.hpp"

using namespace spillage;

namespace {

// Independent route: central moments by direct summation over the exact pmf.
struct SummedMoments {
    double mean, variance;
    bool degenerate;
    double skewness, kurtosis;
};

SummedMoments moments_by_summation(const SpillageParams& p) {
    const auto lm = spillage_log_pmf(p);
    std::vector<double> prob(lm.logmass.size());
    for (std::size_t r = 0; r < prob.size(); ++r) prob[r] = std::exp(lm.logmass[r]);
    double mean = 0.0;
    for (std::size_t r = 0; r < prob.size(); ++r) mean += static_cast<double>(r) * prob[r];
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::size_t r = 0; r < prob.size(); ++r) {
        const double d = static_cast<double>(r) - mean;
        m2 += d * d * prob[r];
        m3 += d * d * d * prob[r];
        m4 += d * d * d * d * prob[r];
    }
    if (m2 <= 0.0) return {mean, 0.0, true, 0.0, 0.0};
    return {mean, m2, false, m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

void expect_rel(double got, double want, double tol, const char* what) {
    // relative comparison with an absolute floor for exact-zero targets
    const double bound = std::max(tol * std::max(std::abs(got), std::abs(want)), 1e-12);
    EXPECT_LE(std::abs(got - want), bound) << what << ": got " << got << " want " << want;
}

}  // namespace

TEST(HValues, ReferenceRatios) {
    const auto h = h_values({5, 2, 1.0}, 4);
    EXPECT_EQ(h.h[0], 1.0);
    EXPECT_NEAR(h.h[1], 5.0 / 18, 1e-14);  // 25/90
    EXPECT_NEAR(h.h[2], 1.0 / 15, 1e-14);  // 6/90
    EXPECT_GE(h.h[3], 0.0);
}

TEST(HValues, VanishAboveSupportAndAtTinyScale) {
    const auto h = h_values({4, 2, 1.0}, 4);
    EXPECT_EQ(h.h[3], 0.0);  // S(1, 2, phi) = 0
    EXPECT_EQ(h.h[4], 0.0);
    const auto tiny = h_values({6, 3, 1e-9}, 2);
    EXPECT_LT(tiny.h[1], 1e-8);
    EXPECT_THROW(h_values({5, 2, 0.0}, 2), std::invalid_argument);
    EXPECT_THROW(h_values({5, 2, pos_inf}, 2), std::invalid_argument);
}

TEST(ExactMoments, ReferenceCase) {
    const auto m = exact_moments({5, 2, 1.0});
    EXPECT_NEAR(m.mean, 29.0 / 18, 1e-14);
    EXPECT_NEAR(m.variance, 257.0 / 324, 1e-13);
    ASSERT_TRUE(m.skewness.has_value());
    ASSERT_TRUE(m.kurtosis.has_value());
    EXPECT_NEAR(*m.skewness, -0.1009702997686969, 1e-12);
    EXPECT_NEAR(*m.kurtosis, 2.2635467607382400, 1e-12);
}

TEST(ExactMoments, DegenerateRegimes) {
    const auto zero = exact_moments({9, 4, 0.0});
    EXPECT_EQ(zero.mean, 5.0);
    EXPECT_EQ(zero.variance, 0.0);
    EXPECT_FALSE(zero.skewness.has_value());
    EXPECT_FALSE(zero.kurtosis.has_value());

    const auto inf = exact_moments({9, 4, pos_inf});
    EXPECT_EQ(inf.mean, 0.0);
    EXPECT_EQ(inf.variance, 0.0);

    const auto diag = exact_moments({6, 6, 3.0});
    EXPECT_EQ(diag.mean, 0.0);
    EXPECT_EQ(diag.variance, 0.0);
    EXPECT_FALSE(diag.skewness.has_value());

    const auto kzero = exact_moments({6, 0, 3.0});
    EXPECT_EQ(kzero.mean, 0.0);
    EXPECT_EQ(kzero.variance, 0.0);
}

TEST(ExactMoments, AgreeWithDirectSummation) {
    for (int n : {2, 5, 10, 25, 50}) {
        const std::set<int> ks{1, n / 2, n - 1};
        for (int k : ks) {
            if (k < 0 || k > n) continue;
            for (double phi : {0.5, 5.0, 50.0}) {
                const SpillageParams p{n, k, phi};
                const auto got = exact_moments(p);
                const auto want = moments_by_summation(p);
                expect_rel(got.mean, want.mean, 1e-10, "mean");
                expect_rel(got.variance, want.variance, 1e-10, "variance");
                EXPECT_EQ(got.skewness.has_value(), !want.degenerate);
                if (!want.degenerate) {
                    expect_rel(*got.skewness, want.skewness, 1e-10, "skewness");
                    expect_rel(*got.kurtosis, want.kurtosis, 1e-8, "kurtosis");
                }
            }
        }
    }
}

TEST(ExactMoments, UniversalKurtosisBound) {
    for (int n : {6, 17, 33}) {
        for (int k : {1, n / 2, n - 1}) {
            for (double phi : {0.5, 5.0, 50.0}) {
                const auto m = exact_moments({n, k, phi});
                if (m.skewness) {
                    EXPECT_GE(*m.kurtosis, 1.0 + *m.skewness * *m.skewness - 1e-9);
                }
            }
        }
    }
}

TEST(AsymptoticMoments, FigureParameterPoint) {
    const auto a = asymptotic_moments({100, 30, 40.0});
    EXPECT_NEAR(a.psi, 4.0 / 7, 1e-15);
    EXPECT_NEAR(a.mean, 30.0, 1e-12);
    EXPECT_NEAR(a.variance, 120.0 / 7, 1e-12);
    ASSERT_TRUE(a.skewness.has_value());
    EXPECT_NEAR(*a.skewness, 2.0 * (4.0 / 7 - 0.5) / std::sqrt(120.0 / 7), 1e-15);
}

TEST(AsymptoticMoments, EdgeCases) {
    const auto sym = asymptotic_moments({40, 10, 10.0});  // psi = 1/2
    EXPECT_EQ(*sym.skewness, 0.0);

    const auto zero = asymptotic_moments({12, 5, 0.0});
    EXPECT_EQ(zero.psi, 0.0);
    EXPECT_EQ(zero.mean, 7.0);
    EXPECT_EQ(zero.variance, 0.0);
    EXPECT_FALSE(zero.skewness.has_value());

    const auto inf = asymptotic_moments({12, 5, pos_inf});
    EXPECT_EQ(inf.psi, 1.0);
    EXPECT_EQ(inf.variance, 0.0);

    EXPECT_THROW(asymptotic_moments({12, 0, 0.0}), std::invalid_argument);
}

TEST(AsymptoticMoments, HOneConvergesToPsi) {
    // True decay is geometric with ratio (k-1+phi)/(k+phi) = 0.9; by n = 400
    // it sits below the double-precision floor of the log-table entries, so
    // the tail is asserted against that floor rather than strict decrease.
    const double psi = 0.5;
    std::vector<double> err;
    for (int n : {50, 100, 200, 400, 800, 1600})
        err.push_back(std::abs(h_values({n, 5, 5.0}, 1).h[1] - psi));
    EXPECT_LT(err[1], err[0]);
    EXPECT_LT(err[2], err[1]);
    EXPECT_LT(err[3], err[2]);
    EXPECT_LE(err[3], 1e-12);
    EXPECT_LE(err[4], 1e-12);
    EXPECT_LE(err[5], 1e-12);
}
