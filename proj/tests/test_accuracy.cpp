#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "spillage/accuracy.hpp"

using namespace spillage;

namespace {

LogMassVector make_mass(const SpillageParams& p, const std::vector<double>& probs,
                        MassMethod method) {
    LogMassVector lm{p, {}, method};
    for (double v : probs) lm.logmass.push_back(std::log(v));
    return lm;
}

}  // namespace

TEST(Lrmse, IdenticalVectorsGiveNegInf) {
    const auto lm = spillage_log_pmf({6, 2, 1.5});
    EXPECT_EQ(lrmse(lm, lm), neg_inf);
    EXPECT_EQ(max_abs_diff(lm, lm), 0.0);
}

TEST(Lrmse, ConstantDifferenceIsLogD) {
    const SpillageParams p{4, 1, 1.0};
    const double d = 0.01;
    const auto a = make_mass(p, {0.4, 0.3, 0.2, 0.1}, MassMethod::exact);
    const auto b = make_mass(p, {0.4 + d, 0.3 + d, 0.2 + d, 0.1 + d}, MassMethod::approx);
    EXPECT_NEAR(lrmse(a, b), std::log(d), 1e-12);
    EXPECT_NEAR(max_abs_diff(a, b), d, 1e-15);
}

TEST(Lrmse, BoundedByMaxAbsDiff) {
    for (int n : {20, 60, 120}) {
        const SpillageParams p{n, n / 3, 0.8 * n / 3};
        const auto e = spillage_log_pmf(p);
        const auto a = approx_log_pmf(p);
        const double l = lrmse(e, a);
        const double m = max_abs_diff(e, a);
        ASSERT_GT(m, 0.0);
        EXPECT_LE(l, std::log(m) + 1e-12);
    }
}

TEST(Lrmse, MismatchedSupportsThrow) {
    const auto a = spillage_log_pmf({6, 2, 1.5});
    const auto b = spillage_log_pmf({6, 3, 1.5});
    EXPECT_THROW(lrmse(a, b), std::invalid_argument);
    EXPECT_THROW(max_abs_diff(a, b), std::invalid_argument);
}

TEST(CompareEngines, BenchmarkPointRecord) {
    const auto rec = compare_engines({100, 30, 40.0});
    EXPECT_NEAR(rec.psi, 4.0 / 7, 1e-15);
    EXPECT_NEAR(rec.log_asym_variance, std::log(120.0 / 7), 1e-13);
    EXPECT_TRUE(std::isfinite(rec.lrmse));
    EXPECT_LE(rec.lrmse, std::log(rec.max_abs_diff));
    EXPECT_GT(rec.runtime_exact_ms, 0.0);
}

TEST(Sweep, SmallGridProducesFiniteRecords) {
    const auto recs = sweep({{10, 20}, {0.5}, {1.0}}, 2000, false);
    ASSERT_EQ(recs.size(), 2u);
    for (const auto& r : recs) {
        EXPECT_TRUE(std::isfinite(r.lrmse));
        EXPECT_TRUE(std::isfinite(r.max_abs_diff));
        EXPECT_TRUE(std::isfinite(r.psi));
        EXPECT_TRUE(std::isfinite(r.log_asym_variance));
        EXPECT_EQ(r.runtime_exact_ms, 0.0);
    }
}

TEST(Sweep, DiagonalPointIsPerfect) {
    const auto recs = sweep({{8}, {1.0}, {1.0}}, 2000, false);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].k, 8);
    EXPECT_EQ(recs[0].lrmse, neg_inf);
    EXPECT_EQ(recs[0].max_abs_diff, 0.0);
    EXPECT_EQ(recs[0].log_asym_variance, neg_inf);
}

TEST(Sweep, RefusesOversizedGrid) {
    EXPECT_THROW(sweep({{3000}, {0.5}, {1.0}}, 2000, false), std::invalid_argument);
    EXPECT_NO_THROW(sweep({{3000}, {0.002}, {1.0}}, 3000, false));
    EXPECT_THROW(sweep({{}, {0.5}, {1.0}}, 2000, false), std::invalid_argument);
}

TEST(Sweep, DeterministicWithoutTiming) {
    const SweepGrid grid{{10, 50, 200}, {0.3, 0.7}, {0.25, 1.0, 4.0}};
    const auto a = sweep(grid, 2000, false);
    const auto b = sweep(grid, 2000, false);
    ASSERT_EQ(a.size(), b.size());
    std::ostringstream csv_a, csv_b;
    write_accuracy_csv(csv_a, a);
    write_accuracy_csv(csv_b, b);
    EXPECT_EQ(csv_a.str(), csv_b.str());
}

TEST(Sweep, ErrorNonincreasingAtFixedRatios) {
    std::vector<AccuracyRecord> recs =
        sweep({{100, 200, 400, 800, 1600}, {0.3}, {4.0 / 3.0}}, 2000, false);
    for (std::size_t i = 1; i < recs.size(); ++i)
        EXPECT_LE(recs[i].lrmse, recs[i - 1].lrmse) << "n = " << recs[i].n;
}

TEST(Correlation, SyntheticPerfectAnticorrelation) {
    std::vector<AccuracyRecord> recs;
    for (int i = 0; i < 12; ++i) {
        AccuracyRecord r;
        r.log_asym_variance = 0.37 * i - 2.0;
        r.lrmse = -r.log_asym_variance;
        recs.push_back(r);
    }
    EXPECT_NEAR(variance_accuracy_correlation(recs), -1.0, 1e-12);
}

TEST(Correlation, RefusesDegenerateInputs) {
    std::vector<AccuracyRecord> few(5);
    for (auto& r : few) {
        r.lrmse = -1.0;
        r.log_asym_variance = 1.0;
    }
    EXPECT_THROW(variance_accuracy_correlation(few), std::invalid_argument);
    std::vector<AccuracyRecord> flat(12);
    for (auto& r : flat) {
        r.lrmse = -1.0;
        r.log_asym_variance = 1.0;
    }
    EXPECT_THROW(variance_accuracy_correlation(flat), std::invalid_argument);
}

TEST(FormatDouble, RoundTripAndSentinels) {
    EXPECT_EQ(format_double(neg_inf), "-inf");
    EXPECT_EQ(format_double(pos_inf), "inf");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(std::stod(format_double(120.0 / 7)), 120.0 / 7);
}

TEST(AccuracyCsv, GoldenRow) {
    AccuracyRecord r;
    r.n = 8;
    r.k = 8;
    r.phi = 8.0;
    r.psi = 0.5;
    r.log_asym_variance = neg_inf;
    r.lrmse = neg_inf;
    r.max_abs_diff = 0.0;
    std::ostringstream os;
    write_accuracy_csv(os, std::span<const AccuracyRecord>(&r, 1));
    EXPECT_EQ(os.str(),
              "n,k,phi,psi,log_asym_variance,lrmse,max_abs_diff,"
              "runtime_exact_ms,runtime_approx_ms\n"
              "8,8,8,0.5,-inf,-inf,0,0,0\n");
}
