#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spillage/distribution.hpp"
#include "spillage/logspace.hpp"
#include "spillage/stirling.hpp"

namespace spillage {

// Extended balls-in-bins model: n balls thrown uniformly into m bins, each
// ball occupying its bin with probability theta. Induces the scale parameter
// phi = m (1 - theta) / theta.
struct OccupancyParams {
    int n = 1;
    int m = 1;
    double theta = 1.0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("OccupancyParams: n must be >= 1");
        if (m < 1) throw std::invalid_argument("OccupancyParams: m must be >= 1");
        if (!(theta >= 0.0 && theta <= 1.0))
            throw std::invalid_argument("OccupancyParams: need theta in [0, 1]");
    }
    double phi() const { return theta > 0.0 ? m * (1.0 - theta) / theta : pos_inf; }
    int k_max() const { return std::min(n, m); }
    bool operator==(const OccupancyParams&) const = default;
};

// Log-pmf of the occupancy number over k = 0..min(n, m):
//   Occ(k | n, m, theta) = (theta^n / m^n) (m)_k S(n, k, m (1 - theta) / theta).
struct OccLogMass {
    OccupancyParams params;
    std::vector<double> logmass;
};

inline OccLogMass occupancy_log_pmf(const OccupancyParams& p) {
    p.validate();
    const int kmax = p.k_max();
    std::vector<double> lm(static_cast<std::size_t>(kmax) + 1, neg_inf);
    if (p.theta == 0.0) {
        lm[0] = 0.0;  // no ball ever occupies
        return {p, std::move(lm)};
    }
    const auto table = noncentral_stirling_log_table(p.n, kmax, p.phi());
    const double shift = p.n * std::log(p.theta) - p.n * std::log(static_cast<double>(p.m));
    for (int k = 0; k <= kmax; ++k)
        lm[static_cast<std::size_t>(k)] =
            shift + log_falling_factorial(p.m, k) + table.entry(p.n, k);
    // Normalization is a property of the formula; assert it rather than impose it.
    const double z = log_sum_exp(lm);
    if (!(std::abs(z) <= 1e-12))
        throw std::runtime_error("occupancy_log_pmf: mass failed normalization check");
    return {p, std::move(lm)};
}

// log Bin(x | n, theta) with the 0 log 0 = 0 convention at theta in {0, 1}.
inline double binomial_log_pmf(int n, double theta, int x) {
    if (n < 0) throw std::invalid_argument("binomial_log_pmf: negative n");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("binomial_log_pmf: need theta in [0, 1]");
    if (x < 0 || x > n) return neg_inf;
    const double lo = x == 0 ? 0.0 : x * std::log(theta);
    const double hi = x == n ? 0.0 : (n - x) * std::log1p(-theta);
    return log_binomial(n, x) + lo + hi;
}

// Max-over-x residual of the occupancy mixture identity
//   Bin(x | n, theta) = sum_k Spillage(x - k | n, k, phi) Occ(k | n, m, theta).
inline double mixture_binomial_residual(int n, int m, double theta) {
    const OccupancyParams p{n, m, theta};
    p.validate();
    const auto occ = occupancy_log_pmf(p);
    const int kmax = p.k_max();
    const double phi = p.phi();
    std::vector<LogMassVector> spill;
    if (phi > 0.0 && !std::isinf(phi)) {
        spill = spillage_log_pmf_block(n, kmax, phi);
    } else {
        spill.reserve(static_cast<std::size_t>(kmax) + 1);
        for (int k = 0; k <= kmax; ++k) spill.push_back(spillage_log_pmf({n, k, phi}));
    }
    double worst = 0.0;
    for (int x = 0; x <= n; ++x) {
        double mix = 0.0;
        for (int k = 0; k <= std::min(x, kmax); ++k)
            mix += std::exp(spill[static_cast<std::size_t>(k)]
                                .logmass[static_cast<std::size_t>(x - k)] +
                            occ.logmass[static_cast<std::size_t>(k)]);
        worst = std::max(worst, std::abs(mix - std::exp(binomial_log_pmf(n, theta, x))));
    }
    return worst;
}

// The spillage pmf as a ratio of classical-occupancy and binomial masses,
//   Spillage(r | n, k, phi) = Occ(k | k+r, m) Bin(k+r | n, theta) / (sum over r*),
// with theta = m / (m + phi). Any integer m >= max(k, 1) must give the same
// vector, which makes m-invariance a strong cross-check of the engine.
inline LogMassVector spillage_via_ratio(int n, int k, double phi, int m) {
    const SpillageParams params{n, k, phi};
    params.validate();
    if (!(phi > 0.0) || std::isinf(phi))
        throw std::invalid_argument("spillage_via_ratio: need 0 < phi < inf");
    if (m < std::max(k, 1))
        throw std::invalid_argument("spillage_via_ratio: need m >= max(k, 1)");
    const double theta = m / (m + phi);
    const auto central = noncentral_stirling_log_table(n, k, 0.0);
    const double lff = log_falling_factorial(m, k);
    const double lm_log = std::log(static_cast<double>(m));
    const int R = n - k;
    std::vector<double> w(static_cast<std::size_t>(R) + 1, neg_inf);
    for (int r = 0; r <= R; ++r)
        w[static_cast<std::size_t>(r)] = lff + central.entry(k + r, k) - (k + r) * lm_log +
                                         binomial_log_pmf(n, theta, k + r);
    const double z = log_sum_exp(w);
    for (double& v : w) v -= z;
    detail::check_normalized(w);
    return {params, std::move(w), MassMethod::exact};
}

}  // namespace spillage
