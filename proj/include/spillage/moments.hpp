#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spillage/distribution.hpp"
#include "spillage/stirling.hpp"

namespace spillage {

// Stirling ratios H_l = phi^l S(n-l, k, phi) / S(n, k, phi); H_0 = 1 and
// H_l = 0 whenever n - l < k.
struct HVector {
    std::vector<double> h;  // h[l], l = 0..ell_max
};

inline HVector h_values(const SpillageParams& p, int ell_max) {
    p.validate();
    if (!(p.phi > 0.0) || std::isinf(p.phi))
        throw std::invalid_argument("h_values: need 0 < phi < inf");
    if (ell_max < 0) throw std::invalid_argument("h_values: negative ell_max");
    const auto table = noncentral_stirling_log_table(p.n, p.k, p.phi);
    const double lphi = std::log(p.phi);
    const double base = table.entry(p.n, p.k);
    HVector out;
    out.h.assign(static_cast<std::size_t>(ell_max) + 1, 0.0);
    out.h[0] = 1.0;
    for (int l = 1; l <= ell_max; ++l) {
        out.h[static_cast<std::size_t>(l)] =
            p.n - l < p.k ? 0.0 : std::exp(l * lphi + table.entry(p.n - l, p.k) - base);
    }
    return out;
}

// Central moments; skewness and kurtosis are reported as disengaged
// optionals (rather than NaN or +-inf) when the distribution is degenerate.
struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
};

namespace detail {

// Cumulant algebra in H_1..H_4. Heavy cancellation (terms scale like n^4 H^4
// against an O(1) result) makes 53-bit inputs insufficient for tight
// tolerances, so the ladder and the algebra both run in long double.
inline MomentSet moments_from_h_ladder(int n, int k, double phi) {
    const auto col = noncentral_log_column<long double>(n, k, static_cast<long double>(phi));
    const long double lphi = std::log(static_cast<long double>(phi));
    const long double base = col[static_cast<std::size_t>(n)];
    long double H[5] = {1.0L, 0.0L, 0.0L, 0.0L, 0.0L};
    for (int l = 1; l <= 4; ++l) {
        if (n - l >= k)
            H[l] = std::exp(l * lphi + col[static_cast<std::size_t>(n - l)] - base);
    }
    const long double N = n;
    const long double H1 = H[1], H2 = H[2], H3 = H[3], H4 = H[4];
    const long double mean = (N - k) - N * H1;
    const long double var = N * H1 - N * N * H1 * H1 + N * (N - 1) * H2;
    MomentSet out;
    out.mean = static_cast<double>(mean);
    out.variance = var > 0.0L ? static_cast<double>(var) : 0.0;
    if (!(var > 0.0L)) return out;
    const long double k3 = -N * H1 + 3 * N * N * H1 * H1 - 3 * N * (N - 1) * H2 -
                           2 * N * N * N * H1 * H1 * H1 +
                           3 * N * N * (N - 1) * H1 * H2 - N * (N - 1) * (N - 2) * H3;
    const long double k4 = N * H1 - 7 * N * N * H1 * H1 + 7 * N * (N - 1) * H2 +
                           12 * N * N * N * H1 * H1 * H1 -
                           18 * N * N * (N - 1) * H1 * H2 +
                           6 * N * (N - 1) * (N - 2) * H3 -
                           6 * N * N * N * N * H1 * H1 * H1 * H1 +
                           12 * N * N * N * (N - 1) * H1 * H1 * H2 -
                           3 * N * N * (N - 1) * (N - 1) * H2 * H2 -
                           4 * N * N * (N - 1) * (N - 2) * H1 * H3 +
                           N * (N - 1) * (N - 2) * (N - 3) * H4;
    const long double sd = std::sqrt(var);
    out.skewness = static_cast<double>(k3 / (var * sd));
    out.kurtosis = static_cast<double>(3.0L + k4 / (var * var));
    return out;
}

}  // namespace detail

inline MomentSet exact_moments(const SpillageParams& p) {
    p.validate();
    if (p.phi == 0.0) return {static_cast<double>(p.n - p.k), 0.0, std::nullopt, std::nullopt};
    if (std::isinf(p.phi)) return {0.0, 0.0, std::nullopt, std::nullopt};
    if (p.n == p.k) return {0.0, 0.0, std::nullopt, std::nullopt};
    if (p.k == 0) return {0.0, 0.0, std::nullopt, std::nullopt};  // mass sits at r = 0
    return detail::moments_from_h_ladder(p.n, p.k, p.phi);
}

// Large-n limits: H_l -> psi^l with psi = phi / (k + phi); the distribution
// approaches Bin(n - k, 1 - psi).
struct AsymptoticMomentSet {
    double psi = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
};

inline AsymptoticMomentSet asymptotic_moments(const SpillageParams& p) {
    p.validate();
    if (p.k == 0 && p.phi == 0.0)
        throw std::invalid_argument("asymptotic_moments: psi indeterminate at k = phi = 0");
    const double psi = std::isinf(p.phi) ? 1.0 : p.phi / (p.k + p.phi);
    const int R = p.n - p.k;
    AsymptoticMomentSet out;
    out.psi = psi;
    out.mean = R * (1.0 - psi);
    out.variance = R * psi * (1.0 - psi);
    if (out.variance > 0.0) {
        out.skewness = 2.0 * (psi - 0.5) / std::sqrt(out.variance);
        out.kurtosis = 3.0 + (1.0 - 6.0 * psi * (1.0 - psi)) / out.variance;
    }
    return out;
}

}  // namespace spillage
