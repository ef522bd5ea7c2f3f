#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spillage/logspace.hpp"
#include "spillage/rng.hpp"

namespace spillage {

// Parameters of the spillage distribution: n balls, occupancy k, scale phi.
// phi = 0 and phi = +inf are legal point-mass sentinels (all mass at
// r = n - k and r = 0 respectively).
struct SpillageParams {
    int n = 1;
    int k = 0;
    double phi = 1.0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("SpillageParams: n must be >= 1");
        if (k < 0 || k > n) throw std::invalid_argument("SpillageParams: need 0 <= k <= n");
        if (std::isnan(phi) || phi < 0.0)
            throw std::invalid_argument("SpillageParams: need phi >= 0 (or inf)");
    }
    int support_size() const { return n - k + 1; }
    bool operator==(const SpillageParams&) const = default;
};

enum class MassMethod { exact, approx };

// Normalized log-pmf over the support r = 0..n-k.
struct LogMassVector {
    SpillageParams params;
    std::vector<double> logmass;
    MassMethod method = MassMethod::exact;
};

namespace detail {

// Checks log sum exp(logmass) == 0 within tolerance and clamps entries that
// exceed 0 by rounding slack. Guards against any silent NaN escape.
inline void check_normalized(std::vector<double>& lm) {
    const double z = log_sum_exp(lm);
    if (!(std::abs(z) <= 1e-12))
        throw std::runtime_error("log mass vector failed normalization check");
    for (double& v : lm) {
        if (std::isnan(v)) throw std::runtime_error("log mass vector contains NaN");
        if (v > 0.0) v = 0.0;  // rounding slack only; z-check bounds it by 1e-12
    }
}

// One column step of the mass recursion. `prev` holds column kk-1, `cur`
// receives column kk; rows 0..r_hi are filled. Recursion, for rr >= 1:
//   L(rr, kk) = log(n-kk-rr+1) - log(kk+rr) - log(phi)
//               + logsumexp(log(kk) + L(rr-1, kk), L(rr, kk-1))
inline void fill_mass_column(int n, int kk, double lphi, int r_hi,
                             const std::vector<double>& prev, std::vector<double>& cur) {
    cur.assign(cur.size(), neg_inf);
    cur[0] = log_binomial(n, kk) + (n - kk) * lphi;
    const double lkk = std::log(static_cast<double>(kk));
    for (int rr = 1; rr <= r_hi; ++rr) {
        cur[rr] = std::log(static_cast<double>(n - kk - rr + 1)) -
                  std::log(static_cast<double>(kk + rr)) - lphi +
                  log_add_exp(lkk + cur[rr - 1], prev[rr]);
    }
}

inline std::vector<double> normalized_head(const std::vector<double>& col, int len) {
    std::vector<double> lm(col.begin(), col.begin() + len);
    const double z = log_sum_exp(lm);
    for (double& v : lm) v -= z;
    check_normalized(lm);
    return lm;
}

}  // namespace detail

// Exact log-pmf by column-wise log-space recursion over occupancy 1..k;
// phi = 0 and phi = inf short-circuit to their point masses.
inline LogMassVector spillage_log_pmf(const SpillageParams& p) {
    p.validate();
    const int R = p.n - p.k;
    std::vector<double> lm(static_cast<std::size_t>(R) + 1, neg_inf);
    if (p.phi == 0.0) {
        lm[static_cast<std::size_t>(R)] = 0.0;
        return {p, std::move(lm), MassMethod::exact};
    }
    if (std::isinf(p.phi)) {
        lm[0] = 0.0;
        return {p, std::move(lm), MassMethod::exact};
    }
    const double lphi = std::log(p.phi);
    std::vector<double> prev(static_cast<std::size_t>(R) + 1, neg_inf);
    std::vector<double> cur(static_cast<std::size_t>(R) + 1, neg_inf);
    prev[0] = p.n * lphi;  // column kk = 0: point mass kernel at r = 0
    for (int kk = 1; kk <= p.k; ++kk) {
        detail::fill_mass_column(p.n, kk, lphi, R, prev, cur);
        std::swap(prev, cur);
    }
    lm = detail::normalized_head(prev, R + 1);
    return {p, std::move(lm), MassMethod::exact};
}

// One pass over the recursion yields the pmf for every occupancy 0..k_max.
// Element k equals spillage_log_pmf(n, k, phi) bit for bit: each column's
// values depend only on rows 0..n-k of columns 0..k, which both paths
// compute with identical operations.
inline std::vector<LogMassVector> spillage_log_pmf_block(int n, int k_max, double phi) {
    if (n < 1 || k_max < 0 || k_max > n)
        throw std::invalid_argument("spillage_log_pmf_block: need 1 <= n, 0 <= k_max <= n");
    if (!(phi > 0.0) || std::isinf(phi))
        throw std::invalid_argument("spillage_log_pmf_block: need 0 < phi < inf");
    const double lphi = std::log(phi);
    std::vector<LogMassVector> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    std::vector<double> prev(static_cast<std::size_t>(n) + 1, neg_inf);
    std::vector<double> cur(static_cast<std::size_t>(n) + 1, neg_inf);
    prev[0] = n * lphi;
    out.push_back({SpillageParams{n, 0, phi}, detail::normalized_head(prev, n + 1),
                   MassMethod::exact});
    for (int kk = 1; kk <= k_max; ++kk) {
        detail::fill_mass_column(n, kk, lphi, n - kk, prev, cur);
        out.push_back({SpillageParams{n, kk, phi}, detail::normalized_head(cur, n - kk + 1),
                       MassMethod::exact});
        std::swap(prev, cur);
    }
    return out;
}

namespace detail {

// Cumulative probabilities with a shared accumulation scheme so cdf and
// quantile agree bitwise. The final support point is pinned to exactly 1.
inline std::vector<double> cdf_values(const std::vector<double>& logmass) {
    std::vector<double> out(logmass.size());
    double acc = neg_inf;
    for (std::size_t r = 0; r < logmass.size(); ++r) {
        acc = log_add_exp(acc, logmass[r]);
        out[r] = std::min(std::exp(acc), 1.0);
    }
    out.back() = 1.0;
    for (std::size_t r = 1; r < out.size(); ++r) out[r] = std::max(out[r], out[r - 1]);
    return out;
}

}  // namespace detail

inline double spillage_cdf(const SpillageParams& p, int r) {
    p.validate();
    if (r < 0) return 0.0;
    if (r >= p.n - p.k) return 1.0;
    const auto lm = spillage_log_pmf(p);
    return detail::cdf_values(lm.logmass)[static_cast<std::size_t>(r)];
}

// Smallest r with cdf(r) >= q; q = 0 maps to the first support point with
// positive mass.
inline int spillage_quantile(const SpillageParams& p, double q) {
    p.validate();
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("spillage_quantile: need q in [0, 1]");
    const auto lm = spillage_log_pmf(p);
    if (q == 0.0) {
        for (std::size_t r = 0; r < lm.logmass.size(); ++r)
            if (lm.logmass[r] > neg_inf) return static_cast<int>(r);
        return 0;
    }
    const auto cdf = detail::cdf_values(lm.logmass);
    for (std::size_t r = 0; r < cdf.size(); ++r)
        if (cdf[r] >= q) return static_cast<int>(r);
    return p.n - p.k;
}

// Deterministic i.i.d. draws by inverse cdf; identical output for identical
// (params, count, seed) on any platform with the same libm.
inline std::vector<int> spillage_sample(const SpillageParams& p, std::int64_t count,
                                        std::uint64_t seed) {
    p.validate();
    if (count < 0) throw std::invalid_argument("spillage_sample: negative count");
    const auto lm = spillage_log_pmf(p);
    const auto cdf = detail::cdf_values(lm.logmass);
    SplitMix64 rng(seed);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const double u = rng.next_double();
        int r = 0;
        while (u >= cdf[static_cast<std::size_t>(r)]) ++r;
        out.push_back(r);
    }
    return out;
}

}  // namespace spillage
