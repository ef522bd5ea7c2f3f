#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spillage/distribution.hpp"
#include "spillage/logspace.hpp"

namespace spillage {

// g(alpha) = (1 + e^alpha) log(1 + e^-alpha): strictly decreasing from +inf
// (alpha -> -inf) to 1 (alpha -> +inf). The saddle point alpha(r, k) solves
// g(alpha) = 1 + r/k.
inline double bender_g(double alpha) { return (1.0 + std::exp(alpha)) * log1p_exp(-alpha); }

struct AlphaSolve {
    int r = 0;
    int k = 1;
    double alpha = 0.0;  // +inf sentinel iff r = 0
    double residual = 0.0;
};

// Bracketed bisection on [-40, 40] (left edge doubled outward as needed)
// refined until |g(alpha) - (1 + r/k)| <= 1e-12. Targets at or below g(40)
// map to the +inf sentinel, which can only happen at r = 0: g(40) - 1 is
// below one ulp of 1, while 1 + r/k for r >= 1 exceeds 1 at any feasible k.
inline AlphaSolve solve_alpha(int r, int k) {
    if (k < 1) throw std::invalid_argument("solve_alpha: need k >= 1");
    if (r < 0) throw std::invalid_argument("solve_alpha: need r >= 0");
    const double target = 1.0 + static_cast<double>(r) / k;
    double hi = 40.0;
    if (target <= bender_g(hi)) return {r, k, pos_inf, 0.0};
    double lo = -40.0;
    while (bender_g(lo) < target) lo *= 2.0;
    double best = lo;
    double best_res = std::abs(bender_g(lo) - target);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double g = bender_g(mid);
        const double res = std::abs(g - target);
        if (res < best_res) {
            best = mid;
            best_res = res;
        }
        if (res <= 1e-12 && best_res <= 1e-12) break;
        if (g > target)
            lo = mid;
        else
            hi = mid;
    }
    if (!(best_res <= 1e-12))
        throw std::runtime_error("solve_alpha: bisection failed to reach tolerance");
    return {r, k, best, best_res};
}

// Non-recursive pmf via Bender's saddle-point approximation of the Stirling
// numbers: S^(k+r, k) = (k+r)!/k! e^(-alpha k) /
//                       (L^(k+r) sqrt(2 pi (k+r)) sqrt(L - r/k)),
// L = log(1 + e^-alpha), substituted into the mass kernel with r-independent
// factors dropped. The r = 0 entry uses the exact kernel term (S(k,k) = 1,
// and alpha has no finite solution there) under the same constant scaling.
// Degenerate regimes (k = 0, phi outside (0, inf), single-point support)
// fall back to the exact path.
inline LogMassVector approx_log_pmf(const SpillageParams& p) {
    p.validate();
    if (p.k == 0 || p.n == p.k || !(p.phi > 0.0) || std::isinf(p.phi))
        return spillage_log_pmf(p);
    const int R = p.n - p.k;
    const double lphi = std::log(p.phi);
    std::vector<double> lk(static_cast<std::size_t>(R) + 1, neg_inf);
    lk[0] = -log_factorial(R) + R * lphi + 0.5 * std::log(2.0 * std::numbers::pi);
    for (int r = 1; r <= R; ++r) {
        const AlphaSolve a = solve_alpha(r, p.k);
        const double L = log1p_exp(-a.alpha);
        const double bracket = L - static_cast<double>(r) / p.k;
        if (!(bracket > 0.0))
            throw std::runtime_error("approx_log_pmf: saddle bracket not positive");
        lk[static_cast<std::size_t>(r)] =
            -0.5 * std::log(static_cast<double>(p.k + r)) - log_factorial(R - r) -
            a.alpha * p.k + (R - r) * lphi - (p.k + r) * std::log(L) - 0.5 * std::log(bracket);
    }
    const double z = log_sum_exp(lk);
    for (double& v : lk) v -= z;
    detail::check_normalized(lk);
    return {p, std::move(lk), MassMethod::approx};
}

}  // namespace spillage
