#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spillage/logspace.hpp"

namespace spillage {

namespace detail {

// Column k of the noncentral Stirling log-table, entries log S(nn, k, phi)
// for nn = 0..n_max, computed with the recursion
//   S(n, k, phi) = (k + phi) S(n-1, k, phi) + S(n-1, k-1, phi)
// in log space. Templated so callers needing tighter rounding can run the
// same ladder in long double.
template <typename Real>
std::vector<Real> noncentral_log_column(int n_max, int k, Real phi) {
    constexpr Real ninf = -std::numeric_limits<Real>::infinity();
    std::vector<Real> prev(static_cast<std::size_t>(n_max) + 1, ninf);
    prev[0] = Real(0);  // S(0,0,phi) = 1
    if (phi > Real(0)) {
        const Real lphi = std::log(phi);
        for (int nn = 1; nn <= n_max; ++nn) prev[nn] = Real(nn) * lphi;
    }
    for (int kk = 1; kk <= k; ++kk) {
        std::vector<Real> cur(static_cast<std::size_t>(n_max) + 1, ninf);
        const Real lw = std::log(Real(kk) + phi);
        for (int nn = kk; nn <= n_max; ++nn) {
            const Real a = lw + cur[nn - 1];
            const Real b = prev[nn - 1];
            if (a == ninf) {
                cur[nn] = b;
            } else if (b == ninf) {
                cur[nn] = a;
            } else {
                const Real m = a >= b ? a : b;
                const Real o = a >= b ? b : a;
                cur[nn] = m + std::log1p(std::exp(o - m));
            }
        }
        prev = std::move(cur);
    }
    return prev;
}

}  // namespace detail

// Rectangular log-table of noncentral Stirling numbers of the second kind,
// entry(n, k) = log S(n, k, phi). Immutable after construction.
struct StirlingLogTable {
    int n_max = 0;
    int k_max = 0;
    double phi = 0.0;
    std::vector<double> data;  // (n_max+1) x (k_max+1), row-major

    double entry(int n, int k) const {
        if (k < 0 || k > n) return neg_inf;
        if (n > n_max || k > k_max)
            throw std::out_of_range("StirlingLogTable::entry: beyond built range");
        return data[static_cast<std::size_t>(n) * (k_max + 1) + k];
    }
};

// Fills log S(.,.,phi) up to (n, k). Base cases: S(0,0) = 1, S(n,0) = phi^n,
// S(n,k) = 0 for k > n. The phi = +inf point mass is handled by callers
// before any table is needed.
inline StirlingLogTable noncentral_stirling_log_table(int n, int k, double phi) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("noncentral_stirling_log_table: need 0 <= k <= n");
    if (!(phi >= 0.0) || std::isinf(phi))
        throw std::invalid_argument("noncentral_stirling_log_table: need 0 <= phi < inf");
    StirlingLogTable t;
    t.n_max = n;
    t.k_max = k;
    t.phi = phi;
    t.data.assign(static_cast<std::size_t>(n + 1) * (k + 1), neg_inf);
    auto at = [&](int nn, int kk) -> double& {
        return t.data[static_cast<std::size_t>(nn) * (k + 1) + kk];
    };
    at(0, 0) = 0.0;
    if (phi > 0.0) {
        const double lphi = std::log(phi);
        for (int nn = 1; nn <= n; ++nn) at(nn, 0) = nn * lphi;
    }
    for (int nn = 1; nn <= n; ++nn) {
        const int kk_hi = std::min(nn, k);
        for (int kk = 1; kk <= kk_hi; ++kk) {
            at(nn, kk) = log_add_exp(std::log(kk + phi) + at(nn - 1, kk),
                                     at(nn - 1, kk - 1));
        }
    }
    return t;
}

}  // namespace spillage
