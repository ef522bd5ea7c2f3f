#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spillage/distribution.hpp"
#include "spillage/moments.hpp"
#include "spillage/stirling.hpp"

namespace spillage {

// Probability generating function G(z) = z^(n-k) S(n, k, phi/z) / S(n, k, phi).
inline double pgf_eval(const SpillageParams& p, double z) {
    p.validate();
    if (!(z > 0.0)) throw std::invalid_argument("pgf_eval: need z > 0");
    if (!(p.phi > 0.0) || std::isinf(p.phi))
        throw std::invalid_argument("pgf_eval: need 0 < phi < inf");
    const auto shifted = detail::noncentral_log_column<double>(p.n, p.k, p.phi / z);
    const auto base = detail::noncentral_log_column<double>(p.n, p.k, p.phi);
    return std::exp((p.n - p.k) * std::log(z) + shifted[static_cast<std::size_t>(p.n)] -
                    base[static_cast<std::size_t>(p.n)]);
}

// Cumulant function K(s) = s(n-k) + log S(n, k, phi e^-s) - log S(n, k, phi).
// K(0) is exactly zero: both columns are built from the same phi.
inline double cgf_eval(const SpillageParams& p, double s) {
    p.validate();
    if (!(p.phi > 0.0) || std::isinf(p.phi))
        throw std::invalid_argument("cgf_eval: need 0 < phi < inf");
    const auto shifted = detail::noncentral_log_column<double>(p.n, p.k, p.phi * std::exp(-s));
    const auto base = detail::noncentral_log_column<double>(p.n, p.k, p.phi);
    return s * (p.n - p.k) + shifted[static_cast<std::size_t>(p.n)] -
           base[static_cast<std::size_t>(p.n)];
}

// Q_l(s) = S(n-l, k, phi e^-s) / S(n, k, phi e^-s); Q_0 is identically 1.
inline double q_value(const SpillageParams& p, int ell, double s) {
    p.validate();
    if (ell < 0 || p.n - ell < p.k)
        throw std::invalid_argument("q_value: need 0 <= ell <= n - k");
    if (!(p.phi > 0.0) || std::isinf(p.phi))
        throw std::invalid_argument("q_value: need 0 < phi < inf");
    const auto col = detail::noncentral_log_column<double>(p.n, p.k, p.phi * std::exp(-s));
    return std::exp(col[static_cast<std::size_t>(p.n - ell)] -
                    col[static_cast<std::size_t>(p.n)]);
}

// Residual of the Q-ratio differential identity
//   dQ_l/ds = phi e^-s [n Q_l(s) Q_1(s) - (n - l) Q_(l+1)(s)]
// against a central finite difference with step h.
inline double q_derivative_check(const SpillageParams& p, int ell, double s,
                                 double h = 1e-5) {
    p.validate();
    if (ell < 0 || ell > p.n - p.k - 1)
        throw std::invalid_argument("q_derivative_check: need 0 <= ell <= n - k - 1");
    const double fd = (q_value(p, ell, s + h) - q_value(p, ell, s - h)) / (2.0 * h);
    const double rhs = p.phi * std::exp(-s) *
                       (p.n * q_value(p, ell, s) * q_value(p, 1, s) -
                        (p.n - ell) * q_value(p, ell + 1, s));
    return std::abs(fd - rhs);
}

// Residual of the mgf expansion
//   m(t) = e^(t(n-k)) sum_l C(n, l) (e^-t - 1)^l H_l
// against direct summation of e^(tr) over the exact pmf.
inline double mgf_expansion_check(const SpillageParams& p, double t) {
    p.validate();
    if (!(p.phi > 0.0) || std::isinf(p.phi))
        throw std::invalid_argument("mgf_expansion_check: need 0 < phi < inf");
    const int R = p.n - p.k;
    const auto hv = h_values(p, R);
    const double em1 = std::expm1(-t);
    double series = 0.0;
    for (int l = 0; l <= R; ++l)
        series += std::exp(log_binomial(p.n, l)) * std::pow(em1, l) *
                  hv.h[static_cast<std::size_t>(l)];
    const double expansion = std::exp(t * R) * series;
    const auto lm = spillage_log_pmf(p);
    double direct = 0.0;
    for (int r = 0; r <= R; ++r)
        direct += std::exp(t * r + lm.logmass[static_cast<std::size_t>(r)]);
    return std::abs(expansion - direct);
}

}  // namespace spillage
