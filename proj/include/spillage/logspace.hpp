#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace spillage {

// A probability (or unnormalized kernel weight) stored as its natural log.
// Exact zero is encoded as -infinity; +infinity and NaN never appear on any
// documented operation path.
using LogProb = double;

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) by max-shifting; -inf operands act as zero terms.
inline double log_add_exp(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    const double m = a >= b ? a : b;
    const double o = a >= b ? b : a;
    return m + std::log1p(std::exp(o - m));
}

// log sum_i exp(xs[i]); returns -inf iff every input is -inf.
inline double log_sum_exp(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("log_sum_exp: empty input");
    double m = neg_inf;
    for (double x : xs) m = std::max(m, x);
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// log(1 + e^x) without overflow or premature underflow (Maechler's branches).
inline double log1p_exp(double x) {
    if (x <= -37.0) return std::exp(x);
    if (x <= 18.0) return std::log1p(std::exp(x));
    if (x <= 33.3) return x + std::exp(-x);
    return x;
}

namespace detail {

// Grow-only log-factorial table. Values are the same regardless of growth
// schedule (lf[i] depends only on lf[i-1]), so lookups are reproducible.
inline double log_factorial_lookup(int n) {
    thread_local std::vector<double> lf{0.0};
    while (static_cast<int>(lf.size()) <= n)
        lf.push_back(lf.back() + std::log(static_cast<double>(lf.size())));
    return lf[static_cast<std::size_t>(n)];
}

}  // namespace detail

inline double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    return detail::log_factorial_lookup(n);
}

// log C(n, j); out-of-range j yields -inf (zero weight), matching support
// truncation in the mass-function kernels.
inline double log_binomial(int n, int j) {
    if (n < 0) throw std::invalid_argument("log_binomial: negative n");
    if (j < 0 || j > n) return neg_inf;
    return detail::log_factorial_lookup(n) - detail::log_factorial_lookup(j) -
           detail::log_factorial_lookup(n - j);
}

// log of the falling factorial (m)_j = m(m-1)...(m-j+1); -inf when the
// product hits zero or below (j > m for integer m).
inline double log_falling_factorial(int m, int j) {
    if (j < 0) throw std::invalid_argument("log_falling_factorial: negative j");
    if (j > m) return neg_inf;
    double s = 0.0;
    for (int i = 0; i < j; ++i) s += std::log(static_cast<double>(m - i));
    return s;
}

}  // namespace spillage
