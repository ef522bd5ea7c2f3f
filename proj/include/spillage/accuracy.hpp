#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spillage/approximation.hpp"
#include "spillage/distribution.hpp"
#include "spillage/moments.hpp"

namespace spillage {

// Locale-independent shortest round-trip formatting; the only double
// serialization used in CSV output. Non-finite values print as -inf/inf/nan.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Log-root-mean-square error between two mass vectors on the same support:
//   1/2 log( (1/(n-k+1)) sum_r (p_r - q_r)^2 ),  -inf when identical.
inline double lrmse(const LogMassVector& exact, const LogMassVector& approx) {
    if (!(exact.params == approx.params) || exact.logmass.size() != approx.logmass.size())
        throw std::invalid_argument("lrmse: mismatched parameters or support");
    double s = 0.0;
    for (std::size_t r = 0; r < exact.logmass.size(); ++r) {
        const double d = std::exp(exact.logmass[r]) - std::exp(approx.logmass[r]);
        s += d * d;
    }
    if (s == 0.0) return neg_inf;
    return 0.5 * std::log(s / static_cast<double>(exact.logmass.size()));
}

inline double max_abs_diff(const LogMassVector& exact, const LogMassVector& approx) {
    if (!(exact.params == approx.params) || exact.logmass.size() != approx.logmass.size())
        throw std::invalid_argument("max_abs_diff: mismatched parameters or support");
    double worst = 0.0;
    for (std::size_t r = 0; r < exact.logmass.size(); ++r)
        worst = std::max(worst,
                         std::abs(std::exp(exact.logmass[r]) - std::exp(approx.logmass[r])));
    return worst;
}

struct AccuracyRecord {
    int n = 0;
    int k = 0;
    double phi = 0.0;
    double psi = 0.0;
    double log_asym_variance = neg_inf;
    double lrmse = neg_inf;
    double max_abs_diff = 0.0;
    double runtime_exact_ms = 0.0;
    double runtime_approx_ms = 0.0;
};

inline AccuracyRecord compare_engines(const SpillageParams& p, bool measure_runtime = true) {
    using clock = std::chrono::steady_clock;
    AccuracyRecord rec;
    rec.n = p.n;
    rec.k = p.k;
    rec.phi = p.phi;
    rec.psi = std::isinf(p.phi) ? 1.0 : p.phi / (p.k + p.phi);  // 0/0 -> nan at k=phi=0
    const double av = (p.n - p.k) * rec.psi * (1.0 - rec.psi);
    rec.log_asym_variance = av > 0.0 ? std::log(av) : (av == 0.0 ? neg_inf : av);
    const auto t0 = clock::now();
    const auto exact = spillage_log_pmf(p);
    const auto t1 = clock::now();
    const auto approx = approx_log_pmf(p);
    const auto t2 = clock::now();
    if (measure_runtime) {
        rec.runtime_exact_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rec.runtime_approx_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    }
    rec.lrmse = lrmse(exact, approx);
    rec.max_abs_diff = max_abs_diff(exact, approx);
    return rec;
}

// Grid: for each n, k = round(f n) clamped to [0, n] per k-fraction f, and
// phi = c k per phi-factor c. Records are emitted in grid order.
struct SweepGrid {
    std::vector<int> n_values;
    std::vector<double> k_fractions;
    std::vector<double> phi_factors;
};

inline SweepGrid default_sweep_grid() {
    return {{10, 20, 50, 100, 200, 500, 1000, 2000},
            {0.1, 0.3, 0.5, 0.7, 0.9},
            {0.25, 1.0, 4.0}};
}

inline constexpr int default_sweep_cap = 2000;

// Refuses oversized grids up front; no partial output. The exact engine is
// O(n k (n-k)) per point, so the cap guards against accidental huge runs.
inline std::vector<AccuracyRecord> sweep(const SweepGrid& grid, int max_n = default_sweep_cap,
                                         bool measure_runtime = true) {
    if (grid.n_values.empty() || grid.k_fractions.empty() || grid.phi_factors.empty())
        throw std::invalid_argument("sweep: empty grid");
    for (int n : grid.n_values) {
        if (n < 1) throw std::invalid_argument("sweep: n values must be >= 1");
        if (n > max_n)
            throw std::invalid_argument("sweep: grid includes n = " + std::to_string(n) +
                                        " beyond the cap " + std::to_string(max_n) +
                                        "; raise the cap to run it");
    }
    std::vector<AccuracyRecord> out;
    out.reserve(grid.n_values.size() * grid.k_fractions.size() * grid.phi_factors.size());
    for (int n : grid.n_values)
        for (double f : grid.k_fractions) {
            int k = static_cast<int>(std::lround(f * n));
            k = std::clamp(k, 0, n);
            for (double c : grid.phi_factors)
                out.push_back(compare_engines({n, k, c * k}, measure_runtime));
        }
    return out;
}

// Pearson correlation between lrmse and log asymptotic variance over records
// where both are finite; refuses degenerate inputs.
inline double variance_accuracy_correlation(std::span<const AccuracyRecord> records) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        if (std::isfinite(r.lrmse) && std::isfinite(r.log_asym_variance)) {
            xs.push_back(r.log_asym_variance);
            ys.push_back(r.lrmse);
        }
    }
    if (xs.size() < 10)
        throw std::invalid_argument("variance_accuracy_correlation: fewer than 10 finite records");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("variance_accuracy_correlation: degenerate variance");
    return sxy / std::sqrt(sxx * syy);
}

inline constexpr const char* accuracy_csv_header =
    "n,k,phi,psi,log_asym_variance,lrmse,max_abs_diff,runtime_exact_ms,runtime_approx_ms";

inline void write_accuracy_csv(std::ostream& os, std::span<const AccuracyRecord> records) {
    os << accuracy_csv_header << '\n';
    for (const auto& r : records) {
        os << r.n << ',' << r.k << ',' << format_double(r.phi) << ',' << format_double(r.psi)
           << ',' << format_double(r.log_asym_variance) << ',' << format_double(r.lrmse) << ','
           << format_double(r.max_abs_diff) << ',' << format_double(r.runtime_exact_ms) << ','
           << format_double(r.runtime_approx_ms) << '\n';
    }
}

}  // namespace spillage
