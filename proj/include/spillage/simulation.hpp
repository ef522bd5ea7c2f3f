#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "spillage/distribution.hpp"
#include "spillage/occupancy.hpp"
#include "spillage/rng.hpp"

namespace spillage {

// Joint tallies over (occupancy number K, spillage number R = n_eff - K)
// from seeded Monte-Carlo trials of the extended balls-in-bins model.
struct SimRun {
    OccupancyParams params;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::int64_t>> tallies;  // (k_max+1) x (n+1)

    std::int64_t count(int k, int r) const {
        return tallies[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
    }
};

// Trials [trial_begin, trial_end) of the model; trial t draws from the
// SplitMix64 stream t of `seed`, so any partition of the trial range merges
// to the same tallies.
inline SimRun simulate_range(const OccupancyParams& p, std::int64_t trial_begin,
                             std::int64_t trial_end, std::uint64_t seed) {
    p.validate();
    if (trial_begin < 0 || trial_end < trial_begin)
        throw std::invalid_argument("simulate_range: bad trial range");
    SimRun run{p, trial_end - trial_begin, seed,
               std::vector<std::vector<std::int64_t>>(
                   static_cast<std::size_t>(p.k_max()) + 1,
                   std::vector<std::int64_t>(static_cast<std::size_t>(p.n) + 1, 0))};
    std::vector<std::int64_t> stamp(static_cast<std::size_t>(p.m), -1);
    for (std::int64_t t = trial_begin; t < trial_end; ++t) {
        SplitMix64 rng(SplitMix64::stream_seed(seed, static_cast<std::uint64_t>(t)));
        int occupied = 0;
        int n_eff = 0;
        for (int ball = 0; ball < p.n; ++ball) {
            const auto bin = rng.next_below(static_cast<std::uint64_t>(p.m));
            if (rng.next_double() < p.theta) {
                ++n_eff;
                if (stamp[bin] != t) {
                    stamp[bin] = t;
                    ++occupied;
                }
            }
        }
        ++run.tallies[static_cast<std::size_t>(occupied)]
                     [static_cast<std::size_t>(n_eff - occupied)];
    }
    return run;
}

inline SimRun simulate(const OccupancyParams& p, std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("simulate: need trials >= 1");
    return simulate_range(p, 0, trials, seed);
}

// Tally merge for partitioned runs; counts are plain sums.
inline SimRun merge(const SimRun& a, const SimRun& b) {
    if (!(a.params == b.params) || a.seed != b.seed)
        throw std::invalid_argument("merge: runs come from different configurations");
    SimRun out = a;
    out.trials += b.trials;
    for (std::size_t k = 0; k < out.tallies.size(); ++k)
        for (std::size_t r = 0; r < out.tallies[k].size(); ++r)
            out.tallies[k][r] += b.tallies[k][r];
    return out;
}

inline double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("total_variation: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

// Conditional law of the spillage number given K = k, compared against the
// exact pmf at phi = m (1 - theta) / theta. Zero conditioning count yields
// sufficient = false rather than NaN.
struct ConditionalEmpirical {
    bool sufficient = false;
    std::int64_t conditioning_count = 0;
    std::vector<double> empirical;  // over r = 0..n-k
    std::vector<double> exact;
    double tv = 0.0;
};

inline ConditionalEmpirical conditional_spillage_empirical(const SimRun& run, int k) {
    if (k < 0 || k > run.params.k_max())
        throw std::invalid_argument("conditional_spillage_empirical: k outside range");
    const int R = run.params.n - k;
    ConditionalEmpirical out;
    std::int64_t total = 0;
    for (int r = 0; r <= run.params.n; ++r) total += run.count(k, r);
    out.conditioning_count = total;
    if (total == 0) return out;
    out.sufficient = true;
    out.empirical.resize(static_cast<std::size_t>(R) + 1, 0.0);
    for (int r = 0; r <= R; ++r)
        out.empirical[static_cast<std::size_t>(r)] =
            static_cast<double>(run.count(k, r)) / static_cast<double>(total);
    const auto lm = spillage_log_pmf({run.params.n, k, run.params.phi()});
    out.exact.resize(static_cast<std::size_t>(R) + 1);
    for (int r = 0; r <= R; ++r)
        out.exact[static_cast<std::size_t>(r)] =
            std::exp(lm.logmass[static_cast<std::size_t>(r)]);
    out.tv = total_variation(out.empirical, out.exact);
    return out;
}

// Marginal of the occupancy number from the tallies.
inline std::vector<double> empirical_occupancy_marginal(const SimRun& run) {
    std::vector<double> out(run.tallies.size(), 0.0);
    for (std::size_t k = 0; k < run.tallies.size(); ++k) {
        std::int64_t c = 0;
        for (auto v : run.tallies[k]) c += v;
        out[k] = static_cast<double>(c) / static_cast<double>(run.trials);
    }
    return out;
}

// Marginal of the effective ball count n_eff = K + R.
inline std::vector<double> empirical_effective_marginal(const SimRun& run) {
    std::vector<double> out(static_cast<std::size_t>(run.params.n) + 1, 0.0);
    for (std::size_t k = 0; k < run.tallies.size(); ++k)
        for (std::size_t r = 0; r < run.tallies[k].size(); ++r) {
            const std::size_t neff = k + r;
            if (neff < out.size() && run.tallies[k][r] > 0)
                out[neff] += static_cast<double>(run.tallies[k][r]);
        }
    for (double& v : out) v /= static_cast<double>(run.trials);
    return out;
}

}  // namespace spillage
