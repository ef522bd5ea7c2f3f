#pragma once

// Arbitrary-precision ground truth for desk-scale verification. Never used by
// the production computation paths; translation units including this header
// must link against gmp and gmpxx.

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace spillage {

inline constexpr int default_oracle_n_max = 25;

// Exact triangular table of central Stirling numbers of the second kind,
// built from S(n+1, k) = k S(n, k) + S(n, k-1).
class ExactStirlingOracle {
  public:
    explicit ExactStirlingOracle(int n_max = default_oracle_n_max) : n_max_(n_max) {
        if (n_max < 0) throw std::invalid_argument("ExactStirlingOracle: negative n_max");
        rows_.resize(static_cast<std::size_t>(n_max) + 1);
        rows_[0] = {mpz_class(1)};
        for (int n = 1; n <= n_max; ++n) {
            auto& row = rows_[static_cast<std::size_t>(n)];
            const auto& prev = rows_[static_cast<std::size_t>(n) - 1];
            row.assign(static_cast<std::size_t>(n) + 1, mpz_class(0));
            for (int k = 1; k <= n; ++k) {
                mpz_class v = k < n ? mpz_class(k * prev[static_cast<std::size_t>(k)])
                                    : mpz_class(0);
                v += prev[static_cast<std::size_t>(k) - 1];
                row[static_cast<std::size_t>(k)] = v;
            }
        }
    }

    int n_max() const { return n_max_; }

    const mpz_class& stirling(int n, int k) const {
        static const mpz_class zero(0);
        if (n > n_max_) throw std::invalid_argument("ExactStirlingOracle: n beyond table");
        if (n < 0 || k < 0 || k > n) return zero;
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }

  private:
    int n_max_;
    std::vector<std::vector<mpz_class>> rows_;
};

inline mpz_class exact_binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline mpq_class exact_pow(const mpq_class& q, unsigned long e) {
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

// Exact expansion kernel t_r = C(n, k+r) phi^(n-k-r) S(k+r, k), r = 0..n-k.
// Desk-scale only: refuses n beyond the oracle cutoff.
inline std::vector<mpq_class> exact_spillage_kernel_oracle(int n, int k, const mpq_class& phi,
                                                           int n_oracle = default_oracle_n_max) {
    if (n > n_oracle)
        throw std::invalid_argument("exact_spillage_kernel_oracle: n beyond oracle cutoff");
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("exact_spillage_kernel_oracle: need 0 <= k <= n");
    if (phi < 0) throw std::invalid_argument("exact_spillage_kernel_oracle: phi < 0");
    ExactStirlingOracle table(n);
    std::vector<mpq_class> out;
    out.reserve(static_cast<std::size_t>(n - k) + 1);
    for (int r = 0; r <= n - k; ++r) {
        mpq_class term(exact_binomial(static_cast<unsigned long>(n),
                                      static_cast<unsigned long>(k + r)));
        term *= exact_pow(phi, static_cast<unsigned long>(n - k - r));
        term *= table.stirling(k + r, k);
        out.push_back(term);
    }
    return out;
}

// Normalized version of the kernel; exact rational pmf over r = 0..n-k.
inline std::vector<mpq_class> exact_spillage_pmf_oracle(int n, int k, const mpq_class& phi,
                                                        int n_oracle = default_oracle_n_max) {
    auto kernel = exact_spillage_kernel_oracle(n, k, phi, n_oracle);
    mpq_class total(0);
    for (const auto& t : kernel) total += t;
    if (total == 0)
        throw std::domain_error("exact_spillage_pmf_oracle: zero total mass");
    for (auto& t : kernel) t /= total;
    return kernel;
}

}  // namespace spillage
