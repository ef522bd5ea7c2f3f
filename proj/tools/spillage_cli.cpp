// Command-line interface for the spillage distribution library: exact and
// approximate mass functions, moments, generating functions, accuracy
// sweeps, the occupancy mixture identity, and the Monte-Carlo checker.
//
// Exit codes: 0 success, 2 usage error, 1 numeric-domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spillage/spillage.hpp"

namespace {

using nlohmann::json;
using namespace spillage;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const char* what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw usage_error(std::string("could not parse ") + what + ": '" + text + "'");
    return v;
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("undefined");
}

json json_optional(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json mass_json(const LogMassVector& lm, bool log_scale) {
    json support = json::array();
    json values = json::array();
    for (std::size_t r = 0; r < lm.logmass.size(); ++r) {
        support.push_back(r);
        values.push_back(log_scale ? lm.logmass[r] : std::exp(lm.logmass[r]));
    }
    return json{{"params", {{"n", lm.params.n}, {"k", lm.params.k}, {"phi", lm.params.phi}}},
                {"support", support},
                {"values", values},
                {"log", log_scale},
                {"method", lm.method == MassMethod::exact ? "exact" : "approx"}};
}

void print_mass(std::ostream& os, const LogMassVector& lm, bool log_scale, bool as_json) {
    if (as_json) {
        os << mass_json(lm, log_scale).dump() << '\n';
        return;
    }
    os << "r,value\n";
    for (std::size_t r = 0; r < lm.logmass.size(); ++r)
        os << r << ',' << format_double(log_scale ? lm.logmass[r] : std::exp(lm.logmass[r]))
           << '\n';
}

SweepGrid parse_grid_spec(const std::string& spec) {
    SweepGrid grid;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw usage_error("grid-spec part missing '=': '" + part + "'");
        const std::string key = part.substr(0, eq);
        std::stringstream vals(part.substr(eq + 1));
        std::string item;
        std::vector<double> out;
        while (std::getline(vals, item, ','))
            out.push_back(parse_double(item, "grid-spec value"));
        if (out.empty()) throw usage_error("grid-spec key '" + key + "' has no values");
        if (key == "n") {
            for (double v : out) grid.n_values.push_back(static_cast<int>(v));
        } else if (key == "k") {
            grid.k_fractions = out;
        } else if (key == "phi") {
            grid.phi_factors = out;
        } else {
            throw usage_error("grid-spec key must be n, k or phi: '" + key + "'");
        }
    }
    if (grid.n_values.empty() || grid.k_fractions.empty() || grid.phi_factors.empty())
        throw usage_error("grid-spec must set n, k and phi");
    return grid;
}

int sweep_cap_from_env() {
    if (const char* env = std::getenv("SPILLAGE_MAX_N")) {
        const int cap = static_cast<int>(parse_double(env, "SPILLAGE_MAX_N"));
        if (cap < 1) throw usage_error("SPILLAGE_MAX_N must be positive");
        return cap;
    }
    return default_sweep_cap;
}

void write_record_json(std::ostream& os, const AccuracyRecord& r) {
    os << json{{"n", r.n},
               {"k", r.k},
               {"phi", r.phi},
               {"psi", r.psi},
               {"log_asym_variance", r.log_asym_variance},
               {"lrmse", r.lrmse},
               {"max_abs_diff", r.max_abs_diff},
               {"runtime_exact_ms", r.runtime_exact_ms},
               {"runtime_approx_ms", r.runtime_approx_ms}}
              .dump()
       << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spillage distribution toolkit"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the flags it uses.
    int n = 1, k = 0, m = 1, want_r = -1;
    std::string phi_text = "1", theta_text = "0.5";
    double q = 0.5, z = 1.0;
    std::int64_t count = 1, trials = 100000;
    std::uint64_t seed = 0;
    bool use_approx = false, log_scale = false, asymptotic = false, no_timing = false;
    std::string format = "csv", grid_spec, out_path;

    auto add_nkphi = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "size parameter")->required();
        cmd->add_option("--k", k, "occupancy parameter")->required();
        cmd->add_option("--phi", phi_text, "scale parameter (inf accepted)")->required();
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* pmf_cmd = app.add_subcommand("pmf", "mass function over r = 0..n-k");
    add_nkphi(pmf_cmd);
    pmf_cmd->add_flag("--approx", use_approx, "use the saddle-point approximation");
    pmf_cmd->add_flag("--log", log_scale, "emit log-probabilities");
    add_format(pmf_cmd);

    auto* approx_cmd = app.add_subcommand("approx", "approximate mass function");
    add_nkphi(approx_cmd);
    approx_cmd->add_flag("--log", log_scale, "emit log-probabilities");
    add_format(approx_cmd);

    auto* cdf_cmd = app.add_subcommand("cdf", "cumulative distribution function");
    add_nkphi(cdf_cmd);
    cdf_cmd->add_option("--r", want_r, "emit only this support point");
    add_format(cdf_cmd);

    auto* quant_cmd = app.add_subcommand("quantile", "smallest r with cdf(r) >= q");
    add_nkphi(quant_cmd);
    quant_cmd->add_option("--q", q, "probability level")->required();
    add_format(quant_cmd);

    auto* sample_cmd = app.add_subcommand("sample", "seeded i.i.d. draws");
    add_nkphi(sample_cmd);
    sample_cmd->add_option("--count", count, "number of draws")->required();
    sample_cmd->add_option("--seed", seed, "rng seed")->required();
    add_format(sample_cmd);

    auto* moments_cmd = app.add_subcommand("moments", "mean/variance/skewness/kurtosis");
    add_nkphi(moments_cmd);
    moments_cmd->add_flag("--asymptotic", asymptotic, "large-n closed forms");
    add_format(moments_cmd);

    auto* pgf_cmd = app.add_subcommand("pgf", "probability generating function G(z)");
    add_nkphi(pgf_cmd);
    pgf_cmd->add_option("--z", z, "evaluation point")->required();
    add_format(pgf_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "exact vs approximate accuracy record");
    add_nkphi(compare_cmd);
    add_format(compare_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "accuracy sweep as CSV");
    int n_max = default_sweep_cap;
    sweep_cmd->add_option("--n-max", n_max, "largest n in the default grid");
    sweep_cmd->add_option("--grid-spec", grid_spec,
                          "custom grid, e.g. n=10,100;k=0.1,0.5;phi=0.25,1,4");
    sweep_cmd->add_option("--out", out_path, "write CSV to this file instead of stdout");
    sweep_cmd->add_flag("--no-timing", no_timing, "zero the runtime columns");

    auto* mix_cmd = app.add_subcommand("mixture-check", "occupancy mixture identity residual");
    mix_cmd->add_option("--n", n, "number of balls")->required();
    mix_cmd->add_option("--m", m, "number of bins")->required();
    mix_cmd->add_option("--theta", theta_text, "occupation probability")->required();
    add_format(mix_cmd);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo conditional spillage check");
    sim_cmd->add_option("--n", n, "number of balls")->required();
    sim_cmd->add_option("--m", m, "number of bins")->required();
    sim_cmd->add_option("--theta", theta_text, "occupation probability")->required();
    sim_cmd->add_option("--trials", trials, "trial count")->required();
    sim_cmd->add_option("--seed", seed, "rng seed")->required();
    sim_cmd->add_option("--k", k, "occupancy number to condition on")->required();
    add_format(sim_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const bool as_json = format == "json";
        std::ostream& os = std::cout;

        if (pmf_cmd->parsed() || approx_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const auto lm =
                (approx_cmd->parsed() || use_approx) ? approx_log_pmf(p) : spillage_log_pmf(p);
            print_mass(os, lm, log_scale, as_json);
        } else if (cdf_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const auto lm = spillage_log_pmf(p);
            const auto cdf = detail::cdf_values(lm.logmass);
            if (as_json) {
                json support = json::array(), values = json::array();
                for (std::size_t r = 0; r < cdf.size(); ++r) {
                    if (want_r >= 0 && static_cast<std::size_t>(want_r) != r) continue;
                    support.push_back(r);
                    values.push_back(cdf[r]);
                }
                os << json{{"params", {{"n", n}, {"k", k}, {"phi", p.phi}}},
                           {"support", support},
                           {"cdf", values}}
                          .dump()
                   << '\n';
            } else {
                os << "r,cdf\n";
                for (std::size_t r = 0; r < cdf.size(); ++r) {
                    if (want_r >= 0 && static_cast<std::size_t>(want_r) != r) continue;
                    os << r << ',' << format_double(cdf[r]) << '\n';
                }
            }
        } else if (quant_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const int r = spillage_quantile(p, q);
            if (as_json)
                os << json{{"q", q}, {"r", r}}.dump() << '\n';
            else
                os << "q,r\n" << format_double(q) << ',' << r << '\n';
        } else if (sample_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const auto draws = spillage_sample(p, count, seed);
            if (as_json) {
                os << json{{"params", {{"n", n}, {"k", k}, {"phi", p.phi}}},
                           {"seed", seed},
                           {"draws", draws}}
                          .dump()
                   << '\n';
            } else {
                os << "draw\n";
                for (int d : draws) os << d << '\n';
            }
        } else if (moments_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            if (asymptotic) {
                const auto mo = asymptotic_moments(p);
                if (as_json)
                    os << json{{"psi", mo.psi},
                               {"mean", mo.mean},
                               {"variance", mo.variance},
                               {"skewness", json_optional(mo.skewness)},
                               {"kurtosis", json_optional(mo.kurtosis)}}
                              .dump()
                       << '\n';
                else
                    os << "psi,mean,variance,skewness,kurtosis\n"
                       << format_double(mo.psi) << ',' << format_double(mo.mean) << ','
                       << format_double(mo.variance) << ',' << format_optional(mo.skewness)
                       << ',' << format_optional(mo.kurtosis) << '\n';
            } else {
                const auto mo = exact_moments(p);
                if (as_json)
                    os << json{{"mean", mo.mean},
                               {"variance", mo.variance},
                               {"skewness", json_optional(mo.skewness)},
                               {"kurtosis", json_optional(mo.kurtosis)}}
                              .dump()
                       << '\n';
                else
                    os << "mean,variance,skewness,kurtosis\n"
                       << format_double(mo.mean) << ',' << format_double(mo.variance) << ','
                       << format_optional(mo.skewness) << ',' << format_optional(mo.kurtosis)
                       << '\n';
            }
        } else if (pgf_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const double value = pgf_eval(p, z);
            if (as_json)
                os << json{{"z", z}, {"value", value}}.dump() << '\n';
            else
                os << "z,value\n" << format_double(z) << ',' << format_double(value) << '\n';
        } else if (compare_cmd->parsed()) {
            const SpillageParams p{n, k, parse_double(phi_text, "--phi")};
            const auto rec = compare_engines(p);
            if (as_json)
                write_record_json(os, rec);
            else
                write_accuracy_csv(os, std::span<const AccuracyRecord>(&rec, 1));
        } else if (sweep_cmd->parsed()) {
            const int cap = sweep_cap_from_env();
            SweepGrid grid;
            if (grid_spec.empty()) {
                grid = default_sweep_grid();
                std::erase_if(grid.n_values, [&](int v) { return v > n_max; });
                if (grid.n_values.empty())
                    throw usage_error("--n-max leaves the default grid empty");
            } else {
                grid = parse_grid_spec(grid_spec);
            }
            const auto records = sweep(grid, cap, !no_timing);
            if (out_path.empty()) {
                write_accuracy_csv(os, records);
            } else {
                std::ofstream file(out_path, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open output file: " + out_path);
                write_accuracy_csv(file, records);
            }
        } else if (mix_cmd->parsed()) {
            const double theta = parse_double(theta_text, "--theta");
            const double residual = mixture_binomial_residual(n, m, theta);
            if (as_json)
                os << json{{"n", n}, {"m", m}, {"theta", theta}, {"residual", residual}}.dump()
                   << '\n';
            else
                os << "residual\n" << format_double(residual) << '\n';
        } else if (sim_cmd->parsed()) {
            const double theta = parse_double(theta_text, "--theta");
            const auto run = simulate({n, m, theta}, trials, seed);
            const auto ce = conditional_spillage_empirical(run, k);
            if (!ce.sufficient) {
                std::cerr << "insufficient data: no trial produced occupancy " << k << "\n";
                return 1;
            }
            if (as_json) {
                os << json{{"k", k},
                           {"count", ce.conditioning_count},
                           {"tv", ce.tv},
                           {"empirical", ce.empirical},
                           {"exact", ce.exact}}
                          .dump()
                   << '\n';
            } else {
                os << "k,r,empirical,exact,tv,count\n";
                for (std::size_t r = 0; r < ce.empirical.size(); ++r)
                    os << k << ',' << r << ',' << format_double(ce.empirical[r]) << ','
                       << format_double(ce.exact[r]) << ',' << format_double(ce.tv) << ','
                       << ce.conditioning_count << '\n';
            }
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
