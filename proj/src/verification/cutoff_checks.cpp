#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "apchar/mean_cache.hpp"
#include "apchar/verification.hpp"

namespace apchar::verify {

namespace {

double relative_excess(double candidate, double reference) {
    return (candidate - reference) / std::max(1.0, reference);
}

nlohmann::json pair_json(const ExponentPair& pair) { return {{"p1", pair.p1().to_string()}, {"p2", pair.p2().to_string()}}; }

// Per-cube and global comparison of ratio(modified) against ratio(original).
// `dual` (optional) is an independent route to the modified weight's ratios.
Report compare_against(const GridWeight& original, const GridWeight& modified, const ExponentPair& pair,
                       Policy policy, const MeanCache* dual) {
    const MeanCache base(original, pair, Mode::Accurate);
    const MeanCache cut(modified, pair, Mode::Accurate);

    Report report;
    double norm_base = 0.0;
    double norm_cut = 0.0;
    double norm_dual = 0.0;
    bool first = true;
    for (const CubeRow& row : enumerate_rows(original.dims(), policy)) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            const GridCube cube = row.cube(k);
            const double r_base = base.ratio(cube);
            const double r_cut = cut.ratio(cube);
            report.note_violation(relative_excess(r_cut, r_base));
            if (first || r_base > norm_base) norm_base = r_base;
            if (first || r_cut > norm_cut) norm_cut = r_cut;
            if (dual != nullptr) {
                const double r_dual = dual->ratio(cube);
                report.note_residual(std::fabs(r_cut - r_dual) / std::max(1.0, r_cut));
                if (first || r_dual > norm_dual) norm_dual = r_dual;
            }
            first = false;
            ++report.trials;
        }
    }
    report.note_violation(relative_excess(norm_cut, norm_base));
    report.details["norm_original"] = norm_base;
    report.details["norm_modified"] = norm_cut;
    if (dual != nullptr) {
        report.note_residual(std::fabs(norm_cut - norm_dual) / std::max(1.0, norm_cut));
        report.details["norm_dual_route"] = norm_dual;
    }
    report.params["pair"] = pair_json(pair);
    report.params["policy"] = std::string(to_string(policy));
    report.params["dims"] = original.dims();
    report.finalize();
    return report;
}

}  // namespace

Report check_cutoff_monotonicity(const GridWeight& w, const ExponentPair& pair, double a, Policy policy) {
    Report report = compare_against(w, cutoff_above(w, a), pair, policy, nullptr);
    report.claim = "theorem1";
    report.params["a"] = a;
    return report;
}

Report check_below_cut(const GridWeight& w, const ExponentPair& pair, double a, Policy policy) {
    const GridWeight modified = cutoff_below(w, a);
    // 1/max(w, a) == min(1/w, 1/a): the above-cut of the reciprocal weight
    const MeanCache dual(cutoff_above(reciprocal(w), 1.0 / a), pair.dual(), Mode::Accurate);
    Report report = compare_against(w, modified, pair, policy, &dual);
    report.claim = "below-cut";
    report.params["a"] = a;
    return report;
}

Report check_truncation(const GridWeight& w, const ExponentPair& pair, long n, Policy policy) {
    Report report = compare_against(w, truncate_two_sided(w, n), pair, policy, nullptr);
    report.claim = "truncation";
    report.params["n"] = n;
    return report;
}

namespace {

using TrialFn = std::function<Report(const GridWeight&, const ExponentPair&, std::uint64_t trial_seed)>;

Report run_suite(const SuiteOptions& options, const std::string& claim, const TrialFn& trial) {
    const auto pairs = design_pairs();
    const std::size_t total = options.weights_1d + options.weights_2d;
    std::vector<Report> results(total);

    auto run_one = [&](std::size_t i) {
        const bool two_d = i >= options.weights_1d;
        const Dims dims = two_d ? Dims{options.n_2d, options.n_2d} : Dims{options.n_1d};
        const std::uint64_t s = mix_seed(options.seed, i);
        const GridWeight w = random_lognormal(dims, kSigmas[i % 3], s);
        results[i] = trial(w, pairs[i % pairs.size()], mix_seed(s, 1));
    };

    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(total, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < total; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < total; i += workers) run_one(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // deterministic merge by trial index
    Report suite;
    suite.claim = claim;
    suite.seed = options.seed;
    suite.provenance = "random log-normal weights, sigma in {0.5, 2, 5}";
    if (total > 0) {
        suite.tolerance = results[0].tolerance;
        suite.residual_tolerance = results[0].residual_tolerance;
    }
    std::size_t worst = 0;
    for (std::size_t i = 0; i < total; ++i) {
        if (i == 0 || results[i].max_violation > results[worst].max_violation) worst = i;
        suite.absorb(results[i]);
    }
    suite.params = {{"weights_1d", options.weights_1d},
                    {"n_1d", options.n_1d},
                    {"weights_2d", options.weights_2d},
                    {"n_2d", options.n_2d},
                    {"pairs", pairs.size()}};
    if (total > 0) {
        suite.details["worst_trial"] = worst;
        suite.details["worst_params"] = results[worst].params;
    }
    suite.finalize();
    return suite;
}

}  // namespace

Report theorem1_suite(const SuiteOptions& options) {
    return run_suite(options, "theorem1", [](const GridWeight& w, const ExponentPair& pair, std::uint64_t seed) {
        const Policy policy = default_policy(w.dims());
        return check_cutoff_monotonicity(w, pair, random_cut_level(w, seed), policy);
    });
}

Report below_cut_suite(const SuiteOptions& options) {
    return run_suite(options, "below-cut", [](const GridWeight& w, const ExponentPair& pair, std::uint64_t seed) {
        const Policy policy = default_policy(w.dims());
        return check_below_cut(w, pair, random_cut_level(w, seed), policy);
    });
}

Report convergence_suite(const SuiteOptions& options) {
    return run_suite(options, "convergence", [](const GridWeight& w, const ExponentPair& pair, std::uint64_t) {
        return check_convergence(w, pair, default_policy(w.dims()), default_truncation_levels(w));
    });
}

}  // namespace apchar::verify
