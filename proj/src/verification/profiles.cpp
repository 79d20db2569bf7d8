#include <algorithm>
#include <cmath>

#include "apchar/error.hpp"
#include "apchar/verification.hpp"

namespace apchar::verify {

namespace {

double accurate_norm(const GridWeight& w, const ExponentPair& pair, Policy policy) {
    return ap_norm(w, pair, SearchOptions{policy, Mode::Accurate, 1}).value;
}

nlohmann::json pair_json(const ExponentPair& pair) { return {{"p1", pair.p1().to_string()}, {"p2", pair.p2().to_string()}}; }

}  // namespace

long exact_truncation_threshold(const GridWeight& w) {
    const double bound = std::ceil(std::max({w.max(), 1.0 / w.min(), 1.0}));
    if (!(bound < 9.0e18)) throw Error(ErrorKind::InvalidWeight, "weight range too wide for integer truncation levels");
    auto n = static_cast<long>(bound);
    // 1/n is rounded; step past any level whose rounded reciprocal still bites
    while (n < w.max() || 1.0 / static_cast<double>(n) > w.min()) ++n;
    return n;
}

std::vector<long> default_truncation_levels(const GridWeight& w) {
    const long top = exact_truncation_threshold(w);
    std::vector<long> out;
    for (long n = 1;; n *= 2) {
        out.push_back(n);
        if (n >= top) break;
    }
    return out;
}

ConvergenceProfile convergence_profile(const GridWeight& w, const ExponentPair& pair, Policy policy,
                                       const std::vector<long>& n_list) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
            throw Error(ErrorKind::NonPositiveParameter, "truncation levels must be increasing positive integers");
        }
    }
    ConvergenceProfile profile;
    profile.norm = accurate_norm(w, pair, policy);
    profile.exact_threshold = exact_truncation_threshold(w);
    for (long n : n_list) {
        profile.points.push_back({static_cast<double>(n), accurate_norm(truncate_two_sided(w, n), pair, policy)});
    }
    return profile;
}

Report check_convergence(const GridWeight& w, const ExponentPair& pair, Policy policy,
                         const std::vector<long>& n_list) {
    const ConvergenceProfile profile = convergence_profile(w, pair, policy, n_list);
    Report report;
    report.claim = "convergence";
    report.residual_tolerance = 0.0;  // bit-level equality past the threshold
    report.residual_max = 0.0;
    nlohmann::json points = nlohmann::json::array();
    for (const ProfilePoint& pt : profile.points) {
        ++report.trials;
        report.note_violation((pt.value - profile.norm) / std::max(1.0, profile.norm));
        const bool past = pt.parameter >= static_cast<double>(profile.exact_threshold);
        if (past && pt.value != profile.norm) report.note_residual(std::fabs(pt.value - profile.norm));
        points.push_back({{"n", static_cast<long>(pt.parameter)}, {"value", pt.value}, {"exact_expected", past}});
    }
    report.params = {{"pair", pair_json(pair)}, {"policy", std::string(to_string(policy))}, {"dims", w.dims()}};
    report.details = {{"norm", profile.norm}, {"exact_threshold", profile.exact_threshold}, {"profile", points}};
    report.finalize();
    return report;
}

BmProfile bm_profile(const GridWeight& w, const ExponentPair& pair, Policy policy, const std::vector<double>& s_list) {
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        if (!(s_list[i] > 0.0) || (i > 0 && !(s_list[i] < s_list[i - 1]))) {
            throw Error(ErrorKind::NonPositiveParameter, "regularisation levels must be decreasing positive reals");
        }
    }
    BmProfile profile;
    profile.norm = accurate_norm(w, pair, policy);
    for (double s : s_list) {
        const double value = accurate_norm(bm_regularize(w, s), pair, policy);
        profile.points.push_back({s, value});
        if ((value - profile.norm) / std::max(1.0, profile.norm) > kInequalityTol) profile.flagged = true;
    }
    return profile;
}

Report check_bm(const GridWeight& w, const ExponentPair& pair, Policy policy, const std::vector<double>& s_list) {
    const BmProfile profile = bm_profile(w, pair, policy, s_list);
    Report report;
    report.claim = "bm";
    // informational: the bounded-regularisation inequality is cited, not proved here
    report.tolerance = std::numeric_limits<double>::infinity();
    nlohmann::json points = nlohmann::json::array();
    for (const ProfilePoint& pt : profile.points) {
        ++report.trials;
        report.note_violation((pt.value - profile.norm) / std::max(1.0, profile.norm));
        points.push_back({{"s", pt.parameter}, {"value", pt.value}, {"gap", std::fabs(pt.value - profile.norm)}});
    }
    report.params = {{"pair", pair_json(pair)}, {"policy", std::string(to_string(policy))}, {"dims", w.dims()}};
    report.details = {{"norm", profile.norm}, {"flagged", profile.flagged}, {"profile", points}};
    report.finalize();
    return report;
}

}  // namespace apchar::verify
