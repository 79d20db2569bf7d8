#include <algorithm>
#include <cmath>

#include "apchar/verification.hpp"

namespace apchar::verify {

namespace {

// NaN is sticky: std::max(NaN, x) keeps NaN, and a NaN argument replaces.
double sticky_max(double current, double v) noexcept { return std::isnan(v) ? v : std::max(current, v); }

}  // namespace

void Report::note_violation(double v) noexcept { max_violation = sticky_max(max_violation, v); }

void Report::note_residual(double r) noexcept { residual_max = sticky_max(residual_max, r); }

void Report::finalize() noexcept {
    // NaN anywhere fails the claim
    pass = max_violation <= tolerance && residual_max <= residual_tolerance;
}

void Report::absorb(const Report& other) {
    note_violation(other.max_violation);
    note_residual(other.residual_max);
    trials += other.trials;
    finalize();
}

namespace {

nlohmann::json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const Report& report) {
    nlohmann::json out;
    out["claim"] = report.claim;
    out["params"] = report.params;
    out["trials"] = report.trials;
    out["max_violation"] = number_or_null(report.max_violation);
    out["tolerance"] = report.tolerance;
    out["residual_max"] = number_or_null(report.residual_max);
    out["residual_tolerance"] = report.residual_tolerance;
    out["pass"] = report.pass;
    out["seed"] = report.seed ? nlohmann::json(*report.seed) : nlohmann::json(nullptr);
    if (!report.provenance.empty()) out["provenance"] = report.provenance;
    if (!report.details.empty()) out["details"] = report.details;
    return out;
}

}  // namespace apchar::verify
