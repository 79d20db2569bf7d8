#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "apchar/characteristic.hpp"
#include "apchar/enumerate.hpp"
#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"
#include "apchar/weight_ops.hpp"

namespace apchar::verify {

/// Tolerances shared by every check.
inline constexpr double kIdentityTol = 1e-12;    // pure algebra
inline constexpr double kInequalityTol = 1e-9;   // accurate-mode inequalities
inline constexpr double kFiniteDiffTol = 1e-6;   // closed form vs central differences
inline constexpr double kFiniteDiffFloor = 1e-8; // below this |derivative| use an absolute check
inline constexpr double kFiniteDiffAbs = 1e-10;

/// Structured pass/fail evidence for one claim.
/// Invariant: pass == (max_violation <= tolerance && residual_max <= residual_tolerance).
struct Report {
    std::string claim;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t trials = 0;
    double max_violation = -std::numeric_limits<double>::infinity();  // nothing checked yet
    double tolerance = kInequalityTol;
    double residual_max = 0.0;
    double residual_tolerance = kIdentityTol;
    bool pass = true;
    std::optional<std::uint64_t> seed;
    std::string provenance;
    nlohmann::json details = nlohmann::json::object();

    void note_violation(double v) noexcept;
    void note_residual(double r) noexcept;
    /// Recomputes pass from the recorded maxima.
    void finalize() noexcept;
    /// Folds another report into this one (maxima, counts, pass).
    void absorb(const Report& other);
};

nlohmann::json to_json(const Report& report);

// ---------------------------------------------------------------------------
// Cut-off monotonicity

/// Largest relative increase of the ap ratio over every enumerated cube when
/// w is replaced by min(w, a), plus the same comparison for the global
/// characteristic. Accurate mode throughout.
Report check_cutoff_monotonicity(const GridWeight& w, const ExponentPair& pair, double a, Policy policy);

/// As above for max(w, a). Also recomputes every ratio through the dual
/// route (1/w, 1/a, -p2, -p1) and reports the disagreement as residual.
Report check_below_cut(const GridWeight& w, const ExponentPair& pair, double a, Policy policy);

/// Two-sided truncation at level n against w.
Report check_truncation(const GridWeight& w, const ExponentPair& pair, long n, Policy policy);

// ---------------------------------------------------------------------------
// A2 decomposition identity

struct A2Decomposition {
    double lhs = 0.0;        // <w><1/w> - <w_a><1/w_a>, from plain cube means
    double rhs = 0.0;        // a1 a2 (x1 y2 + x2 y1 - y1 a - x1/a) + a2^2 (x2 y2 - 1)
    double residual = 0.0;   // |lhs - rhs| / max(1, <w><1/w>)
    double first_paren = 0.0;   // x1 y2 + x2 y1 - y1 a - x1/a (0 when J1 or J2 empty)
    double second_paren = 0.0;  // x2 y2 - 1 (0 when J2 empty)
    double first_scale = 1.0;
    double second_scale = 1.0;
    PartitionStats stats;
};

A2Decomposition a2_decomposition_residual(const GridWeight& w, double a, const GridCube& cube);

/// Folds one decomposition into a report: residual against kIdentityTol,
/// the two sign claims (when J2 is nonempty) as violations.
void record_a2(Report& report, const A2Decomposition& dec);

// ---------------------------------------------------------------------------
// Reduced two-parameter function of the general proof

struct PhiParams {
    double x1 = 1.0;
    double y1 = 1.0;
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    double a = 1.0;
    double p1 = 1.0;
    double p2 = -1.0;

    /// From a real partition of a cube at level a (J1 may be empty).
    static PhiParams from_partition(const PartitionStats& st, double a, const ExponentPair& pair);
};

/// phi(s, u) = (a1 x1 + a2 s^p1 u^p1)^{1/p1} (a1 y1 + a2 u^p2)^{-1/p2}
///           - (a1 x1 + a2 a^p1)^{1/p1} (a1 y1 + a2 a^p2)^{-1/p2}
/// Throws Error(Domain) for nonpositive s, u or base.
double phi_eval(const PhiParams& params, double s, double u);

struct PhiPartials {
    double dphi_ds = 0.0;
    double dphi_du = 0.0;
    double bracket = 0.0;  // u^p1 y1 - u^p2 x1
};

PhiPartials phi_partials(const PhiParams& params, double s, double u);

/// u^p1 y1 - u^p2 x1 and the cell-wise average <u^p1 w^p2 - u^p2 w^p1> over
/// the given J1 samples; the two agree algebraically.
struct BracketIdentity {
    double bracket = 0.0;
    double averaged = 0.0;
    double scale = 1.0;
};

BracketIdentity bracket_identity(std::span<const double> j1_samples, double u, double p1, double p2);

// ---------------------------------------------------------------------------
// Profiles

struct ProfilePoint {
    double parameter = 0.0;
    double value = 0.0;
};

struct ConvergenceProfile {
    double norm = 0.0;  // [w]
    long exact_threshold = 0;  // smallest n with truncate(w, n) == w
    std::vector<ProfilePoint> points;  // (n, [phi_n])
};

ConvergenceProfile convergence_profile(const GridWeight& w, const ExponentPair& pair, Policy policy,
                                       const std::vector<long>& n_list);

/// Powers of two from 1 up to the first one at or past the exact threshold.
std::vector<long> default_truncation_levels(const GridWeight& w);

/// Smallest n such that the two-sided truncation at n leaves w unchanged.
long exact_truncation_threshold(const GridWeight& w);

/// Every [phi_n] <= [w] (relative kInequalityTol), bit-equal past the threshold.
Report check_convergence(const GridWeight& w, const ExponentPair& pair, Policy policy,
                         const std::vector<long>& n_list);

struct BmProfile {
    double norm = 0.0;
    std::vector<ProfilePoint> points;  // (s, [v_s])
    bool flagged = false;              // some [v_s] exceeded [w] + tol
};

BmProfile bm_profile(const GridWeight& w, const ExponentPair& pair, Policy policy, const std::vector<double>& s_list);

/// Informational: reports gaps, never fails.
Report check_bm(const GridWeight& w, const ExponentPair& pair, Policy policy, const std::vector<double>& s_list);

// ---------------------------------------------------------------------------
// Randomised suites

/// Derives an independent stream seed (splitmix64 finaliser).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// I.i.d. log-normal samples exp(sigma Z).
GridWeight random_lognormal(const Dims& dims, double sigma, std::uint64_t seed);

/// Pairs from {-inf, -3, -1, -0.5, 0, 0.5, 1, 2, +inf} with p1 > p2, plus
/// the classical A_p presets for p = 1.5 and 3.
std::vector<ExponentPair> design_pairs();

/// Finite nonzero subset of design_pairs().
std::vector<ExponentPair> finite_design_pairs();

inline constexpr double kSigmas[] = {0.5, 2.0, 5.0};

/// Cut level drawn uniformly between the 10th and 90th sample percentiles.
double random_cut_level(const GridWeight& w, std::uint64_t seed);

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::size_t weights_1d = 1000;
    std::size_t n_1d = 64;
    std::size_t weights_2d = 100;
    std::size_t n_2d = 8;
    unsigned threads = 1;
};

Report theorem1_suite(const SuiteOptions& options);
Report below_cut_suite(const SuiteOptions& options);
/// Truncation profile of every random weight at levels 1, 2, 4, ... past
/// the exact threshold.
Report convergence_suite(const SuiteOptions& options);

/// Random (w, a, J) triples, a quarter of them forced to alpha2 = 0 and a
/// quarter to alpha2 = 1.
Report a2_identity_suite(std::uint64_t seed, std::size_t triples);

struct PhiSuiteOptions {
    std::uint64_t seed = 42;
    std::size_t parameter_sets = 100;
    std::size_t grid = 20;  // grid x grid points in (s, u) in [1,10] x (0,10]
};

/// Runs the phi checks on the whole-cube partition of one weight at level a.
Report check_phi(const GridWeight& w, const ExponentPair& pair, double a, std::size_t grid = 20);

/// phi(1,a) = 0, ds >= 0, closed forms vs central differences, bracket sign
/// and bracket identity on partition-derived parameters.
Report phi_suite(const PhiSuiteOptions& options);

}  // namespace apchar::verify
