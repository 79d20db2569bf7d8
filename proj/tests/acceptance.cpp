// One pass/fail line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "apchar/characteristic.hpp"
#include "apchar/verification.hpp"

using namespace apchar;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %-22s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Tolerances as pinned for each criterion.
constexpr double kCutTol = 1e-9;       // relative per-cube excess
constexpr double kDualTol = 1e-12;     // duality route agreement
constexpr double kIdentityTol = 1e-12; // algebraic identities
constexpr double kFdTol = 1e-6;        // closed form vs central differences
constexpr double kPowerGap = 0.05;     // power weights at n = 4096
constexpr double kSearchBudget = 1.0;  // seconds, n = 4096 exhaustive

void cutoff() {
    const auto t0 = Clock::now();
    const verify::Report r = verify::theorem1_suite({});
    const double secs = seconds_since(t0);
    const bool ok = r.pass && r.tolerance == kCutTol && secs < 60.0;
    line(1, "cut-off monotonicity", ok,
         fmt("weights=1000x64+100x8x8 cubes=%llu max_rel_excess=%.3g tol=%.0e time=%.2fs (<60s)",
             static_cast<unsigned long long>(r.trials), r.max_violation, kCutTol, secs));
}

void corollaries() {
    const verify::Report below = verify::below_cut_suite({});
    const verify::Report conv = verify::convergence_suite({});
    const bool ok = below.pass && below.max_violation <= kCutTol && below.residual_max <= kDualTol && conv.pass &&
                    conv.max_violation <= kCutTol && conv.residual_max == 0.0;
    line(2, "below-cut + truncation", ok,
         fmt("below: cubes=%llu max_rel_excess=%.3g dual_residual=%.3g (<=%.0e); truncation: levels=%llu "
             "max_rel_excess=%.3g exact_mismatch=%.3g",
             static_cast<unsigned long long>(below.trials), below.max_violation, below.residual_max, kDualTol,
             static_cast<unsigned long long>(conv.trials), conv.max_violation, conv.residual_max));
}

void a2_identity() {
    const verify::Report r = verify::a2_identity_suite(42, 10000);
    const int zero = r.details["alpha2_zero"];
    const int one = r.details["alpha2_one"];
    const bool ok = r.pass && r.residual_max <= kIdentityTol && r.max_violation <= 0.0 && zero > 0 && one > 0;
    line(3, "a2 decomposition", ok,
         fmt("triples=%llu residual=%.3g (<=%.0e) sign_excess=%.3g alpha2=0:%d alpha2=1:%d",
             static_cast<unsigned long long>(r.trials), r.residual_max, kIdentityTol, r.max_violation, zero, one));
}

void phi() {
    const verify::Report r = verify::phi_suite({});
    double fd_worst = 0.0;
    for (const auto& c : r.details["checks"]) {
        if (c["check"] == "finite difference") fd_worst = c["worst"];
    }
    const bool ok = r.pass && r.residual_max <= kIdentityTol && fd_worst <= kFdTol;
    line(4, "phi calculus", ok,
         fmt("sets=100 grid=20x20 fd_rel=%.3g (<=%.0e) zero/identity_residual=%.3g sign_excess=%.3g", fd_worst,
             kFdTol, r.residual_max, r.max_violation));
}

void power_weights() {
    bool ok = true;
    std::string detail;
    for (double alpha : {0.25, 0.5}) {
        const double limit = 1.0 / (1.0 - alpha * alpha);
        double gap256 = 0.0;
        double gap4096 = 0.0;
        for (std::size_t n = 256; n <= 4096; n *= 2) {
            std::vector<double> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = std::pow((static_cast<double>(i) + 0.5) / n, alpha);
            const double v =
                ap_norm(GridWeight::line(s), ExponentPair::a2(), {Policy::Anchored, Mode::Accurate, 1}).value;
            const double gap = std::fabs(v - limit) / limit;
            if (n == 256) gap256 = gap;
            if (n == 4096) gap4096 = gap;
        }
        ok = ok && gap4096 < kPowerGap && gap4096 < gap256;
        detail += fmt("alpha=%.2f gap256=%.3g gap4096=%.3g; ", alpha, gap256, gap4096);
    }
    line(5, "power-weight oracle", ok, detail + fmt("(<%.0f%%, shrinking)", kPowerGap * 100));
}

void performance() {
    const GridWeight w = verify::random_lognormal({4096}, 2.0, 7);
    const MeanCache cache(w, ExponentPair::a2(), Mode::Fast);
    double best = 1e9;
    CharacteristicResult r;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        r = ap_norm(cache, Policy::Exhaustive, 1);
        best = std::min(best, seconds_since(t0));
    }
    const bool ok = r.cubes_examined == 8390656 && best < kSearchBudget;
    line(6, "search performance", ok,
         fmt("n=4096 cubes=%llu best_of_3=%.3fs (<%.0fs) kernels=%s",
             static_cast<unsigned long long>(r.cubes_examined), best, kSearchBudget,
             std::string(kernels::active_kernels().name).c_str()));
}

void determinism() {
    bool ok = true;
    int cases = 0;
    const auto pairs = verify::design_pairs();
    const std::vector<Dims> shapes = {{2048}, {32, 32}, {16, 16, 16}};
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        for (std::size_t k = 0; k < 4; ++k) {
            const GridWeight w = k == 3 ? GridWeight::constant(shapes[s], 3.0)
                                        : verify::random_lognormal(shapes[s], verify::kSigmas[k], 31 * s + k);
            const ExponentPair pair = pairs[(7 * s + 5 * k) % pairs.size()];
            for (Mode m : {Mode::Fast, Mode::Accurate}) {
                if (m == Mode::Accurate && s == 0) continue;  // O(n^3) scan; the 2-d/3-d cases cover it
                const SearchOptions base{default_policy(shapes[s]), m, 1};
                const CharacteristicResult one = ap_norm(w, pair, base);
                for (unsigned th : {4u, 8u}) {
                    SearchOptions o = base;
                    o.threads = th;
                    const CharacteristicResult many = ap_norm(w, pair, o);
                    ok = ok && many.value == one.value && many.argmax == one.argmax;
                }
                ++cases;
            }
        }
    }
    line(7, "thread determinism", ok, fmt("cases=%d threads={1,4,8} identical value and argmax", cases));
}

}  // namespace

int main() {
    cutoff();
    corollaries();
    a2_identity();
    phi();
    power_weights();
    performance();
    determinism();
    std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
