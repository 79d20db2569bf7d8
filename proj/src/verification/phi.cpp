#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "apchar/error.hpp"
#include "apchar/format.hpp"
#include "apchar/verification.hpp"

namespace apchar::verify {

PhiParams PhiParams::from_partition(const PartitionStats& st, double a, const ExponentPair& pair) {
    PhiParams out;
    out.x1 = st.j1_empty ? 1.0 : st.x1;  // multiplied by alpha1 == 0 when empty
    out.y1 = st.j1_empty ? 1.0 : st.y1;
    out.alpha1 = st.alpha1;
    out.alpha2 = st.alpha2;
    out.a = a;
    out.p1 = pair.p1().value();
    out.p2 = pair.p2().value();
    return out;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::Domain, what);
}

void check_params(const PhiParams& pp, double s, double u) {
    require(std::isfinite(pp.p1) && std::isfinite(pp.p2) && pp.p1 != 0.0 && pp.p2 != 0.0 && pp.p1 > pp.p2,
            "phi needs finite nonzero exponents with p1 > p2");
    require(pp.alpha1 >= 0.0 && pp.alpha2 >= 0.0 && pp.alpha1 + pp.alpha2 > 0.0, "phi needs alpha_i >= 0");
    require(pp.x1 > 0.0 && pp.y1 > 0.0 && pp.a > 0.0, "phi needs x1, y1, a > 0");
    require(s > 0.0 && std::isfinite(s), "phi needs s > 0, got " + format_double(s));
    require(u > 0.0 && std::isfinite(u), "phi needs u > 0, got " + format_double(u));
}

struct Bases {
    double a_su;  // alpha1 x1 + alpha2 s^p1 u^p1
    double c_u;   // alpha1 y1 + alpha2 u^p2
};

Bases bases(const PhiParams& pp, double s, double u) {
    const Bases b{pp.alpha1 * pp.x1 + pp.alpha2 * std::pow(s, pp.p1) * std::pow(u, pp.p1),
                  pp.alpha1 * pp.y1 + pp.alpha2 * std::pow(u, pp.p2)};
    require(b.a_su > 0.0 && b.c_u > 0.0 && std::isfinite(b.a_su) && std::isfinite(b.c_u),
            "phi base is not a positive finite number");
    return b;
}

// long double twin of phi_eval, used for the finite-difference checks
long double phi_wide(const PhiParams& pp, long double s, long double u) {
    const long double p1 = pp.p1;
    const long double p2 = pp.p2;
    const long double a1 = pp.alpha1;
    const long double a2 = pp.alpha2;
    const long double a = pp.a;
    const long double top = a1 * pp.x1 + a2 * std::pow(s * u, p1);
    const long double bot = a1 * pp.y1 + a2 * std::pow(u, p2);
    const long double top0 = a1 * pp.x1 + a2 * std::pow(a, p1);
    const long double bot0 = a1 * pp.y1 + a2 * std::pow(a, p2);
    return std::pow(top, 1 / p1) * std::pow(bot, -1 / p2) - std::pow(top0, 1 / p1) * std::pow(bot0, -1 / p2);
}

}  // namespace

double phi_eval(const PhiParams& pp, double s, double u) {
    check_params(pp, s, u);
    const Bases at = bases(pp, s, u);
    const Bases ref = bases(pp, 1.0, pp.a);
    return std::pow(at.a_su, 1.0 / pp.p1) * std::pow(at.c_u, -1.0 / pp.p2) -
           std::pow(ref.a_su, 1.0 / pp.p1) * std::pow(ref.c_u, -1.0 / pp.p2);
}

PhiPartials phi_partials(const PhiParams& pp, double s, double u) {
    check_params(pp, s, u);
    const Bases b = bases(pp, s, u);
    const double p1 = pp.p1;
    const double p2 = pp.p2;
    const double up1 = std::pow(u, p1);
    const double up2 = std::pow(u, p2);
    const double sp1 = std::pow(s, p1);
    const double top_pow = std::pow(b.a_su, 1.0 / p1 - 1.0);

    PhiPartials out;
    out.dphi_ds = pp.alpha2 * std::pow(s, p1 - 1.0) * up1 * top_pow * std::pow(b.c_u, -1.0 / p2);
    // s^p1 u^p1 C - u^p2 A collapses to alpha1 (s^p1 u^p1 y1 - u^p2 x1)
    out.dphi_du = pp.alpha1 * pp.alpha2 / u * top_pow * std::pow(b.c_u, -1.0 / p2 - 1.0) *
                  (sp1 * up1 * pp.y1 - up2 * pp.x1);
    out.bracket = up1 * pp.y1 - up2 * pp.x1;
    return out;
}

namespace {

struct SubCheck {
    const char* name;
    double tolerance;
    double worst = -std::numeric_limits<double>::infinity();
    std::uint64_t count = 0;

    // value <= tolerance holds the check
    void add(double value) {
        worst = std::isnan(value) ? value : std::max(worst, value);
        ++count;
    }
    double excess() const { return worst - tolerance; }
};

// Relative error, or for a near-zero closed form the absolute error shifted
// so that "<= kFiniteDiffTol" means "<= kFiniteDiffAbs".
double fd_error(double closed, long double fd) {
    const long double diff = std::fabs(static_cast<long double>(closed) - fd);
    if (std::fabs(closed) < kFiniteDiffFloor) return static_cast<double>(diff) - kFiniteDiffAbs + kFiniteDiffTol;
    return static_cast<double>(diff / std::fabs(static_cast<long double>(closed)));
}

struct PhiChecks {
    SubCheck zero_at_a{"phi(1,a)", kIdentityTol};
    SubCheck ds_sign{"-dphi/ds", 1e-12};
    SubCheck fd{"finite difference", kFiniteDiffTol};
    SubCheck bracket_sign{"-bracket (u > a)", 1e-12};
    SubCheck du_sign{"-dphi/du(1,u) (u > a)", 1e-12};
    SubCheck bracket_avg{"bracket identity", kIdentityTol};

    void run(const PhiParams& pp, std::span<const double> j1, std::size_t g);
    void above_a(const PhiParams& pp, std::span<const double> j1, double u, const PhiPartials& d);
    void write(Report& report) const;
};

void PhiChecks::above_a(const PhiParams& pp, std::span<const double> j1, double u, const PhiPartials& d) {
    const double scale = std::max({1.0, std::pow(u, pp.p1) * pp.y1, std::pow(u, pp.p2) * pp.x1});
    const double rel = std::fabs(d.bracket) / scale;
    bracket_sign.add(d.bracket >= 0.0 ? -rel : rel);
    const BracketIdentity bi = bracket_identity(j1, u, pp.p1, pp.p2);
    bracket_avg.add(std::fabs(bi.bracket - bi.averaged) / bi.scale);
}

void PhiChecks::run(const PhiParams& pp, std::span<const double> j1, std::size_t g) {
    const double a = pp.a;
    const double level = std::pow(pp.alpha1 * pp.x1 + pp.alpha2 * std::pow(a, pp.p1), 1.0 / pp.p1) *
                         std::pow(pp.alpha1 * pp.y1 + pp.alpha2 * std::pow(a, pp.p2), -1.0 / pp.p2);
    zero_at_a.add(std::fabs(phi_eval(pp, 1.0, a)) / std::max(1.0, level));

    for (std::size_t si = 0; si < g; ++si) {
        const double s = 1.0 + 9.0 * static_cast<double>(si) / static_cast<double>(g - 1);
        for (std::size_t ui = 0; ui < g; ++ui) {
            const double u = 10.0 * static_cast<double>(ui + 1) / static_cast<double>(g);
            const PhiPartials d = phi_partials(pp, s, u);
            ds_sign.add(-d.dphi_ds);

            const long double hs = 1e-6L * std::max(1.0L, static_cast<long double>(s));
            const long double hu = 1e-6L * std::max(1.0L, static_cast<long double>(u));
            const long double fd_s = (phi_wide(pp, s + hs, u) - phi_wide(pp, s - hs, u)) / (2 * hs);
            const long double fd_u = (phi_wide(pp, s, u + hu) - phi_wide(pp, s, u - hu)) / (2 * hu);
            fd.add(fd_error(d.dphi_ds, fd_s));
            fd.add(fd_error(d.dphi_du, fd_u));
            if (si == 0 && u > a && !j1.empty()) above_a(pp, j1, u, d);
        }
    }
    // the fixed grid may sit entirely below a; sweep u over (a, 10a] as well
    if (j1.empty()) return;
    for (std::size_t ui = 1; ui <= g; ++ui) {
        const double u = a * (1.0 + 9.0 * static_cast<double>(ui) / static_cast<double>(g));
        const PhiPartials d = phi_partials(pp, 1.0, u);
        above_a(pp, j1, u, d);
        // dphi/du(1,u) = (positive factor) * alpha1 * bracket; compare signs
        // on the bracket's relative size so the check is scale free
        const double scale = std::max({1.0, std::pow(u, pp.p1) * pp.y1, std::pow(u, pp.p2) * pp.x1});
        const double rel = std::fabs(d.bracket) / scale;
        du_sign.add(d.dphi_du >= 0.0 ? -rel : rel);
    }
}

void PhiChecks::write(Report& report) const {
    report.tolerance = 0.0;  // violations are excesses over each check's own tolerance
    report.residual_tolerance = kIdentityTol;
    report.note_residual(zero_at_a.worst);
    if (bracket_avg.count) report.note_residual(bracket_avg.worst);
    nlohmann::json checks = nlohmann::json::array();
    for (const SubCheck* c : {&zero_at_a, &ds_sign, &fd, &bracket_sign, &du_sign, &bracket_avg}) {
        if (c->count == 0) continue;
        report.note_violation(c->excess());
        report.trials += c->count;
        checks.push_back({{"check", c->name}, {"worst", c->worst}, {"tolerance", c->tolerance}, {"count", c->count}});
    }
    report.details["checks"] = checks;
    report.finalize();
}

std::vector<double> lower_piece(const GridWeight& w, double a) {
    std::vector<double> j1;
    for (double s : w.samples()) {
        if (s <= a) j1.push_back(s);
    }
    return j1;
}

}  // namespace

Report check_phi(const GridWeight& w, const ExponentPair& pair, double a, std::size_t grid) {
    const PartitionStats st = partition_stats(w, pair, GridCube::whole(w.dims()), a);
    if (st.j2_empty) throw Error(ErrorKind::Domain, "phi analysis needs some sample above the cut level");
    PhiChecks checks;
    checks.run(PhiParams::from_partition(st, a, pair), lower_piece(w, a), std::max<std::size_t>(grid, 2));
    Report report;
    report.claim = "phi";
    report.params = {{"pair", {{"p1", pair.p1().to_string()}, {"p2", pair.p2().to_string()}}}, {"a", a}, {"grid", grid}};
    checks.write(report);
    return report;
}

Report phi_suite(const PhiSuiteOptions& options) {
    const auto pairs = finite_design_pairs();
    const std::size_t g = std::max<std::size_t>(options.grid, 2);
    PhiChecks checks;
    for (std::size_t i = 0; i < options.parameter_sets; ++i) {
        std::mt19937_64 rng(mix_seed(options.seed, i));
        const ExponentPair pair = pairs[i % pairs.size()];
        const GridWeight w = random_lognormal(Dims{32}, kSigmas[i % 3], rng());
        // a strictly below the max keeps J2 nonempty
        double a = random_cut_level(w, rng());
        if (!(a < w.max())) a = 0.5 * (w.min() + w.max());
        const PartitionStats st = partition_stats(w, pair, GridCube::whole(w.dims()), a);
        checks.run(PhiParams::from_partition(st, a, pair), lower_piece(w, a), g);
    }
    Report report;
    report.claim = "phi";
    report.seed = options.seed;
    report.provenance = "parameters from partitions of random log-normal weights, sigma in {0.5, 2, 5}";
    report.params = {{"parameter_sets", options.parameter_sets}, {"grid", g}};
    checks.write(report);
    return report;
}

}  // namespace apchar::verify
