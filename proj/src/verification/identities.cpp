#include <algorithm>
#include <cmath>
#include <random>

#include "apchar/error.hpp"
#include "apchar/power_mean.hpp"
#include "apchar/verification.hpp"

namespace apchar::verify {

A2Decomposition a2_decomposition_residual(const GridWeight& w, double a, const GridCube& cube) {
    validate_cube(cube, w.dims());
    A2Decomposition dec;
    dec.stats = partition_stats(w, ExponentPair::a2(), cube, a);

    // left side straight from cell means, without the partition
    CompensatedSum mw, mr, mwa, mra;
    std::size_t count = 0;
    for_each_cell(cube, w.strides(), [&](std::size_t i) {
        const double s = w[i];
        const double c = std::min(s, a);
        mw.add(s);
        mr.add(1.0 / s);
        mwa.add(c);
        mra.add(1.0 / c);
        ++count;
    });
    const double n = static_cast<double>(count);
    const double full = (mw.value() / n) * (mr.value() / n);
    const double cut = (mwa.value() / n) * (mra.value() / n);
    dec.lhs = full - cut;

    const PartitionStats& st = dec.stats;
    if (!st.j2_empty) {
        dec.second_paren = st.x2 * st.y2 - 1.0;
        dec.second_scale = std::max(1.0, st.x2 * st.y2);
        if (!st.j1_empty) {
            dec.first_paren = st.x1 * st.y2 + st.x2 * st.y1 - st.y1 * a - st.x1 / a;
            dec.first_scale = std::max({1.0, st.x1 * st.y2 + st.x2 * st.y1, st.y1 * a + st.x1 / a});
        }
    }
    dec.rhs = st.alpha1 * st.alpha2 * dec.first_paren + st.alpha2 * st.alpha2 * dec.second_paren;
    dec.residual = std::fabs(dec.lhs - dec.rhs) / std::max(1.0, full);
    return dec;
}

namespace {

constexpr double kFirstParenTol = 1e-9;
constexpr double kSecondParenTol = 1e-12;

}  // namespace

void record_a2(Report& report, const A2Decomposition& dec) {
    ++report.trials;
    report.note_residual(dec.residual);
    // signed excess over each claim's own tolerance; <= 0 means it holds
    double excess = -std::numeric_limits<double>::infinity();
    if (!dec.stats.j2_empty) {
        excess = std::max(excess, -dec.second_paren / dec.second_scale - kSecondParenTol);
        if (!dec.stats.j1_empty) excess = std::max(excess, -dec.first_paren / dec.first_scale - kFirstParenTol);
    }
    report.note_violation(excess);
}

Report a2_identity_suite(std::uint64_t seed, std::size_t triples) {
    Report report;
    report.claim = "a2-identity";
    report.seed = seed;
    report.tolerance = 0.0;
    report.residual_tolerance = kIdentityTol;
    report.provenance = "random log-normal weights, sigma in {0.5, 2, 5}";

    std::size_t alpha2_zero = 0;
    std::size_t alpha2_one = 0;
    for (std::size_t t = 0; t < triples; ++t) {
        std::mt19937_64 rng(mix_seed(seed, t));
        const Dims dims = t % 5 == 4 ? Dims{8, 8} : Dims{64};
        const GridWeight w = random_lognormal(dims, kSigmas[t % 3], rng());

        GridCube cube{std::vector<std::size_t>(dims.size()), std::vector<std::size_t>(dims.size())};
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::uniform_int_distribution<std::size_t> pick(0, dims[k]);
            std::size_t l = pick(rng);
            std::size_t h = pick(rng);
            if (l > h) std::swap(l, h);
            if (l == h) {
                if (h == dims[k]) {
                    --l;
                } else {
                    ++h;
                }
            }
            cube.lo[k] = l;
            cube.hi[k] = h;
        }
        double lo = w.max();
        double hi = w.min();
        for_each_cell(cube, w.strides(), [&](std::size_t i) {
            lo = std::min(lo, w[i]);
            hi = std::max(hi, w[i]);
        });
        double a = 0.0;
        switch (t % 4) {
            case 0: a = hi; break;        // J2 empty (w == a goes to J1)
            case 1: a = 0.5 * lo; break;  // J1 empty
            default: a = std::uniform_real_distribution<double>(lo, hi)(rng); break;
        }
        const A2Decomposition dec = a2_decomposition_residual(w, a, cube);
        if (dec.stats.alpha2 == 0.0) ++alpha2_zero;
        if (dec.stats.alpha2 == 1.0) ++alpha2_one;
        record_a2(report, dec);
    }
    report.params = {{"triples", triples}};
    report.details = {{"alpha2_zero", alpha2_zero},
                      {"alpha2_one", alpha2_one},
                      {"first_paren_tolerance", kFirstParenTol},
                      {"second_paren_tolerance", kSecondParenTol}};
    report.finalize();
    return report;
}

BracketIdentity bracket_identity(std::span<const double> j1_samples, double u, double p1, double p2) {
    if (j1_samples.empty()) throw Error(ErrorKind::Domain, "bracket identity needs a nonempty J1");
    CompensatedSum x1, y1, avg;
    const double up1 = std::pow(u, p1);
    const double up2 = std::pow(u, p2);
    for (double s : j1_samples) {
        const double sp1 = std::pow(s, p1);
        const double sp2 = std::pow(s, p2);
        x1.add(sp1);
        y1.add(sp2);
        avg.add(up1 * sp2 - up2 * sp1);
    }
    const double n = static_cast<double>(j1_samples.size());
    BracketIdentity out;
    const double lead = up1 * (y1.value() / n);
    const double tail = up2 * (x1.value() / n);
    out.bracket = lead - tail;
    out.averaged = avg.value() / n;
    out.scale = std::max({1.0, std::fabs(lead), std::fabs(tail)});
    return out;
}

}  // namespace apchar::verify
