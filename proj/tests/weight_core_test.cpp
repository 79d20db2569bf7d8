#include <doctest.h>

#include <cmath>
#include <random>

#include "apchar/error.hpp"
#include "apchar/power_mean.hpp"
#include "apchar/verification.hpp"
#include "apchar/weight_io.hpp"
#include "apchar/weight_ops.hpp"
#include "oracles.hpp"

using namespace apchar;

namespace {

const GridWeight w41 = GridWeight::line({4.0, 1.0});
const GridCube whole1{{0}, {2}};

Exponent fin(double v) { return Exponent::finite(v); }

std::vector<Exponent> exponent_ladder() {
    return {Exponent::minus_infinity(), fin(-3), fin(-1), fin(-0.5), Exponent::zero(),
            fin(0.5),                   fin(1),  fin(2),  Exponent::plus_infinity()};
}

GridCube random_cube(const Dims& dims, std::mt19937_64& rng) {
    GridCube c{Dims(dims.size()), Dims(dims.size())};
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::uniform_int_distribution<std::size_t> pick(0, dims[k] - 1);
        std::size_t l = pick(rng);
        std::size_t h = pick(rng);
        if (l > h) std::swap(l, h);
        c.lo[k] = l;
        c.hi[k] = h + 1;
    }
    return c;
}

}  // namespace

TEST_SUITE("exponent") {
    TEST_CASE("kinds and order") {
        CHECK_THROWS_AS(Exponent::finite(0.0), Error);
        CHECK_THROWS_AS(Exponent::finite(INFINITY), Error);
        CHECK_THROWS_AS(Exponent::from_double(NAN), Error);
        CHECK(Exponent::from_double(0.0).kind() == Exponent::Kind::Zero);
        CHECK(Exponent::from_double(-INFINITY).kind() == Exponent::Kind::MinusInfinity);
        const auto ladder = exponent_ladder();
        for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i - 1] < ladder[i]);
        CHECK(Exponent::plus_infinity().to_string() == "inf");
        CHECK(fin(-0.5).to_string() == "-0.5");
    }

    TEST_CASE("pairs need p1 > p2") {
        CHECK_THROWS_AS(ExponentPair(fin(-1), fin(1)), Error);
        CHECK_THROWS_AS(ExponentPair(fin(1), fin(1)), Error);
        CHECK_NOTHROW(ExponentPair(Exponent::plus_infinity(), Exponent::minus_infinity()));
        CHECK(ExponentPair::classical(2.0) == ExponentPair::a2());
        const ExponentPair c3 = ExponentPair::classical(3.0);
        CHECK(c3.p2().value() == -0.5);
        const ExponentPair d = ExponentPair(fin(2), fin(-3)).dual();
        CHECK(d.p1().value() == 3.0);
        CHECK(d.p2().value() == -2.0);
        CHECK(ExponentPair::a2().dual() == ExponentPair::a2());
    }
}

TEST_SUITE("grid weight") {
    TEST_CASE("validation") {
        CHECK_THROWS_AS(GridWeight({2}, {1.0}), Error);
        CHECK_THROWS_AS(GridWeight({2}, {1.0, 0.0}), Error);
        CHECK_THROWS_AS(GridWeight({2}, {1.0, -1.0}), Error);
        CHECK_THROWS_AS(GridWeight({1}, {INFINITY}), Error);
        CHECK_THROWS_AS(GridWeight({0}, {}), Error);
        CHECK_THROWS_AS(validate_cube({{1}, {1}}, {2}), Error);
        CHECK_THROWS_AS(validate_cube({{0}, {3}}, {2}), Error);
        CHECK_NOTHROW(validate_cube(whole1, {2}));
    }

    TEST_CASE("row-major cell visiting") {
        const GridWeight w({2, 3}, {1, 2, 3, 4, 5, 6});
        std::vector<double> seen;
        for_each_cell({{0, 1}, {2, 3}}, w.strides(), [&](std::size_t i) { seen.push_back(w[i]); });
        CHECK(seen == std::vector<double>{2, 3, 5, 6});
        CHECK(GridCube{{0, 1}, {2, 3}}.measure({2, 3}) == doctest::Approx(4.0 / 6.0));
    }
}

TEST_SUITE("power mean") {
    TEST_CASE("worked examples") {
        for (const Exponent& p : exponent_ladder()) {
            CHECK(power_mean(GridWeight::constant({3, 2}, 7.5), p, {{0, 0}, {3, 2}}) == 7.5);
            CHECK(power_mean(GridWeight::constant({5}, 0.3), p, {{1}, {4}}, Mode::Fast) == 0.3);
        }
        CHECK(power_mean(w41, fin(1), whole1) == 2.5);
        CHECK(power_mean(GridWeight::line({std::exp(2.0), 1.0}), Exponent::zero(), whole1) ==
              doctest::Approx(std::exp(1.0)).epsilon(1e-15));
        CHECK(power_mean(w41, Exponent::plus_infinity(), whole1) == 4.0);
        CHECK(power_mean(w41, Exponent::minus_infinity(), whole1) == 1.0);
        CHECK_THROWS_AS(power_mean(w41, fin(1), {{0}, {3}}), Error);
    }

    TEST_CASE("ap ratio examples") {
        CHECK(ap_ratio(w41, ExponentPair::a2(), whole1) == 1.5625);
        CHECK(ap_ratio(GridWeight::constant({4}, 2.0), ExponentPair::a2(), {{1}, {3}}) == 1.0);
        CHECK(ap_ratio(w41, {Exponent::plus_infinity(), Exponent::minus_infinity()}, whole1) == 4.0);
    }

    TEST_CASE("agrees with the long double definition, extreme range included") {
        const auto pairs = verify::design_pairs();
        for (std::uint64_t t = 0; t < 200; ++t) {
            std::mt19937_64 rng(t);
            const GridWeight w = verify::random_lognormal(t % 2 ? Dims{40} : Dims{6, 7}, verify::kSigmas[t % 3], rng());
            const GridCube c = random_cube(w.dims(), rng);
            const auto xs = oracle::cells(w, c);
            for (const Exponent& p : exponent_ladder()) {
                const long double want = oracle::power_mean(xs, p);
                if (!std::isfinite(static_cast<double>(want)) || want == 0) continue;  // oracle itself over/underflowed
                const long double got = power_mean(w, p, c, Mode::Accurate);
                CHECK(static_cast<double>(std::fabs(got - want) / want) < 1e-12);
            }
        }
    }

    TEST_CASE("monotone in p, ratio at least 1, inside [min, max]") {
        const auto ladder = exponent_ladder();
        for (std::uint64_t t = 0; t < 300; ++t) {
            std::mt19937_64 rng(1000 + t);
            const GridWeight w = verify::random_lognormal({32}, verify::kSigmas[t % 3], rng());
            const GridCube c = random_cube(w.dims(), rng);
            const auto xs = oracle::cells(w, c);
            const double lo = static_cast<double>(*std::min_element(xs.begin(), xs.end()));
            const double hi = static_cast<double>(*std::max_element(xs.begin(), xs.end()));
            double prev = 0.0;
            for (const Exponent& p : ladder) {
                for (Mode m : {Mode::Fast, Mode::Accurate}) {
                    const double v = power_mean(w, p, c, m);
                    CHECK(v >= lo);
                    CHECK(v <= hi);
                }
                const double v = power_mean(w, p, c);
                CHECK(v >= prev * (1 - 1e-12));
                prev = v;
            }
            for (const ExponentPair& pair : verify::design_pairs()) CHECK(ap_ratio(w, pair, c) >= 1.0 - 1e-12);
        }
    }

    TEST_CASE("compensated sum recovers cancelled terms") {
        CompensatedSum s;
        s.add(1.0);
        s.add(1e-17);
        s.add(-1.0);
        CHECK(s.value() == 1e-17);
    }
}

TEST_SUITE("operators") {
    TEST_CASE("cut-offs") {
        CHECK(cutoff_above(w41, 10.0) == w41);
        CHECK(cutoff_above(w41, 2.0) == GridWeight::line({2, 1}));
        CHECK(cutoff_above(w41, 0.5) == GridWeight::constant({2}, 0.5));
        CHECK(cutoff_below(w41, 0.5) == w41);
        CHECK(cutoff_below(w41, 2.0) == GridWeight::line({4, 2}));
        CHECK(reciprocal(cutoff_above(reciprocal(w41), 0.5)) == GridWeight::line({4, 2}));
        CHECK_THROWS_AS(cutoff_above(w41, 0.0), Error);
        CHECK_THROWS_AS(cutoff_below(w41, -1.0), Error);
        CHECK_THROWS_AS(cutoff_above(w41, NAN), Error);
    }

    TEST_CASE("truncation") {
        const GridWeight w = GridWeight::line({9, 1, 0.1});
        CHECK(truncate_two_sided(w, 3) == GridWeight::line({3, 1, 1.0 / 3.0}));
        CHECK(truncate_two_sided(w, 10) == w);
        CHECK(truncate_two_sided(w, 1) == GridWeight::constant({3}, 1.0));
        CHECK_THROWS_AS(truncate_two_sided(w, 0), Error);
    }

    TEST_CASE("pointwise algebra on random weights") {
        for (std::uint64_t t = 0; t < 50; ++t) {
            const GridWeight w = verify::random_lognormal({5, 7}, verify::kSigmas[t % 3], t);
            const double a = verify::random_cut_level(w, t + 1);
            const GridWeight lo = cutoff_above(w, a);
            const GridWeight hi = cutoff_below(w, a);
            CHECK(cutoff_above(lo, a) == lo);
            CHECK(cutoff_below(hi, a) == hi);
            for (std::size_t i = 0; i < w.size(); ++i) {
                CHECK(lo[i] <= w[i]);
                CHECK(hi[i] >= w[i]);
                CHECK(lo[i] <= a);
            }
            const long n = 1 + static_cast<long>(t % 7);
            CHECK(truncate_two_sided(w, n) == cutoff_below(cutoff_above(w, static_cast<double>(n)), 1.0 / n));
        }
    }

    TEST_CASE("reciprocal dual") {
        const auto [rw, rp] = reciprocal_dual(w41, ExponentPair::a2());
        CHECK(rw == GridWeight::line({0.25, 1}));
        CHECK(rp == ExponentPair::a2());
        CHECK(ap_ratio(rw, rp, whole1) == 1.5625);

        for (std::uint64_t t = 0; t < 100; ++t) {
            std::mt19937_64 rng(t);
            const GridWeight w = verify::random_lognormal({24}, verify::kSigmas[t % 3], rng());
            const auto pairs = verify::design_pairs();
            const ExponentPair pair = pairs[t % pairs.size()];
            const auto [dw, dp] = reciprocal_dual(w, pair);
            const auto [ww, pp] = reciprocal_dual(dw, dp);
            CHECK(pp == pair);
            for (std::size_t i = 0; i < w.size(); ++i) CHECK(ww[i] == doctest::Approx(w[i]).epsilon(1e-15));
            const GridCube c = random_cube(w.dims(), rng);
            const double r = ap_ratio(w, pair, c);
            CHECK(std::fabs(ap_ratio(dw, dp, c) - r) / std::max(1.0, r) <= 1e-12);
        }
    }

    TEST_CASE("bm regularisation") {
        CHECK(bm_regularize(GridWeight::line({1.0}), 1.0)[0] == 2.0 / 3.0);
        const GridWeight v = bm_regularize(w41, 1e-6);
        CHECK(std::fabs(v[0] - 4.0) / 4.0 < 1e-5);
        CHECK(std::fabs(v[1] - 1.0) < 1e-5);
        CHECK_THROWS_AS(bm_regularize(w41, 0.0), Error);
        for (double s : {0.1, 1.0, 3.0}) {
            const GridWeight big = GridWeight::line({1e-300, 1e-3, 1.0, 1e3, 1e300});
            const GridWeight r = bm_regularize(big, s);
            const double lo = std::min(s / (s * s + 1), 1 / s);
            const double hi = std::max(s / (s * s + 1), 1 / s);
            for (double x : r.samples()) {
                CHECK(x >= lo * (1 - 1e-15));
                CHECK(x <= hi * (1 + 1e-15));
            }
        }
    }
}

TEST_SUITE("partition stats") {
    TEST_CASE("worked examples") {
        const PartitionStats st = partition_stats(w41, ExponentPair::a2(), whole1, 2.0);
        CHECK(st.x1 == 1.0);
        CHECK(st.y1 == 1.0);
        CHECK(st.x2 == 4.0);
        CHECK(st.y2 == 0.25);
        CHECK(st.alpha1 == 0.5);
        CHECK(st.alpha2 == 0.5);
        const PartitionStats top = partition_stats(w41, ExponentPair::a2(), whole1, 4.0);
        CHECK(top.alpha2 == 0.0);
        CHECK(top.j2_empty);
        const PartitionStats bottom = partition_stats(w41, ExponentPair::a2(), whole1, 0.5);
        CHECK(bottom.alpha1 == 0.0);
        CHECK(bottom.j1_empty);
        CHECK_THROWS_AS(partition_stats(w41, {Exponent::plus_infinity(), fin(1)}, whole1, 2.0), Error);
    }

    TEST_CASE("recomposition and per-piece Hölder") {
        const auto pairs = verify::finite_design_pairs();
        for (std::uint64_t t = 0; t < 300; ++t) {
            std::mt19937_64 rng(t);
            const GridWeight w = verify::random_lognormal(t % 3 ? Dims{30} : Dims{5, 6}, verify::kSigmas[t % 3], rng());
            const GridCube c = random_cube(w.dims(), rng);
            const ExponentPair pair = pairs[t % pairs.size()];
            const double a = verify::random_cut_level(w, rng());
            const PartitionStats st = partition_stats(w, pair, c, a);
            CHECK(st.count1 + st.count2 == c.cell_count());
            CHECK(st.alpha1 + st.alpha2 == doctest::Approx(1.0).epsilon(1e-15));

            const auto xs = oracle::cells(w, c);
            const double p1 = pair.p1().value();
            const double p2 = pair.p2().value();
            const long double m1 = std::pow(oracle::power_mean(xs, pair.p1()), static_cast<long double>(p1));
            const long double m2 = std::pow(oracle::power_mean(xs, pair.p2()), static_cast<long double>(p2));
            const double x = (st.j1_empty ? 0.0 : st.alpha1 * st.x1) + (st.j2_empty ? 0.0 : st.alpha2 * st.x2);
            const double y = (st.j1_empty ? 0.0 : st.alpha1 * st.y1) + (st.j2_empty ? 0.0 : st.alpha2 * st.y2);
            if (std::isfinite(static_cast<double>(m1)) && m1 > 0) CHECK(std::fabs(x - m1) / m1 <= 1e-12);
            if (std::isfinite(static_cast<double>(m2)) && m2 > 0) CHECK(std::fabs(y - m2) / m2 <= 1e-12);
            if (!st.j1_empty) CHECK(std::pow(st.x1, 1 / p1) >= std::pow(st.y1, 1 / p2) * (1 - 1e-12));
            if (!st.j2_empty) CHECK(std::pow(st.x2, 1 / p1) >= std::pow(st.y2, 1 / p2) * (1 - 1e-12));
        }
    }
}

TEST_SUITE("weight files") {
    TEST_CASE("json and csv") {
        const GridWeight w = io::parse_weight(R"({"dims": [2, 2], "samples": [1, 2.5, 3e-3, 4]})");
        CHECK(w.dims() == Dims{2, 2});
        CHECK(w[2] == 3e-3);
        CHECK(io::parse_weight("4\n1,\n\n  0.5\n") == GridWeight::line({4, 1, 0.5}));
        CHECK_THROWS_AS(io::parse_weight(R"({"dims": [3], "samples": [1, 2]})"), Error);
        CHECK_THROWS_AS(io::parse_weight(R"({"dims": [2], "samples": [1, 0]})"), Error);
        CHECK_THROWS_AS(io::parse_weight(R"({"dims": [-2], "samples": [1, 1]})"), Error);
        CHECK_THROWS_AS(io::parse_weight(R"({"dims": [2], "samples": [1, "x"]})"), Error);
        CHECK_THROWS_AS(io::parse_weight("1\nnan\n"), Error);
        CHECK_THROWS_AS(io::parse_weight("1\n-2\n"), Error);
        CHECK_THROWS_AS(io::parse_weight("  "), Error);
    }

    TEST_CASE("round trip is exact") {
        for (std::uint64_t t = 0; t < 20; ++t) {
            const GridWeight w = verify::random_lognormal({3, 4}, verify::kSigmas[t % 3], t);
            const std::string text = io::weight_to_json(w);
            CHECK(io::parse_weight(text) == w);
            CHECK(io::weight_to_json(io::parse_weight(text)) == text);
        }
    }
}
