#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "apchar/kernels.hpp"

using namespace apchar::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
    }
    return true;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double spread) {
    std::normal_distribution<double> z;
    std::vector<double> out(n);
    for (double& x : out) x = std::exp(spread * z(rng));
    return out;
}

}  // namespace

TEST_CASE("active variant is usable") {
    const RowKernels& k = active_kernels();
    CHECK(!k.name.empty());
    double x[3] = {1, 2, 3};
    k.scale(x, 3, 2.0);
    CHECK(x[2] == 6.0);
}

TEST_CASE("scalar argmax keeps the first maximum") {
    const RowKernels& k = scalar_kernels();
    const double num[] = {1, 3, 2, 3, 3};
    const double den[] = {1, 1, 1, 1, 1};
    const ArgMax a = k.ratio_argmax(num, den, 5);
    CHECK(a.value == 3.0);
    CHECK(a.index == 1);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
    const RowKernels* simd = avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("AVX2 variant not available on this machine/build; skipping");
        return;
    }
    const RowKernels& ref = scalar_kernels();
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 70; ++n) {
        for (double spread : {0.1, 3.0, 40.0}) {
            // prefix-like rows: increasing sums of positive terms
            std::vector<double> terms = random_values(rng, n, spread);
            std::vector<double> row(n);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) row[i] = (acc += terms[i]);
            const double base = terms[0] * 0.25;
            const double cross = 1.0 + static_cast<double>(n % 5);
            const double first = 1.0 + static_cast<double>(n % 3);

            std::vector<double> a(n), b(n);
            ref.row_means(row.data(), base, n, cross, first, a.data());
            simd->row_means(row.data(), base, n, cross, first, b.data());
            REQUIRE(same_bits(a, b));

            std::vector<double> x = random_values(rng, n, spread);
            std::vector<double> y = x;
            ref.scale(x.data(), n, 0.3);
            simd->scale(y.data(), n, 0.3);
            REQUIRE(same_bits(x, y));
            ref.reciprocal_scale(x.data(), n, 7.0);
            simd->reciprocal_scale(y.data(), n, 7.0);
            REQUIRE(same_bits(x, y));

            // include NaN, infinities and values at both bounds
            std::vector<double> lo = random_values(rng, n, 1.0);
            std::vector<double> hi(n);
            for (std::size_t i = 0; i < n; ++i) hi[i] = lo[i] * 3.0;
            std::vector<double> c = random_values(rng, n, 2.0);
            if (n > 3) {
                c[0] = std::numeric_limits<double>::quiet_NaN();
                c[1] = std::numeric_limits<double>::infinity();
                c[2] = lo[2];
                c[3] = hi[3];
            }
            std::vector<double> d = c;
            ref.clamp(c.data(), lo.data(), hi.data(), n);
            simd->clamp(d.data(), lo.data(), hi.data(), n);
            REQUIRE(same_bits(c, d));

            // rounded values so that ties are frequent
            std::vector<double> num = random_values(rng, n, 0.5);
            std::vector<double> den = random_values(rng, n, 0.5);
            for (double& v : num) v = std::round(v * 2.0) + 1.0;
            for (double& v : den) v = std::round(v);
            for (double& v : den) v = v < 1.0 ? 1.0 : v;
            const ArgMax r = ref.ratio_argmax(num.data(), den.data(), n);
            const ArgMax s = simd->ratio_argmax(num.data(), den.data(), n);
            REQUIRE(std::bit_cast<std::uint64_t>(r.value) == std::bit_cast<std::uint64_t>(s.value));
            REQUIRE(r.index == s.index);
        }
    }
}
