// Compiled with -mavx2 only; callers reach it through avx2_kernels(), which
// checks the CPU first.
#include "apchar/kernels.hpp"
#include "apchar/power_mean.hpp"

#if defined(APCHAR_HAVE_AVX2)

#include <immintrin.h>

#include <limits>

namespace apchar::kernels {

namespace {

void row_means(const double* row, double base, std::size_t count, double cross, double first_extent, double* out) {
    const __m256d vbase = _mm256_set1_pd(base);
    const __m256d vcross = _mm256_set1_pd(cross);
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d extent = _mm256_add_pd(_mm256_set1_pd(first_extent), _mm256_setr_pd(0.0, 1.0, 2.0, 3.0));
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const __m256d num = _mm256_sub_pd(_mm256_loadu_pd(row + k), vbase);
        _mm256_storeu_pd(out + k, _mm256_div_pd(num, _mm256_mul_pd(vcross, extent)));
        extent = _mm256_add_pd(extent, step);
    }
    for (; k < count; ++k) {
        const double e = first_extent + static_cast<double>(k);
        out[k] = (row[k] - base) / (cross * e);
    }
}

void scale(double* x, std::size_t count, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) _mm256_storeu_pd(x + k, _mm256_mul_pd(_mm256_loadu_pd(x + k), f));
    for (; k < count; ++k) x[k] = x[k] * factor;
}

void reciprocal_scale(double* x, std::size_t count, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        _mm256_storeu_pd(x + k, _mm256_mul_pd(_mm256_div_pd(one, _mm256_loadu_pd(x + k)), f));
    }
    for (; k < count; ++k) x[k] = (1.0 / x[k]) * factor;
}

void clamp(double* x, const double* lo, const double* hi, std::size_t count) {
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const __m256d v = _mm256_loadu_pd(x + k);
        const __m256d l = _mm256_loadu_pd(lo + k);
        const __m256d h = _mm256_loadu_pd(hi + k);
        // !(v >= l) picks l, NaN included
        __m256d r = _mm256_blendv_pd(l, v, _mm256_cmp_pd(v, l, _CMP_GE_OQ));
        r = _mm256_blendv_pd(r, h, _mm256_cmp_pd(r, h, _CMP_GT_OQ));
        _mm256_storeu_pd(x + k, r);
    }
    for (; k < count; ++k) x[k] = clamp_mean(x[k], lo[k], hi[k]);
}

ArgMax ratio_argmax(const double* num, const double* den, std::size_t count) {
    if (count < 8) {
        ArgMax best{num[0] / den[0], 0};
        for (std::size_t k = 1; k < count; ++k) {
            const double r = num[k] / den[k];
            if (r > best.value) best = {r, k};
        }
        return best;
    }
    // Each lane keeps the first maximum among the indices congruent to it
    // mod 4; the lanes are merged by value, then by lowest index.
    __m256d best = _mm256_div_pd(_mm256_loadu_pd(num), _mm256_loadu_pd(den));
    __m256d best_idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d idx = best_idx;
    const __m256d step = _mm256_set1_pd(4.0);
    std::size_t k = 4;
    for (; k + 4 <= count; k += 4) {
        idx = _mm256_add_pd(idx, step);
        const __m256d r = _mm256_div_pd(_mm256_loadu_pd(num + k), _mm256_loadu_pd(den + k));
        const __m256d gt = _mm256_cmp_pd(r, best, _CMP_GT_OQ);
        best = _mm256_blendv_pd(best, r, gt);
        best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    }
    alignas(32) double lane_val[4];
    alignas(32) double lane_idx[4];
    _mm256_store_pd(lane_val, best);
    _mm256_store_pd(lane_idx, best_idx);
    ArgMax out{lane_val[0], static_cast<std::size_t>(lane_idx[0])};
    for (int j = 1; j < 4; ++j) {
        const auto j_idx = static_cast<std::size_t>(lane_idx[j]);
        if (lane_val[j] > out.value || (lane_val[j] == out.value && j_idx < out.index)) out = {lane_val[j], j_idx};
    }
    for (; k < count; ++k) {
        const double r = num[k] / den[k];
        if (r > out.value) out = {r, k};
    }
    return out;
}

}  // namespace

const RowKernels* avx2_kernels_unchecked() noexcept {
    static const RowKernels table{"avx2", row_means, scale, reciprocal_scale, clamp, ratio_argmax};
    return &table;
}

}  // namespace apchar::kernels

#else

namespace apchar::kernels {

const RowKernels* avx2_kernels_unchecked() noexcept { return nullptr; }

}  // namespace apchar::kernels

#endif
