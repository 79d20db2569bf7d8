#pragma once

#include <cstddef>
#include <string_view>

namespace apchar::kernels {

struct ArgMax {
    double value;
    std::size_t index;
};

/// Inner loops of the supremum search, evaluated over one "row" of boxes
/// that share every coordinate except the upper end on the last axis.
///
/// Every variant performs the same IEEE operations in the same order per
/// element, so all implementations return bit-identical results.
struct RowKernels {
    std::string_view name;

    /// out[k] = (row[k] - base) / (cross * (first_extent + k))
    void (*row_means)(const double* row, double base, std::size_t count, double cross, double first_extent,
                      double* out);

    /// x[k] = x[k] * factor
    void (*scale)(double* x, std::size_t count, double factor);

    /// x[k] = (1 / x[k]) * factor
    void (*reciprocal_scale)(double* x, std::size_t count, double factor);

    /// x[k] = clamp_mean(x[k], lo[k], hi[k])
    void (*clamp)(double* x, const double* lo, const double* hi, std::size_t count);

    /// First index k maximising num[k] / den[k] (strict >, so ties keep the
    /// earliest). count must be >= 1.
    ArgMax (*ratio_argmax)(const double* num, const double* den, std::size_t count);
};

const RowKernels& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const RowKernels* avx2_kernels() noexcept;

/// Best variant for this CPU. APCHAR_KERNELS=scalar forces the reference path.
const RowKernels& active_kernels() noexcept;

}  // namespace apchar::kernels
