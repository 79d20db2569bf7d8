#include "apchar/kernels.hpp"
#include "apchar/power_mean.hpp"

namespace apchar::kernels {

namespace {

void row_means(const double* row, double base, std::size_t count, double cross, double first_extent, double* out) {
    for (std::size_t k = 0; k < count; ++k) {
        const double extent = first_extent + static_cast<double>(k);
        out[k] = (row[k] - base) / (cross * extent);
    }
}

void scale(double* x, std::size_t count, double factor) {
    for (std::size_t k = 0; k < count; ++k) x[k] = x[k] * factor;
}

void reciprocal_scale(double* x, std::size_t count, double factor) {
    for (std::size_t k = 0; k < count; ++k) x[k] = (1.0 / x[k]) * factor;
}

void clamp(double* x, const double* lo, const double* hi, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) x[k] = clamp_mean(x[k], lo[k], hi[k]);
}

ArgMax ratio_argmax(const double* num, const double* den, std::size_t count) {
    ArgMax best{num[0] / den[0], 0};
    for (std::size_t k = 1; k < count; ++k) {
        const double r = num[k] / den[k];
        if (r > best.value) best = {r, k};
    }
    return best;
}

}  // namespace

const RowKernels& scalar_kernels() noexcept {
    static const RowKernels table{"scalar", row_means, scale, reciprocal_scale, clamp, ratio_argmax};
    return table;
}

}  // namespace apchar::kernels
