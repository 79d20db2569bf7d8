#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace apchar {

using Dims = std::vector<std::size_t>;

/// Strictly positive piecewise-constant function on the unit cube [0,1)^d,
/// constant on each cell of an n_1 x ... x n_d grid. Samples are row-major
/// (last axis fastest). Immutable after construction.
class GridWeight {
public:
    GridWeight(Dims dims, std::vector<double> samples);

    /// Constant weight c on the given grid.
    static GridWeight constant(Dims dims, double c);
    /// One-dimensional weight with the given cell values.
    static GridWeight line(std::vector<double> samples);

    const Dims& dims() const noexcept { return dims_; }
    std::size_t rank() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }

    /// Row-major strides, strides[d-1] == 1.
    std::vector<std::size_t> strides() const;

    /// Hash of dims and sample bits, used to tie caches to a weight.
    std::size_t fingerprint() const noexcept { return fingerprint_; }

    friend bool operator==(const GridWeight& lhs, const GridWeight& rhs) noexcept {
        return lhs.dims_ == rhs.dims_ && lhs.samples_ == rhs.samples_;
    }

private:
    Dims dims_;
    std::vector<double> samples_;
    double min_ = 0.0;
    double max_ = 0.0;
    std::size_t fingerprint_ = 0;
};

/// Grid-aligned box [lo_0,hi_0) x ... x [lo_{d-1},hi_{d-1}) in cell indices.
struct GridCube {
    std::vector<std::size_t> lo;
    std::vector<std::size_t> hi;

    static GridCube whole(const Dims& dims);

    std::size_t rank() const noexcept { return lo.size(); }
    std::size_t cell_count() const noexcept;
    /// Lebesgue measure inside the unit cube.
    double measure(const Dims& dims) const noexcept;

    std::string to_string() const;

    friend bool operator==(const GridCube&, const GridCube&) = default;
    friend auto operator<=>(const GridCube&, const GridCube&) = default;
};

/// Throws Error(CubeOutOfRange) unless 0 <= lo_i < hi_i <= n_i on every axis.
void validate_cube(const GridCube& cube, const Dims& dims);

/// Calls fn(flat_index) for every cell of the cube, in row-major order.
template <typename Fn>
void for_each_cell(const GridCube& cube, const std::vector<std::size_t>& strides, Fn&& fn) {
    const std::size_t d = cube.rank();
    std::vector<std::size_t> idx(cube.lo);
    std::size_t base = 0;
    for (std::size_t k = 0; k < d; ++k) base += idx[k] * strides[k];
    const std::size_t last = d - 1;
    for (;;) {
        for (std::size_t x = cube.lo[last]; x < cube.hi[last]; ++x) fn(base + (x - cube.lo[last]));
        // odometer over the leading axes
        std::size_t k = last;
        for (;;) {
            if (k == 0) return;
            --k;
            ++idx[k];
            base += strides[k];
            if (idx[k] < cube.hi[k]) break;
            base -= (idx[k] - cube.lo[k]) * strides[k];
            idx[k] = cube.lo[k];
        }
    }
}

}  // namespace apchar
