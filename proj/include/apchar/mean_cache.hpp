#pragma once

#include <array>
#include <optional>
#include <vector>

#include "apchar/enumerate.hpp"
#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"
#include "apchar/kernels.hpp"
#include "apchar/power_mean.hpp"

namespace apchar {

/// d-dimensional inclusive prefix sums over a per-cell value array.
///
/// Box sums are evaluated as Q(hi_last) - Q(lo_last), recursing over the
/// remaining axes in the same way, so a row query and a single-box query
/// perform identical floating-point operations.
class PrefixTable {
public:
    PrefixTable(const Dims& dims, std::span<const double> cell_values);

    double box_sum(const GridCube& cube) const noexcept;

    /// out[k] = Q(first + k) for k < count, where Q(x) is the sum over the
    /// leading axes of `cube` with the last-axis prefix ending at x.
    void row_prefix(const GridCube& cube, std::size_t first, std::size_t count, double* out) const noexcept;
    /// Q(x) for the same leading-axis box.
    double row_at(const GridCube& cube, std::size_t x) const noexcept;

private:
    double leading(const GridCube& cube, std::size_t axis_count, std::size_t offset) const noexcept;

    Dims dims_;
    std::vector<std::size_t> strides_;  // over (n_i + 1)
    std::vector<double> table_;
};

/// Range max / min over grid boxes in O(2^d) per query.
///
/// Level tuple (k_0..k_{d-1}) stores, at each cell, the extreme of the box
/// of side 2^{k_i} starting there. Memory is N * prod(floor(log2 n_i) + 1).
class SparseTable {
public:
    SparseTable(const Dims& dims, std::span<const double> cell_values);

    double max(const GridCube& cube) const noexcept;
    double min(const GridCube& cube) const noexcept;

private:
    template <bool IsMax>
    double query(const GridCube& cube) const noexcept;

    Dims dims_;
    std::vector<std::size_t> strides_;
    std::vector<std::size_t> levels_;        // per axis
    std::vector<std::size_t> level_stride_;  // flattening of the level tuple
    std::vector<std::vector<double>> max_;
    std::vector<std::vector<double>> min_;
};

/// Precomputed tables answering power-mean queries for both exponents of a
/// pair on one weight. Read-only after construction, so it can be shared
/// across threads.
///
/// Fast mode answers finite exponents from prefix sums of globally shifted
/// terms (O(2^d) per query); terms far below the global extreme may
/// underflow and prefix differences lose relative accuracy on small boxes.
/// Accurate mode evaluates every query over the box cells with a local shift
/// (O(|J|)), matching power_mean(..., Mode::Accurate) exactly.
class MeanCache {
public:
    MeanCache(const GridWeight& w, const ExponentPair& pair, Mode mode);

    const Dims& dims() const noexcept { return dims_; }
    const ExponentPair& pair() const noexcept { return pair_; }
    Mode mode() const noexcept { return mode_; }
    std::size_t fingerprint() const noexcept { return fingerprint_; }

    /// which = 0 for p1, 1 for p2. The cube is not validated.
    double power_mean(int which, const GridCube& cube) const;
    double ratio(const GridCube& cube) const;

    double box_max(const GridCube& cube) const noexcept { return extremes_.max(cube); }
    double box_min(const GridCube& cube) const noexcept { return extremes_.min(cube); }

    /// Scratch buffers for row evaluation; one per thread.
    struct RowScratch {
        std::vector<double> a, b, prefix, lo, hi;
    };

    /// Evaluates every box of the row; returns the first maximal ratio and
    /// its offset in the row. Bitwise equal to max of ratio(row.cube(k)).
    kernels::ArgMax evaluate_row(const CubeRow& row, RowScratch& scratch) const;

private:
    struct Channel {
        Exponent p;
        std::optional<PowerScale> scale;    // finite exponents, fast mode
        std::optional<PrefixTable> prefix;  // finite: shifted terms; zero: log samples
    };

    double fast_mean(const Channel& ch, const GridCube& cube) const;
    double accurate_mean(const Channel& ch, const GridCube& cube) const;
    void row_means(const Channel& ch, const CubeRow& row, RowScratch& scratch, double* out) const;

    Dims dims_;
    ExponentPair pair_;
    Mode mode_;
    std::size_t fingerprint_;
    std::vector<std::size_t> strides_;
    std::vector<double> samples_;
    std::vector<double> logs_;
    SparseTable extremes_;
    std::array<Channel, 2> channels_;
};

}  // namespace apchar
