#pragma once

#include <utility>

#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"

namespace apchar {

/// w_a = min(w, a). Throws Error(NonPositiveParameter) unless a > 0.
GridWeight cutoff_above(const GridWeight& w, double a);

/// w^a = max(w, a). Throws Error(NonPositiveParameter) unless a > 0.
GridWeight cutoff_below(const GridWeight& w, double a);

/// Two-sided clamp to [1/n, n], equal to cutoff_below(cutoff_above(w, n), 1/n).
/// Throws Error(NonPositiveParameter) if n < 1.
GridWeight truncate_two_sided(const GridWeight& w, long n);

/// Pointwise 1/w.
GridWeight reciprocal(const GridWeight& w);

/// (1/w, (-p2, -p1)). Applying it twice gives back the input.
std::pair<GridWeight, ExponentPair> reciprocal_dual(const GridWeight& w, const ExponentPair& pair);

/// Bounded regularisation (s + w) / (s^2 + s w + 1), s > 0.
GridWeight bm_regularize(const GridWeight& w, double s);

/// Split of a cube at cut level a into J1 = {w <= a} and J2 = {w > a}.
///
/// x_i / y_i are the means of w^p1 / w^p2 over J_i; they are only set for a
/// nonempty piece, so check the empty flags before reading them.
struct PartitionStats {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    std::size_t count1 = 0;
    std::size_t count2 = 0;
    bool j1_empty = true;
    bool j2_empty = true;
};

/// Requires finite nonzero exponents (Error(InvalidExponent) otherwise).
PartitionStats partition_stats(const GridWeight& w, const ExponentPair& pair, const GridCube& cube, double a);

}  // namespace apchar
