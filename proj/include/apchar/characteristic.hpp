#pragma once

#include <cstdint>

#include "apchar/enumerate.hpp"
#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"
#include "apchar/mean_cache.hpp"
#include "apchar/power_mean.hpp"

namespace apchar {

struct CharacteristicResult {
    double value = 0.0;
    GridCube argmax;
    ExponentPair pair = ExponentPair::a2();
    Policy policy = Policy::Exhaustive;
    Mode mode = Mode::Fast;
    std::uint64_t cubes_examined = 0;
};

struct SearchOptions {
    Policy policy = Policy::Exhaustive;
    Mode mode = Mode::Fast;
    unsigned threads = 1;
};

/// Discrete [w]_{p1,p2}: the largest ap ratio over the enumerated cubes.
/// The argmax is the first cube reaching the maximum in enumeration order,
/// independent of the thread count.
CharacteristicResult ap_norm(const GridWeight& w, const ExponentPair& pair, const SearchOptions& options);

/// Search over a prebuilt cache (the cache fixes pair and mode).
CharacteristicResult ap_norm(const MeanCache& cache, Policy policy, unsigned threads = 1);

/// ap_norm with the pair (1, -1).
CharacteristicResult a2_norm(const GridWeight& w, const SearchOptions& options);

}  // namespace apchar
