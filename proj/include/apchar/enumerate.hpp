#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "apchar/grid.hpp"

namespace apchar {

/// Which grid boxes stand in for "all cubes J in I".
///   Exhaustive: every box prod [l_i, r_i); only for d <= 2.
///   Dyadic:     cubes obtained by halving every axis k times (power-of-two dims).
///   Anchored:   boxes with lo at the origin.
enum class Policy { Exhaustive, Dyadic, Anchored };

std::string_view to_string(Policy policy) noexcept;
Policy parse_policy(std::string_view text);

/// Exhaustive for d <= 2, dyadic otherwise.
Policy default_policy(const Dims& dims) noexcept;

/// Throws Error(InvalidPolicy) when the policy cannot be used on these dims.
void validate_policy(const Dims& dims, Policy policy);

std::uint64_t count_cubes(const Dims& dims, Policy policy);

/// Consecutive cubes (in enumeration order) that share lo and hi on every
/// axis but the last; the last-axis upper end runs over [last_begin, last_end].
struct CubeRow {
    std::vector<std::size_t> lo;
    std::vector<std::size_t> hi;  // hi.back() is unused
    std::size_t last_begin = 0;
    std::size_t last_end = 0;  // inclusive

    std::size_t size() const noexcept { return last_end - last_begin + 1; }
    GridCube cube(std::size_t k) const;
};

/// Enumeration order: increasing lo lexicographically, then increasing hi
/// lexicographically.
std::vector<CubeRow> enumerate_rows(const Dims& dims, Policy policy);

/// The same stream, flattened. Meant for small grids and tests.
std::vector<GridCube> enumerate_cubes(const Dims& dims, Policy policy);

}  // namespace apchar
