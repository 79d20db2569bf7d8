#include "apchar/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "apchar/error.hpp"

namespace apchar {

std::string_view to_string(Policy policy) noexcept {
    switch (policy) {
        case Policy::Exhaustive: return "exhaustive";
        case Policy::Dyadic: return "dyadic";
        case Policy::Anchored: return "anchored";
    }
    return "?";
}

Policy parse_policy(std::string_view text) {
    if (text == "exhaustive") return Policy::Exhaustive;
    if (text == "dyadic") return Policy::Dyadic;
    if (text == "anchored") return Policy::Anchored;
    throw Error(ErrorKind::InvalidPolicy, "unknown policy '" + std::string(text) + "'");
}

Policy default_policy(const Dims& dims) noexcept { return dims.size() <= 2 ? Policy::Exhaustive : Policy::Dyadic; }

void validate_policy(const Dims& dims, Policy policy) {
    if (dims.empty()) throw Error(ErrorKind::InvalidPolicy, "no axes");
    if (policy == Policy::Exhaustive && dims.size() > 2) {
        throw Error(ErrorKind::InvalidPolicy, "exhaustive search is limited to d <= 2; use dyadic or anchored");
    }
    if (policy == Policy::Dyadic) {
        for (std::size_t n : dims) {
            if (!std::has_single_bit(n)) {
                throw Error(ErrorKind::InvalidPolicy,
                            "dyadic policy needs power-of-two cell counts, got " + std::to_string(n));
            }
        }
    }
}

namespace {

std::size_t dyadic_levels(const Dims& dims) {
    std::size_t smallest = *std::min_element(dims.begin(), dims.end());
    return static_cast<std::size_t>(std::bit_width(smallest));  // levels 0..log2(min n)
}

}  // namespace

std::uint64_t count_cubes(const Dims& dims, Policy policy) {
    validate_policy(dims, policy);
    std::uint64_t total = 1;
    switch (policy) {
        case Policy::Exhaustive:
            for (std::size_t n : dims) total *= static_cast<std::uint64_t>(n) * (n + 1) / 2;
            return total;
        case Policy::Anchored:
            for (std::size_t n : dims) total *= n;
            return total;
        case Policy::Dyadic: {
            total = 0;
            for (std::size_t k = 0; k < dyadic_levels(dims); ++k) total += std::uint64_t{1} << (k * dims.size());
            return total;
        }
    }
    return 0;
}

GridCube CubeRow::cube(std::size_t k) const {
    GridCube c{lo, hi};
    c.hi.back() = last_begin + k;
    return c;
}

namespace {

// Advances `idx` as an odometer over axes [0, axes), each axis k running over
// [first(k), last(k)]; returns false after the final combination.
template <typename First, typename Last>
bool odometer(std::vector<std::size_t>& idx, std::size_t axes, First first, Last last) {
    for (std::size_t k = axes; k-- > 0;) {
        if (idx[k] < last(k)) {
            ++idx[k];
            for (std::size_t j = k + 1; j < axes; ++j) idx[j] = first(j);
            return true;
        }
    }
    return false;
}

void push_rows_for_lo(const Dims& dims, const std::vector<std::size_t>& lo, std::vector<CubeRow>& rows) {
    const std::size_t d = dims.size();
    const std::size_t lead = d - 1;
    std::vector<std::size_t> hi(d, 0);
    for (std::size_t k = 0; k < lead; ++k) hi[k] = lo[k] + 1;
    do {
        rows.push_back({lo, hi, lo[lead] + 1, dims[lead]});
    } while (odometer(
        hi, lead, [&](std::size_t k) { return lo[k] + 1; }, [&](std::size_t k) { return dims[k]; }));
}

}  // namespace

std::vector<CubeRow> enumerate_rows(const Dims& dims, Policy policy) {
    validate_policy(dims, policy);
    const std::size_t d = dims.size();
    std::vector<CubeRow> rows;

    if (policy == Policy::Anchored) {
        push_rows_for_lo(dims, std::vector<std::size_t>(d, 0), rows);
        return rows;
    }
    if (policy == Policy::Exhaustive) {
        std::vector<std::size_t> lo(d, 0);
        do {
            push_rows_for_lo(dims, lo, rows);
        } while (odometer(
            lo, d, [](std::size_t) { return std::size_t{0}; }, [&](std::size_t k) { return dims[k] - 1; }));
        return rows;
    }

    std::vector<GridCube> cubes;
    for (std::size_t level = 0; level < dyadic_levels(dims); ++level) {
        const std::size_t parts = std::size_t{1} << level;
        std::vector<std::size_t> side(d);
        for (std::size_t k = 0; k < d; ++k) side[k] = dims[k] / parts;
        std::vector<std::size_t> pos(d, 0);
        do {
            GridCube c{std::vector<std::size_t>(d), std::vector<std::size_t>(d)};
            for (std::size_t k = 0; k < d; ++k) {
                c.lo[k] = pos[k] * side[k];
                c.hi[k] = c.lo[k] + side[k];
            }
            cubes.push_back(std::move(c));
        } while (odometer(
            pos, d, [](std::size_t) { return std::size_t{0}; }, [&](std::size_t) { return parts - 1; }));
    }
    std::sort(cubes.begin(), cubes.end(), [](const GridCube& a, const GridCube& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    rows.reserve(cubes.size());
    for (auto& c : cubes) {
        const std::size_t last = c.hi.back();
        rows.push_back({std::move(c.lo), std::move(c.hi), last, last});
    }
    return rows;
}

std::vector<GridCube> enumerate_cubes(const Dims& dims, Policy policy) {
    std::vector<GridCube> out;
    for (const CubeRow& row : enumerate_rows(dims, policy)) {
        for (std::size_t k = 0; k < row.size(); ++k) out.push_back(row.cube(k));
    }
    return out;
}

}  // namespace apchar
