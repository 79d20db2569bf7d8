#include <algorithm>
#include <cmath>
#include <random>

#include "apchar/verification.hpp"

namespace apchar::verify {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

GridWeight random_lognormal(const Dims& dims, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t total = 1;
    for (std::size_t n : dims) total *= n;
    std::vector<double> samples(total);
    for (double& s : samples) s = std::exp(sigma * normal(rng));
    return GridWeight(dims, std::move(samples));
}

namespace {

std::vector<Exponent> design_exponents() {
    return {Exponent::minus_infinity(), Exponent::finite(-3.0), Exponent::finite(-1.0),
            Exponent::finite(-0.5),     Exponent::zero(),       Exponent::finite(0.5),
            Exponent::finite(1.0),      Exponent::finite(2.0),  Exponent::plus_infinity()};
}

}  // namespace

std::vector<ExponentPair> design_pairs() {
    const auto grid = design_exponents();
    std::vector<ExponentPair> pairs;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(grid[i], grid[j]);
    }
    for (double p : {1.5, 3.0}) {
        const ExponentPair preset = ExponentPair::classical(p);
        if (std::find(pairs.begin(), pairs.end(), preset) == pairs.end()) pairs.push_back(preset);
    }
    return pairs;
}

std::vector<ExponentPair> finite_design_pairs() {
    std::vector<ExponentPair> out;
    for (const auto& pair : design_pairs()) {
        if (pair.p1().is_finite() && pair.p2().is_finite()) out.push_back(pair);
    }
    return out;
}

double random_cut_level(const GridWeight& w, std::uint64_t seed) {
    std::vector<double> sorted(w.samples().begin(), w.samples().end());
    std::sort(sorted.begin(), sorted.end());
    const auto at = [&](double q) {
        return sorted[static_cast<std::size_t>(std::floor(q * static_cast<double>(sorted.size() - 1)))];
    };
    const double lo = at(0.1);
    const double hi = at(0.9);
    if (!(hi > lo)) return lo;
    std::mt19937_64 rng(seed);
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace apchar::verify
