#pragma once

// Reference computations for the tests, written straight from the
// definitions in long double with no shifting, tables or compensation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"

namespace oracle {

inline std::vector<long double> cells(const apchar::GridWeight& w, const apchar::GridCube& cube) {
    std::vector<long double> out;
    apchar::for_each_cell(cube, w.strides(), [&](std::size_t i) { out.push_back(w[i]); });
    return out;
}

inline long double power_mean(const std::vector<long double>& xs, const apchar::Exponent& p) {
    using K = apchar::Exponent::Kind;
    switch (p.kind()) {
        case K::PlusInfinity: return *std::max_element(xs.begin(), xs.end());
        case K::MinusInfinity: return *std::min_element(xs.begin(), xs.end());
        case K::Zero: {
            long double s = 0;
            for (long double x : xs) s += std::log(x);
            return std::exp(s / xs.size());
        }
        case K::Finite: break;
    }
    const long double q = p.value();
    long double s = 0;
    for (long double x : xs) s += std::pow(x, q);
    return std::pow(s / xs.size(), 1 / q);
}

inline long double ratio(const apchar::GridWeight& w, const apchar::ExponentPair& pair, const apchar::GridCube& cube) {
    const auto xs = cells(w, cube);
    return power_mean(xs, pair.p1()) / power_mean(xs, pair.p2());
}

// Every box of a 1-d or 2-d grid by nested loops.
inline std::vector<apchar::GridCube> all_boxes(const apchar::Dims& dims) {
    std::vector<apchar::GridCube> out;
    if (dims.size() == 1) {
        for (std::size_t l = 0; l < dims[0]; ++l)
            for (std::size_t h = l + 1; h <= dims[0]; ++h) out.push_back({{l}, {h}});
        return out;
    }
    for (std::size_t l0 = 0; l0 < dims[0]; ++l0)
        for (std::size_t l1 = 0; l1 < dims[1]; ++l1)
            for (std::size_t h0 = l0 + 1; h0 <= dims[0]; ++h0)
                for (std::size_t h1 = l1 + 1; h1 <= dims[1]; ++h1) out.push_back({{l0, l1}, {h0, h1}});
    return out;
}

inline long double brute_norm(const apchar::GridWeight& w, const apchar::ExponentPair& pair) {
    long double best = -std::numeric_limits<long double>::infinity();
    for (const auto& cube : all_boxes(w.dims())) best = std::max(best, ratio(w, pair, cube));
    return best;
}

// phi(s,u) and its central differences, from the formula alone.
struct Phi {
    long double x1, y1, a1, a2, a, p1, p2;

    long double operator()(long double s, long double u) const {
        auto f = [&](long double top, long double bot) {
            return std::pow(a1 * x1 + a2 * top, 1 / p1) * std::pow(a1 * y1 + a2 * bot, -1 / p2);
        };
        return f(std::pow(s * u, p1), std::pow(u, p2)) - f(std::pow(a, p1), std::pow(a, p2));
    }
    long double d_ds(long double s, long double u) const {
        const long double h = 1e-6L * std::max(1.0L, std::fabs(s));
        return ((*this)(s + h, u) - (*this)(s - h, u)) / (2 * h);
    }
    long double d_du(long double s, long double u) const {
        const long double h = 1e-6L * std::max(1.0L, std::fabs(u));
        return ((*this)(s, u + h) - (*this)(s, u - h)) / (2 * h);
    }
};

inline double rel(long double got, long double want) {
    return static_cast<double>(std::fabs(got - want) / std::max(1.0L, std::fabs(want)));
}

}  // namespace oracle
