#include "apchar/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "apchar/error.hpp"
#include "apchar/format.hpp"

namespace apchar {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

GridWeight::GridWeight(Dims dims, std::vector<double> samples) : dims_(std::move(dims)), samples_(std::move(samples)) {
    if (dims_.empty()) throw Error(ErrorKind::InvalidWeight, "weight needs at least one axis");
    std::size_t total = 1;
    for (std::size_t n : dims_) {
        if (n == 0) throw Error(ErrorKind::InvalidWeight, "every axis needs at least one cell");
        total *= n;
    }
    if (samples_.size() != total) {
        throw Error(ErrorKind::InvalidWeight, "expected " + std::to_string(total) + " samples, got " +
                                                  std::to_string(samples_.size()));
    }
    min_ = samples_.front();
    max_ = samples_.front();
    fingerprint_ = mix(0, dims_.size());
    for (std::size_t n : dims_) fingerprint_ = mix(fingerprint_, n);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double s = samples_[i];
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw Error(ErrorKind::InvalidWeight,
                        "sample " + std::to_string(i) + " must be finite and positive, got " + format_double(s));
        }
        min_ = std::min(min_, s);
        max_ = std::max(max_, s);
        fingerprint_ = mix(fingerprint_, std::bit_cast<std::uint64_t>(s));
    }
}

GridWeight GridWeight::constant(Dims dims, double c) {
    std::size_t total = 1;
    for (std::size_t n : dims) total *= n;
    return GridWeight(std::move(dims), std::vector<double>(total, c));
}

GridWeight GridWeight::line(std::vector<double> samples) {
    Dims dims{samples.size()};
    return GridWeight(std::move(dims), std::move(samples));
}

std::vector<std::size_t> GridWeight::strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t k = dims_.size(); k-- > 1;) s[k - 1] = s[k] * dims_[k];
    return s;
}

GridCube GridCube::whole(const Dims& dims) { return {std::vector<std::size_t>(dims.size(), 0), dims}; }

std::size_t GridCube::cell_count() const noexcept {
    std::size_t n = 1;
    for (std::size_t k = 0; k < lo.size(); ++k) n *= hi[k] - lo[k];
    return n;
}

double GridCube::measure(const Dims& dims) const noexcept {
    double m = 1.0;
    for (std::size_t k = 0; k < lo.size(); ++k) m *= static_cast<double>(hi[k] - lo[k]) / static_cast<double>(dims[k]);
    return m;
}

std::string GridCube::to_string() const {
    std::string out = "[";
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (k) out += " x ";
        out += std::to_string(lo[k]) + "," + std::to_string(hi[k]) + ")";
    }
    return out + "]";
}

void validate_cube(const GridCube& cube, const Dims& dims) {
    if (cube.lo.size() != dims.size() || cube.hi.size() != dims.size()) {
        throw Error(ErrorKind::CubeOutOfRange, "cube rank does not match weight rank");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!(cube.lo[k] < cube.hi[k] && cube.hi[k] <= dims[k])) {
            throw Error(ErrorKind::CubeOutOfRange, "cube " + cube.to_string() + " is outside the grid");
        }
    }
}

}  // namespace apchar
