#include "apchar/weight_ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "apchar/error.hpp"
#include "apchar/format.hpp"
#include "apchar/power_mean.hpp"

namespace apchar {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::NonPositiveParameter,
                    std::string(name) + " must be positive and finite, got " + format_double(value));
    }
}

template <typename Fn>
GridWeight map_samples(const GridWeight& w, Fn&& fn) {
    std::vector<double> out(w.size());
    std::transform(w.samples().begin(), w.samples().end(), out.begin(), fn);
    return GridWeight(w.dims(), std::move(out));
}

}  // namespace

GridWeight cutoff_above(const GridWeight& w, double a) {
    require_positive(a, "cut level");
    return map_samples(w, [a](double s) { return std::min(s, a); });
}

GridWeight cutoff_below(const GridWeight& w, double a) {
    require_positive(a, "cut level");
    return map_samples(w, [a](double s) { return std::max(s, a); });
}

GridWeight truncate_two_sided(const GridWeight& w, long n) {
    if (n < 1) throw Error(ErrorKind::NonPositiveParameter, "truncation level must be >= 1");
    const double top = static_cast<double>(n);
    return cutoff_below(cutoff_above(w, top), 1.0 / top);
}

GridWeight reciprocal(const GridWeight& w) {
    return map_samples(w, [](double s) { return 1.0 / s; });
}

std::pair<GridWeight, ExponentPair> reciprocal_dual(const GridWeight& w, const ExponentPair& pair) {
    return {reciprocal(w), pair.dual()};
}

GridWeight bm_regularize(const GridWeight& w, double s) {
    require_positive(s, "regularisation parameter");
    return map_samples(w, [s](double v) { return (s + v) / (s * s + s * v + 1.0); });
}

PartitionStats partition_stats(const GridWeight& w, const ExponentPair& pair, const GridCube& cube, double a) {
    validate_cube(cube, w.dims());
    require_positive(a, "cut level");
    if (!pair.p1().is_finite() || !pair.p2().is_finite()) {
        throw Error(ErrorKind::InvalidExponent, "partition statistics need finite nonzero exponents");
    }
    const double p1 = pair.p1().value();
    const double p2 = pair.p2().value();

    CompensatedSum x1, y1, x2, y2;
    PartitionStats st;
    for_each_cell(cube, w.strides(), [&](std::size_t i) {
        const double s = w[i];
        if (s <= a) {
            x1.add(std::pow(s, p1));
            y1.add(std::pow(s, p2));
            ++st.count1;
        } else {
            x2.add(std::pow(s, p1));
            y2.add(std::pow(s, p2));
            ++st.count2;
        }
    });
    const double total = static_cast<double>(st.count1 + st.count2);
    st.alpha1 = static_cast<double>(st.count1) / total;
    st.alpha2 = static_cast<double>(st.count2) / total;
    st.j1_empty = st.count1 == 0;
    st.j2_empty = st.count2 == 0;
    if (!st.j1_empty) {
        st.x1 = x1.value() / static_cast<double>(st.count1);
        st.y1 = y1.value() / static_cast<double>(st.count1);
    }
    if (!st.j2_empty) {
        st.x2 = x2.value() / static_cast<double>(st.count2);
        st.y2 = y2.value() / static_cast<double>(st.count2);
    }
    return st;
}

}  // namespace apchar
