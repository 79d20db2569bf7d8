#include "apchar/power_mean.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "apchar/error.hpp"

namespace apchar {

std::string_view to_string(Mode mode) noexcept { return mode == Mode::Fast ? "fast" : "accurate"; }

Mode parse_mode(std::string_view text) {
    if (text == "fast") return Mode::Fast;
    if (text == "accurate") return Mode::Accurate;
    throw Error(ErrorKind::InvalidPolicy, "unknown mode '" + std::string(text) + "'");
}

PowerScale::PowerScale(double p, double extreme) : p_(p), inv_p_(1.0 / p) {
    if (p == 1.0) {
        kind_ = Kind::PlusOne;
        const int k = std::ilogb(extreme);
        term_scale_ = std::ldexp(1.0, -k);
        root_scale_ = std::ldexp(1.0, k);
    } else if (p == -1.0) {
        kind_ = Kind::MinusOne;
        const int k = std::ilogb(1.0 / extreme);
        term_scale_ = std::ldexp(1.0, -k);
        root_scale_ = std::ldexp(1.0, -k);
    } else {
        kind_ = Kind::General;
        shift_ = p * std::log(extreme);
        // exp(shift / p) is the extreme sample itself
        root_scale_ = extreme;
    }
}

double power_mean_of(std::span<const double> samples, std::span<const double> log_samples, const Exponent& p,
                     Mode mode) {
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double count = static_cast<double>(samples.size());

    switch (p.kind()) {
        case Exponent::Kind::PlusInfinity: return hi;
        case Exponent::Kind::MinusInfinity: return lo;
        case Exponent::Kind::Zero: {
            double total = 0.0;
            if (mode == Mode::Accurate) {
                CompensatedSum acc;
                for (double l : log_samples) acc.add(l);
                total = acc.value();
            } else {
                for (double l : log_samples) total += l;
            }
            return clamp_mean(std::exp(total / count), lo, hi);
        }
        case Exponent::Kind::Finite: break;
    }

    const PowerScale scale(p.value(), p.value() > 0.0 ? hi : lo);
    double total = 0.0;
    if (mode == Mode::Accurate) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < samples.size(); ++i) acc.add(scale.term(samples[i], log_samples[i]));
        total = acc.value();
    } else {
        for (std::size_t i = 0; i < samples.size(); ++i) total += scale.term(samples[i], log_samples[i]);
    }
    return clamp_mean(scale.mean_from_terms(total / count), lo, hi);
}

double power_mean(const GridWeight& w, const Exponent& p, const GridCube& cube, Mode mode) {
    validate_cube(cube, w.dims());
    std::vector<double> values;
    std::vector<double> logs;
    values.reserve(cube.cell_count());
    logs.reserve(cube.cell_count());
    for_each_cell(cube, w.strides(), [&](std::size_t i) {
        values.push_back(w[i]);
        logs.push_back(std::log(w[i]));
    });
    return power_mean_of(values, logs, p, mode);
}

double ap_ratio(const GridWeight& w, const ExponentPair& pair, const GridCube& cube, Mode mode) {
    return power_mean(w, pair.p1(), cube, mode) / power_mean(w, pair.p2(), cube, mode);
}

}  // namespace apchar
