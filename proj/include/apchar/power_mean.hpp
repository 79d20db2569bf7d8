#pragma once

#include <cmath>
#include <span>
#include <string_view>

#include "apchar/exponent.hpp"
#include "apchar/grid.hpp"

namespace apchar {

/// Fast: plain summation (direct path) / prefix-sum tables with one global
/// shift (cache). Accurate: compensated summation with a shift local to the
/// queried cube.
enum class Mode { Fast, Accurate };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// Shift-normalised power sums for a finite exponent p.
///
/// Each sample s contributes term(s) = s^p / S where S is the largest s^p in
/// the set being summed (up to rounding), so terms lie in (0, 1] and sums
/// never overflow. The mean is recovered as root(mean_term) * scale.
/// For p = +-1 the shift is a power of two and every scaling step is exact;
/// for other p the shift is exp(M) with M = p log(extreme sample).
class PowerScale {
public:
    /// `extreme` is the sample maximising s^p: the max sample when p > 0,
    /// the min sample when p < 0.
    PowerScale(double p, double extreme);

    double p() const noexcept { return p_; }

    double term(double sample, double log_sample) const noexcept {
        switch (kind_) {
            case Kind::PlusOne: return sample * term_scale_;
            case Kind::MinusOne: return (1.0 / sample) * term_scale_;
            case Kind::General: break;
        }
        return std::exp(p_ * log_sample - shift_);
    }

    /// Power mean from the mean of the terms.
    double mean_from_terms(double mean_term) const noexcept {
        switch (kind_) {
            case Kind::PlusOne: return mean_term * root_scale_;
            case Kind::MinusOne: return (1.0 / mean_term) * root_scale_;
            case Kind::General: break;
        }
        return std::pow(mean_term, inv_p_) * root_scale_;
    }

    bool is_plus_one() const noexcept { return kind_ == Kind::PlusOne; }
    bool is_minus_one() const noexcept { return kind_ == Kind::MinusOne; }
    double root_scale() const noexcept { return root_scale_; }

private:
    enum class Kind { PlusOne, MinusOne, General };

    Kind kind_;
    double p_;
    double inv_p_;
    double shift_ = 0.0;       // natural-log shift, General only
    double term_scale_ = 1.0;  // 2^-k, p = +-1 only
    double root_scale_ = 1.0;
};

/// Clamps a computed mean into [lo, hi]; non-finite and NaN values land on
/// the nearer admissible end. Power means of a set lie between its min and
/// max, so this only removes rounding excursions (and fast-mode underflow).
inline double clamp_mean(double value, double lo, double hi) noexcept {
    if (!(value >= lo)) return lo;  // also catches NaN
    if (value > hi) return hi;
    return value;
}

/// Power mean <s^p>^{1/p} of an explicit sample set (p = 0: geometric mean,
/// p = +-inf: max / min). `log_samples` must hold std::log of each sample.
double power_mean_of(std::span<const double> samples, std::span<const double> log_samples, const Exponent& p,
                     Mode mode);

/// Exact power mean of the piecewise-constant weight over a cube.
/// Throws Error(CubeOutOfRange).
double power_mean(const GridWeight& w, const Exponent& p, const GridCube& cube, Mode mode = Mode::Accurate);

/// <w^p1>_J^{1/p1} <w^p2>_J^{-1/p2}, i.e. the ratio of the two power means.
/// At least 1 up to rounding.
double ap_ratio(const GridWeight& w, const ExponentPair& pair, const GridCube& cube, Mode mode = Mode::Accurate);

/// Running compensated sum (Neumaier).
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace apchar
