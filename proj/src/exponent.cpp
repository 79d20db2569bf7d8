#include "apchar/exponent.hpp"

#include <cmath>
#include <limits>

#include "apchar/error.hpp"
#include "apchar/format.hpp"

namespace apchar {

Exponent Exponent::finite(double value) {
    if (!std::isfinite(value) || value == 0.0) {
        throw Error(ErrorKind::InvalidExponent,
                    "finite exponent must be nonzero and finite, got " + format_double(value));
    }
    return Exponent(Kind::Finite, value);
}

Exponent Exponent::from_double(double value) {
    if (std::isnan(value)) throw Error(ErrorKind::InvalidExponent, "exponent is NaN");
    if (value == 0.0) return zero();
    if (value == std::numeric_limits<double>::infinity()) return plus_infinity();
    if (value == -std::numeric_limits<double>::infinity()) return minus_infinity();
    return finite(value);
}

double Exponent::as_double() const noexcept {
    switch (kind_) {
        case Kind::MinusInfinity: return -std::numeric_limits<double>::infinity();
        case Kind::Zero: return 0.0;
        case Kind::PlusInfinity: return std::numeric_limits<double>::infinity();
        case Kind::Finite: break;
    }
    return value_;
}

Exponent Exponent::negated() const noexcept {
    switch (kind_) {
        case Kind::MinusInfinity: return plus_infinity();
        case Kind::PlusInfinity: return minus_infinity();
        case Kind::Zero: return zero();
        case Kind::Finite: break;
    }
    return Exponent(Kind::Finite, -value_);
}

std::string Exponent::to_string() const {
    switch (kind_) {
        case Kind::MinusInfinity: return "-inf";
        case Kind::PlusInfinity: return "inf";
        case Kind::Zero: return "0";
        case Kind::Finite: break;
    }
    return format_double(value_);
}

ExponentPair::ExponentPair(Exponent p1, Exponent p2) : p1_(p1), p2_(p2) {
    if (!(p1_ > p2_)) {
        throw Error(ErrorKind::InvalidExponent,
                    "exponent pair requires p1 > p2, got (" + p1_.to_string() + ", " + p2_.to_string() + ")");
    }
}

ExponentPair ExponentPair::a2() { return {Exponent::finite(1.0), Exponent::finite(-1.0)}; }

ExponentPair ExponentPair::classical(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidExponent, "classical A_p needs 1 < p < inf");
    }
    return {Exponent::finite(1.0), Exponent::finite(-1.0 / (p - 1.0))};
}

bool ExponentPair::is_a2() const noexcept {
    return p1_.is_finite() && p2_.is_finite() && p1_.value() == 1.0 && p2_.value() == -1.0;
}

ExponentPair ExponentPair::dual() const { return {p2_.negated(), p1_.negated()}; }

std::string ExponentPair::to_string() const { return "(" + p1_.to_string() + ", " + p2_.to_string() + ")"; }

}  // namespace apchar
