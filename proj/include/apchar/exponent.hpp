#pragma once

#include <compare>
#include <string>

namespace apchar {

/// Extended real exponent: a finite nonzero value, zero, or one of the two
/// infinities. Zero selects the geometric mean, the infinities select the
/// essential sup / inf of the weight.
class Exponent {
public:
    enum class Kind { MinusInfinity, Finite, Zero, PlusInfinity };

    static Exponent finite(double value);
    static Exponent zero() { return Exponent(Kind::Zero, 0.0); }
    static Exponent plus_infinity() { return Exponent(Kind::PlusInfinity, 0.0); }
    static Exponent minus_infinity() { return Exponent(Kind::MinusInfinity, 0.0); }

    /// Maps 0 to Zero and ±inf to the infinities; rejects NaN.
    static Exponent from_double(double value);

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    /// Only meaningful for Finite.
    double value() const noexcept { return value_; }

    /// Value on the extended real line (0 and ±inf for the special kinds).
    double as_double() const noexcept;

    Exponent negated() const noexcept;

    std::string to_string() const;

    friend std::partial_ordering operator<=>(const Exponent& lhs, const Exponent& rhs) noexcept {
        return lhs.as_double() <=> rhs.as_double();
    }
    friend bool operator==(const Exponent& lhs, const Exponent& rhs) noexcept {
        return lhs.kind_ == rhs.kind_ && lhs.value_ == rhs.value_;
    }

private:
    Exponent(Kind kind, double value) : kind_(kind), value_(value) {}

    Kind kind_;
    double value_;
};

/// Ordered exponent pair with p1 > p2.
class ExponentPair {
public:
    ExponentPair(Exponent p1, Exponent p2);

    /// (1, -1)
    static ExponentPair a2();
    /// Classical A_p: (1, -1/(p-1)), p > 1.
    static ExponentPair classical(double p);

    const Exponent& p1() const noexcept { return p1_; }
    const Exponent& p2() const noexcept { return p2_; }

    bool is_a2() const noexcept;

    /// (-p2, -p1), the pair that goes with the reciprocal weight.
    ExponentPair dual() const;

    std::string to_string() const;

    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

private:
    Exponent p1_;
    Exponent p2_;
};

}  // namespace apchar
