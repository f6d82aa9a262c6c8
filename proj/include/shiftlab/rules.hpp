#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "shiftlab/types.hpp"

namespace shiftlab
{

// Leading-order behaviour of |x_k| as k -> infinity:  |x_k| ~ c * k^degree * exp(log_ratio * k).
// `zero` means the sequence vanishes identically past some point.
struct GrowthForm
{
    bool zero = false;
    double degree = 0.0;
    double log_ratio = 0.0;

    // Whether sum_k |x_k|^2 is finite.
    bool square_summable() const noexcept;
    // Whether |x_k| stays bounded.
    bool bounded() const noexcept;
};

GrowthForm operator*(const GrowthForm &a, const GrowthForm &b) noexcept;

/**
 * Closed catalog of sequence rules k -> x_k (k >= 1).
 *
 * Every non-custom rule has the shape  coeff * k^degree * ratio^k,  which covers
 * the constants, k, k^d, r^k and 1/k together with their products. A custom
 * rule is a finite explicit list x_1..x_m and is undefined beyond m.
 */
class SequenceRule
{
public:
    static SequenceRule constant(Complex c);
    static SequenceRule linear();
    static SequenceRule power(double degree);
    static SequenceRule geometric(Complex ratio);
    static SequenceRule reciprocal();
    static SequenceRule custom(ComplexVector values);

    // "k", "k^2", "1/k", "0.5^k", "3", "2^k*1/k", "custom:1,2,3".
    static SequenceRule parse(std::string_view text);

    bool is_custom() const noexcept { return custom_.has_value(); }
    const ComplexVector &custom_values() const { return *custom_; }
    Complex coeff() const noexcept { return coeff_; }
    double degree() const noexcept { return degree_; }
    Complex ratio() const noexcept { return ratio_; }

    // True when x_k is defined for every k >= 1.
    bool is_infinite() const noexcept { return !is_custom(); }
    bool defined_at(Index k) const noexcept;

    // Throws IndexOutOfSupport when k < 1 or k lies past a custom list.
    Complex operator()(Index k) const;

    // Only meaningful for infinite rules.
    GrowthForm form() const noexcept;
    // Every x_k is nonzero.
    bool nonvanishing() const noexcept;

    std::string to_string() const;

    friend SequenceRule operator*(const SequenceRule &a, const SequenceRule &b);
    friend bool operator==(const SequenceRule &, const SequenceRule &) = default;

private:
    Complex coeff_{1.0, 0.0};
    double degree_ = 0.0;
    Complex ratio_{1.0, 0.0};
    std::optional<ComplexVector> custom_;
};

} // namespace shiftlab
