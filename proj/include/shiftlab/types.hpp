#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab
{

using Complex = std::complex<double>;
using Index = std::int64_t;
using ComplexVector = std::vector<Complex>;

// Errors. Each operation documents which of these it may throw.

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class IndexOutOfSupport : public Error
{
public:
    using Error::Error;
};

class InvalidSequence : public Error
{
public:
    using Error::Error;
};

class UnsupportedTermRule : public Error
{
public:
    using Error::Error;
};

class UnsupportedVectorSpec : public Error
{
public:
    using Error::Error;
};

class NumericalFailure : public Error
{
public:
    using Error::Error;
};

class DimMismatch : public Error
{
public:
    using Error::Error;
};

class NoSolution : public Error
{
public:
    using Error::Error;
};

class NotCSelfadjoint : public Error
{
public:
    using Error::Error;
};

class InvalidSpecCombination : public Error
{
public:
    using Error::Error;
};

class PreconditionViolation : public Error
{
public:
    using Error::Error;
};

class Overflow : public Error
{
public:
    using Error::Error;
};

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Relative comparison of two nonnegative moduli.
inline bool moduli_equal(double a, double b, double rel_tol = 1e-12) noexcept
{
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0)
        return true;
    return std::abs(a - b) <= rel_tol * scale;
}

} // namespace shiftlab
