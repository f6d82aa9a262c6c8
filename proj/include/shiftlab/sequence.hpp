#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftlab/rules.hpp"
#include "shiftlab/types.hpp"

namespace shiftlab
{

enum class Shape
{
    Finite,
    Unilateral,
    Bilateral
};

struct NoPattern
{
    friend bool operator==(const NoPattern &, const NoPattern &) = default;
};

// block repeated verbatim: lambda_n = block[(n - first) mod |block|]
struct Periodic
{
    ComplexVector block;
    friend bool operator==(const Periodic &, const Periodic &) = default;
};

// Unit k is  amplitude(k) * block  followed by `zeros` zero weights.
// Without an amplitude this is the periodic pattern (block, 0, ..., 0).
struct BlockWithZeros
{
    ComplexVector block;
    Index zeros = 1;
    std::optional<SequenceRule> amplitude;

    Index unit_length() const noexcept { return static_cast<Index>(block.size()) + zeros; }
    friend bool operator==(const BlockWithZeros &, const BlockWithZeros &) = default;
};

struct GrowthClass
{
    enum class Kind
    {
        Bounded,    // |lambda_n| <= bound
        Polynomial, // |lambda_n| of exact order n^degree, nonvanishing past the window
        Geometric   // |lambda_n| of exact order ratio^n, nonvanishing past the window
    };
    Kind kind = Kind::Bounded;
    double parameter = 1.0; // bound, degree or ratio
    double scale = 1.0;     // envelope constant for polynomial/geometric

    // Upper envelope at absolute position m.
    double envelope(Index m) const noexcept;
    GrowthForm form() const noexcept;
    friend bool operator==(const GrowthClass &, const GrowthClass &) = default;
};

// Weight n past the window is rule(n + index_shift) (bilateral: rule(|n| + index_shift)).
struct TaggedGrowth
{
    GrowthClass growth;
    std::optional<SequenceRule> rule;
    Index index_shift = 0;
    friend bool operator==(const TaggedGrowth &, const TaggedGrowth &) = default;
};

using Pattern = std::variant<NoPattern, Periodic, BlockWithZeros, TaggedGrowth>;

constexpr Index kDefaultWindow = 256;
constexpr Index kMaxHorizon = 1'000'000;

/**
 * A family of complex weights: explicit on a window, optionally extended past it by a
 * declared pattern. Immutable after construction; every constructor validates the
 * window against the pattern and throws InvalidSequence on inconsistency.
 *
 * Index sets: finite(k) uses 1..k-1, unilateral 1, 2, ..., bilateral all of Z with
 * window[0] sitting at index `offset`.
 */
class WeightSequence
{
public:
    static WeightSequence finite(ComplexVector weights);
    static WeightSequence unilateral(ComplexVector window, Pattern pattern = NoPattern{});
    static WeightSequence bilateral(ComplexVector window, Index offset, Pattern pattern = NoPattern{});
    // Fills the window from the pattern.
    static WeightSequence from_pattern(Shape shape, Pattern pattern, Index window_length = kDefaultWindow,
                                       Index offset = 0);

    Shape shape() const noexcept { return shape_; }
    const ComplexVector &window() const noexcept { return window_; }
    const Pattern &pattern() const noexcept { return pattern_; }
    bool has_pattern() const noexcept { return !std::holds_alternative<NoPattern>(pattern_); }

    // Dimension k of a finite(k) sequence.
    Index dim() const noexcept { return static_cast<Index>(window_.size()) + 1; }
    Index window_first() const noexcept { return first_; }
    Index window_last() const noexcept { return first_ + static_cast<Index>(window_.size()) - 1; }
    bool in_window(Index n) const noexcept { return n >= window_first() && n <= window_last(); }
    bool in_index_set(Index n) const noexcept;

    // n is in the index set and its weight can be produced.
    bool evaluable(Index n) const noexcept;
    Complex weight(Index n) const;

    friend bool operator==(const WeightSequence &, const WeightSequence &) = default;

private:
    WeightSequence(Shape shape, ComplexVector window, Index first, Pattern pattern, bool seed_only = false);
    void validate(bool seed_only) const;
    std::optional<Complex> pattern_weight(Index n) const;

    Shape shape_ = Shape::Unilateral;
    ComplexVector window_;
    Index first_ = 1;
    Pattern pattern_;
};

// Throws IndexOutOfSupport when n is outside the index set or cannot be extended to.
Complex eval_weight(const WeightSequence &seq, Index n);

enum class ZeroCertainty
{
    FiniteCertain,
    InfiniteCertain,
    Unknown
};

struct ZeroSetReport
{
    std::vector<Index> indices; // zeros inside [scanned_from, scanned_to]
    ZeroCertainty certainty = ZeroCertainty::Unknown;
    Index scanned_from = 1;
    Index scanned_to = 0;
    // Size of the whole zero set, known when it is finite-certain.
    std::optional<std::size_t> total;
};

// Unilateral/finite scan 1..horizon, bilateral scans |n| <= horizon; both clamp to what
// the sequence can produce.
ZeroSetReport zero_set(const WeightSequence &seq, Index horizon);

// f(n) of a vector in the weighted domain probes.
struct FiniteVector
{
    ComplexVector values; // f(1), f(2), ..., zero afterwards
};

// f(n) = rule(k) when n = period * k - offset (k >= 1), zero otherwise.
struct LatticeRule
{
    SequenceRule rule;
    Index period = 1;
    Index offset = 0;
};

using VectorSpec = std::variant<FiniteVector, LatticeRule>;

Complex eval_vector(const VectorSpec &f, Index n);
bool vector_defined_at(const VectorSpec &f, Index n);

struct TermRule
{
    enum class Kind
    {
        ModulusSquared, // |lambda_n|^2
        VectorWeighted, // |f(n) lambda_n|^2
        AlphaWeighted   // |alpha_n lambda_n|^2
    };
    Kind kind = Kind::ModulusSquared;
    std::optional<VectorSpec> multiplier;
};

enum class SeriesVerdict
{
    Converges,
    Diverges,
    Inconclusive
};

enum class EvidenceBasis
{
    Symbolic,
    Numeric
};

struct SeriesProbe
{
    std::vector<double> partial_sums;
    SeriesVerdict verdict = SeriesVerdict::Inconclusive;
    EvidenceBasis basis = EvidenceBasis::Numeric;
};

SeriesProbe series_probe(const WeightSequence &seq, const TermRule &rule, Index horizon);

std::string to_string(Shape s);
std::string to_string(ZeroCertainty c);
std::string to_string(SeriesVerdict v);
std::string to_string(EvidenceBasis b);

} // namespace shiftlab
