#include "shiftlab/sequence.hpp"

#include "shiftlab/profile.hpp"

namespace shiftlab
{

namespace
{

constexpr double kConsistencyTol = 1e-12;

bool weights_agree(Complex declared, Complex generated)
{
    // zero is structural: it must match exactly
    if (declared == Complex(0.0, 0.0) || generated == Complex(0.0, 0.0))
        return declared == generated;
    return std::abs(declared - generated) <= kConsistencyTol * std::max(std::abs(declared), std::abs(generated));
}

Index floor_mod(Index a, Index m)
{
    Index r = a % m;
    return r < 0 ? r + m : r;
}

bool has_zero(const ComplexVector &v)
{
    return std::any_of(v.begin(), v.end(), [](Complex z) { return z == Complex(0.0, 0.0); });
}

} // namespace

double GrowthClass::envelope(Index m) const noexcept
{
    switch (kind)
    {
    case Kind::Bounded:
        return parameter;
    case Kind::Polynomial:
        return scale * std::pow(static_cast<double>(std::max<Index>(m, 1)), parameter);
    case Kind::Geometric:
        return scale * std::pow(parameter, static_cast<double>(m));
    }
    return 0.0;
}

GrowthForm GrowthClass::form() const noexcept
{
    switch (kind)
    {
    case Kind::Bounded:
        return GrowthForm{false, 0.0, 0.0};
    case Kind::Polynomial:
        return GrowthForm{false, parameter, 0.0};
    case Kind::Geometric:
        return GrowthForm{false, 0.0, std::log(parameter)};
    }
    return {};
}

WeightSequence::WeightSequence(Shape shape, ComplexVector window, Index first, Pattern pattern, bool seed_only)
    : shape_(shape), window_(std::move(window)), first_(first), pattern_(std::move(pattern))
{
    validate(seed_only);
}

WeightSequence WeightSequence::finite(ComplexVector weights)
{
    return WeightSequence(Shape::Finite, std::move(weights), 1, NoPattern{});
}

WeightSequence WeightSequence::unilateral(ComplexVector window, Pattern pattern)
{
    return WeightSequence(Shape::Unilateral, std::move(window), 1, std::move(pattern));
}

WeightSequence WeightSequence::bilateral(ComplexVector window, Index offset, Pattern pattern)
{
    return WeightSequence(Shape::Bilateral, std::move(window), offset, std::move(pattern));
}

WeightSequence WeightSequence::from_pattern(Shape shape, Pattern pattern, Index window_length, Index offset)
{
    if (shape == Shape::Finite)
        throw InvalidSequence("finite sequences carry no pattern");
    if (window_length < 1)
        throw InvalidSequence("window length must be at least 1");
    // an empty seed lets pattern_weight run before the real window exists
    WeightSequence probe(shape, ComplexVector{}, shape == Shape::Bilateral ? offset : 1, pattern, true);
    ComplexVector window;
    window.reserve(static_cast<std::size_t>(window_length));
    for (Index i = 0; i < window_length; ++i)
    {
        auto w = probe.pattern_weight(probe.first_ + i);
        if (!w)
            throw InvalidSequence("pattern cannot generate weight " + std::to_string(probe.first_ + i));
        window.push_back(*w);
    }
    return WeightSequence(shape, std::move(window), probe.first_, std::move(pattern));
}

void WeightSequence::validate(bool seed_only) const
{
    for (std::size_t i = 0; i < window_.size(); ++i)
        if (!is_finite(window_[i]))
            throw InvalidSequence("window[" + std::to_string(i) + "] is not finite");

    if (shape_ == Shape::Finite && has_pattern())
        throw InvalidSequence("finite sequences carry no pattern");

    std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Periodic>)
            {
                if (p.block.empty())
                    throw InvalidSequence("periodic block is empty");
                for (const auto &v : p.block)
                    if (!is_finite(v))
                        throw InvalidSequence("periodic block holds a non-finite value");
            }
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                if (p.block.empty())
                    throw InvalidSequence("block-with-zeros block is empty");
                if (p.zeros < 0)
                    throw InvalidSequence("block-with-zeros needs zeros >= 0");
                if (p.amplitude)
                {
                    if (!p.amplitude->is_infinite())
                        throw InvalidSequence("block amplitude must be an infinite rule");
                    if (shape_ == Shape::Bilateral)
                        throw InvalidSequence("block amplitudes are only defined for unilateral sequences");
                }
            }
            else if constexpr (std::is_same_v<P, TaggedGrowth>)
            {
                const auto &g = p.growth;
                if (!std::isfinite(g.parameter) || !std::isfinite(g.scale) || g.scale <= 0.0)
                    throw InvalidSequence("growth class parameters must be finite with positive scale");
                if (g.kind == GrowthClass::Kind::Bounded && g.parameter < 0.0)
                    throw InvalidSequence("bounded growth class needs a nonnegative bound");
                if (g.kind == GrowthClass::Kind::Geometric && g.parameter <= 0.0)
                    throw InvalidSequence("geometric growth class needs a positive ratio");
                if (p.rule)
                {
                    if (!p.rule->is_infinite())
                        throw InvalidSequence("tagged-growth rule must be an infinite rule");
                    GrowthForm rf = p.rule->form();
                    GrowthForm cf = g.form();
                    bool ok = true;
                    if (g.kind == GrowthClass::Kind::Bounded)
                        ok = rf.bounded();
                    else
                        ok = !rf.zero && std::abs(rf.degree - cf.degree) <= 1e-12 &&
                             std::abs(rf.log_ratio - cf.log_ratio) <= 1e-12;
                    if (!ok)
                        throw InvalidSequence("rule " + p.rule->to_string() + " is inconsistent with its growth class");
                }
            }
        },
        pattern_);

    if (window_.empty())
    {
        if (!seed_only)
            throw InvalidSequence("window length must be at least 1");
        return;
    }

    for (Index i = 0; i < static_cast<Index>(window_.size()); ++i)
    {
        Index n = first_ + i;
        Complex w = window_[static_cast<std::size_t>(i)];
        if (const auto *tg = std::get_if<TaggedGrowth>(&pattern_))
        {
            Index m = (shape_ == Shape::Bilateral ? std::abs(n) : n) + tg->index_shift;
            if (std::abs(w) > tg->growth.envelope(m) * (1.0 + kConsistencyTol))
                throw InvalidSequence("window weight at n=" + std::to_string(n) + " exceeds its growth envelope");
        }
        else if (has_pattern())
        {
            auto generated = pattern_weight(n);
            if (generated && !weights_agree(w, *generated))
                throw InvalidSequence("window weight at n=" + std::to_string(n) + " disagrees with the pattern");
        }
    }
}

bool WeightSequence::in_index_set(Index n) const noexcept
{
    switch (shape_)
    {
    case Shape::Finite:
        return n >= 1 && n <= dim() - 1;
    case Shape::Unilateral:
        return n >= 1;
    case Shape::Bilateral:
        return true;
    }
    return false;
}

std::optional<Complex> WeightSequence::pattern_weight(Index n) const
{
    return std::visit(
        [&](const auto &p) -> std::optional<Complex> {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, NoPattern>)
                return std::nullopt;
            else if constexpr (std::is_same_v<P, Periodic>)
            {
                Index len = static_cast<Index>(p.block.size());
                return p.block[static_cast<std::size_t>(floor_mod(n - first_, len))];
            }
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                Index len = p.unit_length();
                Index pos = n - first_;
                Index j = floor_mod(pos, len);
                if (j >= static_cast<Index>(p.block.size()))
                    return Complex(0.0, 0.0);
                Complex base = p.block[static_cast<std::size_t>(j)];
                if (!p.amplitude)
                    return base;
                Index unit = pos / len + 1; // unilateral only, pos >= 0
                return (*p.amplitude)(unit)*base;
            }
            else
            {
                if (!p.rule)
                    return std::nullopt;
                Index m = (shape_ == Shape::Bilateral ? std::abs(n) : n) + p.index_shift;
                if (!p.rule->defined_at(m))
                    return std::nullopt;
                return (*p.rule)(m);
            }
        },
        pattern_);
}

bool WeightSequence::evaluable(Index n) const noexcept
{
    if (!in_index_set(n))
        return false;
    if (in_window(n))
        return true;
    if (shape_ == Shape::Finite)
        return false;
    try
    {
        return pattern_weight(n).has_value();
    }
    catch (const Error &)
    {
        return false;
    }
}

Complex WeightSequence::weight(Index n) const
{
    if (!in_index_set(n))
        throw IndexOutOfSupport("index " + std::to_string(n) + " is outside the index set");
    if (in_window(n))
        return window_[static_cast<std::size_t>(n - first_)];
    auto w = pattern_weight(n);
    if (!w)
        throw IndexOutOfSupport("index " + std::to_string(n) + " lies outside the window and the pattern cannot extend to it");
    return *w;
}

Complex eval_weight(const WeightSequence &seq, Index n) { return seq.weight(n); }

ZeroSetReport zero_set(const WeightSequence &seq, Index horizon)
{
    ZeroSetReport report;
    horizon = std::clamp<Index>(horizon, 0, kMaxHorizon);

    Index lo = seq.shape() == Shape::Bilateral ? -horizon : 1;
    Index hi = horizon;
    if (seq.shape() == Shape::Finite)
        hi = std::min(hi, seq.dim() - 1);
    // without an extension the reach is the window itself
    if (!seq.evaluable(hi))
        hi = std::min(hi, seq.window_last());
    if (seq.shape() == Shape::Bilateral && !seq.evaluable(lo))
        lo = std::max(lo, seq.window_first());
    report.scanned_from = lo;
    report.scanned_to = hi;
    for (Index n = lo; n <= hi; ++n)
        if (seq.evaluable(n) && seq.weight(n) == Complex(0.0, 0.0))
            report.indices.push_back(n);

    auto window_zero_count = [&] {
        return static_cast<std::size_t>(std::count(seq.window().begin(), seq.window().end(), Complex(0.0, 0.0)));
    };

    if (seq.shape() == Shape::Finite)
    {
        report.certainty = ZeroCertainty::FiniteCertain;
        report.total = window_zero_count();
        return report;
    }

    std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, NoPattern>)
                report.certainty = ZeroCertainty::Unknown;
            else if constexpr (std::is_same_v<P, Periodic>)
            {
                report.certainty = has_zero(p.block) ? ZeroCertainty::InfiniteCertain : ZeroCertainty::FiniteCertain;
                if (report.certainty == ZeroCertainty::FiniteCertain)
                    report.total = 0;
            }
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                bool amplitude_vanishes = p.amplitude && !p.amplitude->nonvanishing();
                if (p.zeros > 0 || has_zero(p.block) || amplitude_vanishes)
                    report.certainty = ZeroCertainty::InfiniteCertain;
                else
                {
                    report.certainty = ZeroCertainty::FiniteCertain;
                    report.total = 0;
                }
            }
            else
            {
                bool tail_nonvanishing = p.growth.kind != GrowthClass::Kind::Bounded ||
                                         (p.rule && p.rule->nonvanishing());
                bool tail_vanishes = p.rule && !p.rule->nonvanishing();
                if (tail_nonvanishing)
                {
                    report.certainty = ZeroCertainty::FiniteCertain;
                    report.total = window_zero_count();
                }
                else if (tail_vanishes)
                    report.certainty = ZeroCertainty::InfiniteCertain;
                else
                    report.certainty = ZeroCertainty::Unknown;
            }
        },
        seq.pattern());
    return report;
}

Complex eval_vector(const VectorSpec &f, Index n)
{
    return std::visit(
        [&](const auto &v) -> Complex {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, FiniteVector>)
            {
                if (n < 1 || n > static_cast<Index>(v.values.size()))
                    return Complex(0.0, 0.0);
                return v.values[static_cast<std::size_t>(n - 1)];
            }
            else
            {
                Index shifted = n + v.offset;
                if (shifted <= 0 || shifted % v.period != 0)
                    return Complex(0.0, 0.0);
                return v.rule(shifted / v.period);
            }
        },
        f);
}

bool vector_defined_at(const VectorSpec &f, Index n)
{
    if (const auto *lr = std::get_if<LatticeRule>(&f))
    {
        Index shifted = n + lr->offset;
        if (shifted <= 0 || shifted % lr->period != 0)
            return true;
        return lr->rule.defined_at(shifted / lr->period);
    }
    return true;
}

SeriesProbe series_probe(const WeightSequence &seq, const TermRule &rule, Index horizon)
{
    bool weighted = rule.kind != TermRule::Kind::ModulusSquared;
    if (weighted != rule.multiplier.has_value())
        throw UnsupportedTermRule(weighted ? "weighted term rule needs a multiplier"
                                           : "|lambda_n|^2 takes no multiplier");
    if (rule.multiplier)
        if (const auto *lr = std::get_if<LatticeRule>(&*rule.multiplier); lr && lr->period < 1)
            throw UnsupportedTermRule("lattice multiplier needs period >= 1");

    horizon = std::clamp<Index>(horizon, 0, kMaxHorizon);
    SeriesProbe probe;

    Index lo = seq.shape() == Shape::Bilateral ? seq.window_first() : 1;
    Index hi = seq.shape() == Shape::Bilateral ? seq.window_last() : horizon;
    double sum = 0.0;
    for (Index n = lo; n <= hi; ++n)
    {
        if (!seq.evaluable(n))
            break;
        if (rule.multiplier && !vector_defined_at(*rule.multiplier, n))
            break;
        Complex term = seq.weight(n);
        if (rule.multiplier)
            term *= eval_vector(*rule.multiplier, n);
        sum += std::norm(term);
        probe.partial_sums.push_back(sum);
    }

    if (rule.multiplier && std::holds_alternative<FiniteVector>(*rule.multiplier))
    {
        probe.verdict = SeriesVerdict::Converges;
        probe.basis = EvidenceBasis::Symbolic;
        return probe;
    }
    if (seq.shape() == Shape::Bilateral)
        return probe;

    Profile p = profile_of(seq);
    if (rule.multiplier)
        p = p * profile_of(*rule.multiplier);
    probe.verdict = square_sum_verdict(p);
    probe.basis = probe.verdict == SeriesVerdict::Inconclusive ? EvidenceBasis::Numeric : EvidenceBasis::Symbolic;
    return probe;
}

std::string to_string(Shape s)
{
    switch (s)
    {
    case Shape::Finite:
        return "finite";
    case Shape::Unilateral:
        return "unilateral";
    case Shape::Bilateral:
        return "bilateral";
    }
    return "?";
}

std::string to_string(ZeroCertainty c)
{
    switch (c)
    {
    case ZeroCertainty::FiniteCertain:
        return "finite-certain";
    case ZeroCertainty::InfiniteCertain:
        return "infinite-certain";
    case ZeroCertainty::Unknown:
        return "unknown";
    }
    return "?";
}

std::string to_string(SeriesVerdict v)
{
    switch (v)
    {
    case SeriesVerdict::Converges:
        return "converges";
    case SeriesVerdict::Diverges:
        return "diverges";
    case SeriesVerdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

std::string to_string(EvidenceBasis b)
{
    return b == EvidenceBasis::Symbolic ? "symbolic-from-growth-class" : "numeric-window-only";
}

} // namespace shiftlab
