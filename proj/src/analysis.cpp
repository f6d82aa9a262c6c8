#include "shiftlab/analysis.hpp"

#include <map>

namespace shiftlab
{

namespace
{

constexpr double kFormTol = 1e-12;

bool inverse_bounded(const GrowthForm &f)
{
    if (f.log_ratio > kFormTol)
        return true;
    if (f.log_ratio < -kFormTol)
        return false;
    return f.degree >= 0.0;
}

// Boundedness of |x_k|^2 / (1 + |x_k y_k|^2) for x = lambda on one residue, y = the next.
std::optional<bool> ratio_bounded(const ResidueForm &x, const ResidueForm &y)
{
    if (x.form.zero)
        return true;
    if (x.form.bounded())
        return true; // the ratio never exceeds |x|^2
    if (x.upper_only)
        return std::nullopt;
    if (y.form.zero)
        return false;
    if (y.upper_only)
        return std::nullopt;
    GrowthForm g = x.form * y.form;
    if (g.bounded())
        return false; // ratio of the order of |x|^2, which is unbounded
    return inverse_bounded(y.form);
}

} // namespace

double closedness_ratio(Complex lambda_k, Complex lambda_next)
{
    double a = std::norm(lambda_k);
    return a / (1.0 + std::norm(lambda_k * lambda_next));
}

ClosednessReport closedness_square_check(const WeightSequence &seq, Index horizon)
{
    ClosednessReport out;
    auto zs = zero_set(seq, horizon);
    for (Index k = zs.scanned_from; k <= zs.scanned_to; ++k)
    {
        Complex next(0.0, 0.0);
        if (seq.in_index_set(k + 1))
        {
            if (!seq.evaluable(k + 1))
                break;
            next = seq.weight(k + 1);
        }
        double r = closedness_ratio(seq.weight(k), next);
        out.indices.push_back(k);
        out.ratios.push_back(r);
        out.sup_on_window = std::max(out.sup_on_window, r);
    }

    Profile p = profile_of(seq);
    if (p.kind == Profile::Kind::FiniteSupport)
    {
        out.verdict = ClosednessVerdict::Closed;
        out.basis = EvidenceBasis::Symbolic;
        return out;
    }
    if (p.kind == Profile::Kind::Unknown)
        return out;

    bool undecided = false;
    for (Index c = 0; c < p.period; ++c)
    {
        auto b = ratio_bounded(p.at(c), p.at(c + 1));
        if (!b)
            undecided = true;
        else if (!*b)
        {
            out.verdict = ClosednessVerdict::NotClosed;
            out.basis = EvidenceBasis::Symbolic;
            return out;
        }
    }
    if (!undecided)
    {
        out.verdict = ClosednessVerdict::Closed;
        out.basis = EvidenceBasis::Symbolic;
    }
    return out;
}

DomainReport domain_membership(const WeightSequence &seq, const VectorSpec &f, Index power, Index horizon)
{
    if (power < 1)
        throw PreconditionViolation("domain_membership needs power >= 1");
    if (const auto *lr = std::get_if<LatticeRule>(&f); lr && lr->period < 1)
        throw UnsupportedVectorSpec("lattice vector needs period >= 1");

    DomainReport out;
    out.power = power;
    if (power == 1)
    {
        out.probe = series_probe(seq, TermRule{TermRule::Kind::VectorWeighted, f}, horizon);
        return out;
    }

    horizon = std::clamp<Index>(horizon, 1, kMaxHorizon);
    double acc = 0.0;
    for (Index n = 1; n <= horizon; ++n)
    {
        if (!vector_defined_at(f, n))
            break;
        Complex fn = eval_vector(f, n);
        bool ok = true;
        Complex w(1.0, 0.0);
        for (Index j = 0; j < power && ok; ++j)
        {
            if (!seq.in_index_set(n + j))
                w = 0.0;
            else if (!seq.evaluable(n + j))
                ok = false;
            else
                w *= seq.weight(n + j);
        }
        if (!ok)
            break;
        acc += std::norm(fn * w);
        out.probe.partial_sums.push_back(acc);
    }

    Profile prof = profile_of(f);
    if (prof.kind != Profile::Kind::FiniteSupport)
    {
        Profile lam = profile_of(seq);
        for (Index j = 0; j < power; ++j)
            prof = prof * shifted(lam, j);
    }
    out.probe.verdict = square_sum_verdict(prof);
    out.probe.basis = out.probe.verdict == SeriesVerdict::Inconclusive ? EvidenceBasis::Numeric : EvidenceBasis::Symbolic;
    return out;
}

std::string DostawaValidity::explain() const
{
    std::string s;
    if (!b_square_summable)
        s += "sum |b_k|^2 diverges; ";
    if (!b_nonvanishing)
        s += "b_k vanishes for some k; ";
    if (!ab_not_square_summable)
        s += "sum |a_k b_k|^2 converges; ";
    if (s.empty())
        return "valid";
    s.resize(s.size() - 2);
    return s;
}

DostawaValidity dostawa_validity(const SequenceRule &a, const SequenceRule &b)
{
    DostawaValidity v;
    v.b_square_summable = b.is_custom() || b.form().square_summable();
    v.b_nonvanishing = b.is_infinite() && b.nonvanishing();
    if (a.is_custom() || b.is_custom())
        v.ab_not_square_summable = false;
    else
        v.ab_not_square_summable = !(a.form() * b.form()).square_summable();
    return v;
}

DostawaInstance make_dostawa(const SequenceRule &a, const SequenceRule &b, Index window_length)
{
    auto validity = dostawa_validity(a, b);
    if (!validity.valid())
        throw InvalidSpecCombination("a = " + a.to_string() + ", b = " + b.to_string() + ": " + validity.explain());
    BlockWithZeros pattern{{Complex(1.0, 0.0), Complex(1.0, 0.0)}, 1, a};
    auto seq = WeightSequence::from_pattern(Shape::Unilateral, pattern, window_length);
    return DostawaInstance{a, b, std::move(seq), LatticeRule{b, 3, 1}, validity};
}

std::optional<bool> unbounded_on_gamma(const WeightSequence &seq)
{
    Profile p = profile_of(seq);
    if (p.kind == Profile::Kind::FiniteSupport)
        return false;
    if (p.kind == Profile::Kind::Unknown)
        return std::nullopt;
    bool undecided = false;
    for (Index c = 0; c < p.period; ++c)
    {
        if (!p.at(c - 1).form.zero)
            continue;
        const auto &here = p.at(c);
        if (here.form.zero || here.form.bounded())
            continue;
        if (here.upper_only)
            undecided = true;
        else
            return true;
    }
    if (undecided)
        return std::nullopt;
    return false;
}

PowerSymmetryReport power_symmetry_report(const WeightSequence &seq, const SymmetryCertificate &certificate,
                                          Index k_max, Index horizon)
{
    if (k_max < 1)
        throw PreconditionViolation("power_symmetry_report needs k_max >= 1");
    const Index d = certificate.conjugation.dim();
    std::vector<Index> basis = certificate.basis;
    if (basis.empty())
    {
        Index first = seq.shape() == Shape::Bilateral ? seq.window_first() : 1;
        for (Index i = 0; i < d; ++i)
            basis.push_back(first + i);
    }
    if (static_cast<Index>(basis.size()) != d)
        throw DimMismatch("certificate basis does not match its conjugation");

    Matrix t = Matrix::Zero(d, d);
    for (Index i = 0; i + 1 < d; ++i)
    {
        Index n = basis[static_cast<std::size_t>(i)];
        if (basis[static_cast<std::size_t>(i + 1)] == n + 1)
            t(i + 1, i) = seq.weight(n);
    }

    PowerSymmetryReport out;
    out.k_max = k_max;
    const Index inner = std::max<Index>(d - k_max, 0);
    Matrix power = Matrix::Identity(d, d);
    for (Index m = 1; m <= k_max; ++m)
    {
        power = (power * t).eval();
        Matrix diff = certificate.conjugation.sandwich_adjoint(power) - power;
        PowerEntry e;
        e.power = m;
        e.residual = diff.norm();
        e.interior_residual = diff.topLeftCorner(inner, inner).norm();
        if (m == 2)
            e.closedness = closedness_square_check(seq, horizon).verdict;
        out.entries.push_back(e);
    }
    out.adjoint_power_inequality_expected = unbounded_on_gamma(seq);
    return out;
}

std::string to_string(ClosednessVerdict v)
{
    switch (v)
    {
    case ClosednessVerdict::Closed:
        return "closed";
    case ClosednessVerdict::NotClosed:
        return "not-closed";
    case ClosednessVerdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

} // namespace shiftlab
