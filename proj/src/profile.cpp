#include "shiftlab/profile.hpp"

#include <numeric>

namespace shiftlab
{

namespace
{

Index floor_mod(Index a, Index m)
{
    Index r = a % m;
    return r < 0 ? r + m : r;
}

ResidueForm zero_residue() { return ResidueForm{GrowthForm{true, 0.0, 0.0}, false}; }

// x_n = base_form(k) along n = start + period*(k-1); the per-k log ratio spreads over `period` steps of n.
GrowthForm spread(const GrowthForm &f, Index period)
{
    if (f.zero)
        return f;
    return GrowthForm{false, f.degree, f.log_ratio / static_cast<double>(period)};
}

} // namespace

const ResidueForm &Profile::at(Index n) const
{
    return residues[static_cast<std::size_t>(floor_mod(n, period))];
}

Profile profile_of(const WeightSequence &seq)
{
    if (seq.shape() == Shape::Finite)
        return Profile::finite_support();
    if (seq.shape() == Shape::Bilateral)
        return Profile::unknown();

    return std::visit(
        [&](const auto &p) -> Profile {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, NoPattern>)
                return Profile::unknown();
            else if constexpr (std::is_same_v<P, Periodic>)
            {
                Index len = static_cast<Index>(p.block.size());
                Profile out{Profile::Kind::Lattice, len, std::vector<ResidueForm>(static_cast<std::size_t>(len))};
                for (Index j = 0; j < len; ++j)
                {
                    // lambda_n = block[j] for n = 1 + j (mod len)
                    bool z = p.block[static_cast<std::size_t>(j)] == Complex(0.0, 0.0);
                    out.residues[static_cast<std::size_t>(floor_mod(1 + j, len))] =
                        z ? zero_residue() : ResidueForm{GrowthForm{false, 0.0, 0.0}, false};
                }
                return out;
            }
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                Index len = p.unit_length();
                GrowthForm amp = p.amplitude ? spread(p.amplitude->form(), len) : GrowthForm{false, 0.0, 0.0};
                Profile out{Profile::Kind::Lattice, len, std::vector<ResidueForm>(static_cast<std::size_t>(len), zero_residue())};
                for (Index j = 0; j < static_cast<Index>(p.block.size()); ++j)
                {
                    bool z = p.block[static_cast<std::size_t>(j)] == Complex(0.0, 0.0);
                    out.residues[static_cast<std::size_t>(floor_mod(1 + j, len))] =
                        z ? zero_residue() : ResidueForm{amp, false};
                }
                return out;
            }
            else
            {
                if (p.rule)
                    return Profile{Profile::Kind::Lattice, 1, {ResidueForm{p.rule->form(), false}}};
                bool upper = p.growth.kind == GrowthClass::Kind::Bounded;
                return Profile{Profile::Kind::Lattice, 1, {ResidueForm{p.growth.form(), upper}}};
            }
        },
        seq.pattern());
}

Profile profile_of(const VectorSpec &f)
{
    if (std::holds_alternative<FiniteVector>(f))
        return Profile::finite_support();
    const auto &lr = std::get<LatticeRule>(f);
    if (!lr.rule.is_infinite())
        return Profile::finite_support();
    Profile out{Profile::Kind::Lattice, lr.period,
                std::vector<ResidueForm>(static_cast<std::size_t>(lr.period), zero_residue())};
    out.residues[static_cast<std::size_t>(floor_mod(-lr.offset, lr.period))] =
        ResidueForm{spread(lr.rule.form(), lr.period), false};
    return out;
}

Profile operator*(const Profile &a, const Profile &b)
{
    if (a.kind == Profile::Kind::FiniteSupport || b.kind == Profile::Kind::FiniteSupport)
        return Profile::finite_support();
    if (a.kind == Profile::Kind::Unknown || b.kind == Profile::Kind::Unknown)
        return Profile::unknown();
    Index period = std::lcm(a.period, b.period);
    Profile out{Profile::Kind::Lattice, period, std::vector<ResidueForm>(static_cast<std::size_t>(period))};
    for (Index c = 0; c < period; ++c)
    {
        const auto &ra = a.at(c);
        const auto &rb = b.at(c);
        ResidueForm r;
        r.form = ra.form * rb.form;
        r.upper_only = !r.form.zero && (ra.upper_only || rb.upper_only);
        out.residues[static_cast<std::size_t>(c)] = r;
    }
    return out;
}

Profile shifted(const Profile &p, Index s)
{
    if (p.kind != Profile::Kind::Lattice)
        return p;
    Profile out = p;
    for (Index c = 0; c < p.period; ++c)
        out.residues[static_cast<std::size_t>(c)] = p.at(c + s);
    return out;
}

SeriesVerdict square_sum_verdict(const Profile &p)
{
    switch (p.kind)
    {
    case Profile::Kind::Unknown:
        return SeriesVerdict::Inconclusive;
    case Profile::Kind::FiniteSupport:
        return SeriesVerdict::Converges;
    case Profile::Kind::Lattice:
        break;
    }
    bool undecided = false;
    for (const auto &r : p.residues)
    {
        if (r.form.square_summable())
            continue;
        if (r.upper_only)
            undecided = true;
        else
            return SeriesVerdict::Diverges;
    }
    return undecided ? SeriesVerdict::Inconclusive : SeriesVerdict::Converges;
}

std::optional<bool> bounded(const Profile &p)
{
    switch (p.kind)
    {
    case Profile::Kind::Unknown:
        return std::nullopt;
    case Profile::Kind::FiniteSupport:
        return true;
    case Profile::Kind::Lattice:
        break;
    }
    bool undecided = false;
    for (const auto &r : p.residues)
    {
        if (r.form.bounded())
            continue;
        if (r.upper_only)
            undecided = true;
        else
            return false;
    }
    if (undecided)
        return std::nullopt;
    return true;
}

} // namespace shiftlab
