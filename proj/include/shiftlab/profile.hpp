#pragma once

#include <vector>

#include "shiftlab/sequence.hpp"

namespace shiftlab
{

// Asymptotic description of a one-sided sequence x_n (n -> +infinity) used for the
// symbolic verdicts. Only the declared pattern classes produce anything but Unknown.
struct ResidueForm
{
    GrowthForm form;
    bool upper_only = false; // the form is an upper envelope, not an exact order
};

struct Profile
{
    enum class Kind
    {
        Unknown,
        FiniteSupport,
        Lattice // n = period*t + c behaves like residues[c]
    };
    Kind kind = Kind::Unknown;
    Index period = 1;
    std::vector<ResidueForm> residues;

    static Profile unknown() { return {}; }
    static Profile finite_support() { return {Kind::FiniteSupport, 1, {}}; }
    const ResidueForm &at(Index n) const;
};

Profile profile_of(const WeightSequence &seq);
Profile profile_of(const VectorSpec &f);

Profile operator*(const Profile &a, const Profile &b);
// Profile of n -> x_{n + s}.
Profile shifted(const Profile &p, Index s);

// Symbolic decision for sum_n |x_n|^2.
SeriesVerdict square_sum_verdict(const Profile &p);
// Symbolic decision for sup_n |x_n| < infinity; nullopt when undecided.
std::optional<bool> bounded(const Profile &p);

} // namespace shiftlab
