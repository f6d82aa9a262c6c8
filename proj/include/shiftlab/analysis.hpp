#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/decompose.hpp"
#include "shiftlab/profile.hpp"

namespace shiftlab
{

enum class ClosednessVerdict
{
    Closed,
    NotClosed,
    Inconclusive
};

// W^2 is closed iff  |lambda_k|^2 <= c (1 + |lambda_k lambda_{k+1}|^2)  for some c.
struct ClosednessReport
{
    std::vector<Index> indices;
    std::vector<double> ratios; // |lambda_k|^2 / (1 + |lambda_k lambda_{k+1}|^2) at indices[i]
    double sup_on_window = 0.0;
    ClosednessVerdict verdict = ClosednessVerdict::Inconclusive;
    EvidenceBasis basis = EvidenceBasis::Numeric;
};

double closedness_ratio(Complex lambda_k, Complex lambda_next);

ClosednessReport closedness_square_check(const WeightSequence &seq, Index horizon);

struct DomainReport
{
    Index power = 1;
    SeriesProbe probe;
};

// Probes sum_n |f(n)|^2 |lambda_n ... lambda_{n+m-1}|^2, i.e. whether f lies in D(W^m).
DomainReport domain_membership(const WeightSequence &seq, const VectorSpec &f, Index power, Index horizon);

struct DostawaValidity
{
    bool b_square_summable = false; // sum |b_k|^2 < infinity
    bool b_nonvanishing = false;
    bool ab_not_square_summable = false; // sum |a_k b_k|^2 = infinity
    bool valid() const { return b_square_summable && b_nonvanishing && ab_not_square_summable; }
    std::string explain() const;
};

// lambda = (a_1, a_1, 0, a_2, a_2, 0, ...), witness f(3k-1) = b_k.
struct DostawaInstance
{
    SequenceRule a;
    SequenceRule b;
    WeightSequence weights;
    LatticeRule witness;
    DostawaValidity validity;
};

DostawaValidity dostawa_validity(const SequenceRule &a, const SequenceRule &b);
// Throws InvalidSpecCombination when dostawa_validity fails.
DostawaInstance make_dostawa(const SequenceRule &a, const SequenceRule &b, Index window_length = kDefaultWindow);

struct PowerEntry
{
    Index power = 1;
    double residual = 0.0;          // || C (T^m)* C - T^m || on the certified truncation
    double interior_residual = 0.0; // same, last k_max rows/columns excluded
    std::optional<ClosednessVerdict> closedness; // m = 2 only
};

struct PowerSymmetryReport
{
    std::vector<PowerEntry> entries;
    Index k_max = 1;
    // infinite Gamma = {n : lambda_{n-1} = 0} carrying unbounded weights; nullopt if undecided
    std::optional<bool> adjoint_power_inequality_expected;
};

PowerSymmetryReport power_symmetry_report(const WeightSequence &seq, const SymmetryCertificate &certificate,
                                          Index k_max, Index horizon = kDefaultWindow);

// The symbolic flag alone.
std::optional<bool> unbounded_on_gamma(const WeightSequence &seq);

std::string to_string(ClosednessVerdict v);

} // namespace shiftlab
