#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/symmetry.hpp"

namespace shiftlab
{

// A maximal zero-free run: basis e_first .. e_{first+dim-1}, weights lambda_first ..
// lambda_{first+dim-2}.
struct Block
{
    TruncatedShift shift;
    Index first_index = 1;

    Index dim() const noexcept { return shift.dim(); }
    Index last_index() const noexcept { return first_index + dim() - 1; }
};

struct BlockDecomposition
{
    Shape shape = Shape::Unilateral;
    ZeroSetReport zeros;
    // Complete blocks of dimension >= 2 in index order.
    std::vector<Block> blocks;
    // Basis indices of the 1-dimensional zero blocks.
    std::vector<Index> zero_singletons;
    // Zero weights as stored, by index (kept so reassembly is bit-exact).
    std::vector<std::pair<Index, Complex>> zero_weights;
    // Present iff the zero set is finite-certain: the zero-free part after the last zero,
    // starting at basis index tail_first.
    std::optional<WeightSequence> tail;
    Index tail_first = 0;
    // Trailing run cut by the horizon without a certified end (no tail decided). For a
    // bilateral sequence the leading run, cut on the left, is kept in leading_run.
    std::optional<Block> open_run;
    std::optional<Block> leading_run;

    // The weights lambda_{scanned_from} .. lambda_{scanned_to} rebuilt from the pieces.
    ComplexVector reassemble() const;
};

BlockDecomposition split_at_zeros(const WeightSequence &seq, Index horizon);

struct PairingGroup
{
    Index order = 0;
    std::size_t size = 0;
    std::vector<std::size_t> self_palindromic;                // positions in the input list
    std::vector<std::pair<std::size_t, std::size_t>> paired;  // (t, reverse(t))
    std::vector<std::size_t> unmatched;
};

struct PairingReport
{
    std::vector<PairingGroup> groups; // ascending order
    bool fully_matched() const;
    std::size_t unmatched_count() const;
};

// Bucket key of a modulus tuple at relative resolution 1e-12.
std::vector<std::int64_t> modulus_key(const TruncatedShift &j);

PairingReport pairing_match(const std::vector<TruncatedShift> &blocks);

enum class KernelStatus
{
    Ok,
    NoZeroWeights,
    FiniteZeroSet,
    Undecidable
};

KernelStatus kernel_obstruction_check(const BlockDecomposition &dec);

// Flip of the concatenation (a, 0, b) on C^{dim a + dim b}; requires the modulus tuple of b
// to be the reverse of that of a.
Conjugation cross_flip_conjugation(const TruncatedShift &a, const TruncatedShift &b);

enum class Outcome
{
    SymmetricWithCertificate,
    NotSymmetricWithWitness,
    UndecidableAtHorizon
};

struct Witness
{
    std::string kind;   // no-zero-weights, finite-zero-set, unmatched-block, offset-not-found, mirror-mismatch
    std::string detail;
    std::vector<std::vector<double>> tuples; // offending modulus tuples
    std::optional<Index> index;
};

struct Certificate
{
    std::string kind; // pairing, offset, mirror, finite-zeros
    PairingReport pairing;
    std::vector<Block> blocks; // blocks the pairing positions refer to
    SymmetryCertificate symmetry;
    std::optional<Index> offset;
    std::optional<Index> mirror_at;
};

struct ClassificationVerdict
{
    Outcome outcome = Outcome::UndecidableAtHorizon;
    std::string case_label;
    std::optional<Certificate> certificate;
    std::optional<Witness> witness;
    std::string reason; // why undecidable
    std::map<std::string, std::string> metadata;
};

ClassificationVerdict classify_unilateral(const WeightSequence &seq, Index horizon);
ClassificationVerdict classify_bilateral(const WeightSequence &seq, Index horizon);
// Dispatch on shape (finite sequences go through the unilateral pipeline).
ClassificationVerdict classify(const WeightSequence &seq, Index horizon);

// The unilateral sequence case (iv) hands to classify_unilateral, or nullopt when the
// bilateral sequence has no periodic zero structure.
std::optional<WeightSequence> bilateral_reindex(const WeightSequence &seq);

std::string to_string(KernelStatus s);
std::string to_string(Outcome o);

} // namespace shiftlab
