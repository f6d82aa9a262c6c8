#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shiftlab/sequence.hpp"

namespace shiftlab
{

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// J e_i = w_i e_{i+1} for i < dim, J e_dim = 0.
class TruncatedShift
{
public:
    TruncatedShift() = default;
    explicit TruncatedShift(ComplexVector weights);

    Index dim() const noexcept { return static_cast<Index>(weights_.size()) + 1; }
    Index order() const noexcept { return static_cast<Index>(weights_.size()); }
    const ComplexVector &weights() const noexcept { return weights_; }
    Matrix matrix() const;

    friend bool operator==(const TruncatedShift &, const TruncatedShift &) = default;

private:
    ComplexVector weights_;
};

struct Provenance
{
    enum class Kind
    {
        Unilateral,     // compression of a unilateral shift to e_1..e_N
        Bilateral,      // compression of a bilateral shift to e_offset..e_{offset+N-1}
        TruncatedBlock, // a finite truncated shift, exact
        DirectSum,
        General
    };
    Kind kind = Kind::General;
    Index window = 0;
    Index offset = 1;
    std::vector<Index> part_dims;
    bool exact_parts = false; // direct sum assembled from exact finite models only
    bool adjoint = false;

    // The matrix is the operator itself rather than a window of an infinite one.
    bool is_exact_model() const noexcept
    {
        return kind == Kind::TruncatedBlock || (kind == Kind::DirectSum && exact_parts);
    }
    bool is_shift() const noexcept
    {
        return kind == Kind::Unilateral || kind == Kind::Bilateral || kind == Kind::TruncatedBlock;
    }
    friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct MatrixTruncation
{
    Matrix entries;
    Provenance provenance;

    Index dim() const noexcept { return static_cast<Index>(entries.rows()); }
};

MatrixTruncation general_matrix(Matrix m);
MatrixTruncation shift_matrix(const TruncatedShift &j);

// Unilateral and finite: basis e_1..e_n. Bilateral: basis e_first..e_{first+n-1} with
// first = window start. Couplings leaving the truncation are dropped.
MatrixTruncation truncate_to_matrix(const WeightSequence &seq, Index n);
MatrixTruncation truncate_bilateral(const WeightSequence &seq, Index first, Index n);

MatrixTruncation adjoint_action(const MatrixTruncation &m);

struct PowerInterleave
{
    // parts[l] carries the k-fold products  lambda_{l+tk} ... lambda_{l+tk+k-1}, t = 0, 1, ...
    std::vector<WeightSequence> parts;
    // stride_parts[l] = (lambda_l, lambda_{l+k}, lambda_{l+2k}, ...)
    std::vector<WeightSequence> stride_parts;
    // permutation[j-1] = 0-based position in the direct-sum basis of interleaved basis vector e_j
    std::vector<Index> permutation;
    double check_residual = 0.0;
};

PowerInterleave power_interleave(const WeightSequence &seq, Index k, Index n);

struct PolarParts
{
    Matrix modulus;  // |T| = (T*T)^{1/2}
    Matrix isometry; // partial isometry U with T = U|T|
    Index initial_space_dim = 0;
    Index final_space_dim = 0;
    bool closed_form = false;
    double reconstruction_residual = 0.0;
};

PolarParts polar_decompose(const MatrixTruncation &m);

MatrixTruncation direct_sum(const std::vector<MatrixTruncation> &parts);

// Nonzero entries only on the first subdiagonal.
bool is_subdiagonal(const Matrix &m) noexcept;
Matrix matrix_power(const Matrix &m, Index k);
Matrix block_diagonal(const std::vector<Matrix> &blocks);

} // namespace shiftlab
