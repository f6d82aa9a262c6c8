#include "shiftlab/operators.hpp"

#include <Eigen/SVD>

namespace shiftlab
{

TruncatedShift::TruncatedShift(ComplexVector weights) : weights_(std::move(weights))
{
    for (const auto &w : weights_)
        if (!is_finite(w))
            throw InvalidSequence("truncated shift weight is not finite");
}

Matrix TruncatedShift::matrix() const
{
    Index k = dim();
    Matrix m = Matrix::Zero(k, k);
    for (Index i = 0; i + 1 < k; ++i)
        m(i + 1, i) = weights_[static_cast<std::size_t>(i)];
    return m;
}

MatrixTruncation general_matrix(Matrix m)
{
    if (m.rows() != m.cols())
        throw DimMismatch("matrix must be square");
    return MatrixTruncation{std::move(m), Provenance{}};
}

MatrixTruncation shift_matrix(const TruncatedShift &j)
{
    Provenance p;
    p.kind = Provenance::Kind::TruncatedBlock;
    p.window = j.dim();
    return MatrixTruncation{j.matrix(), p};
}

MatrixTruncation truncate_bilateral(const WeightSequence &seq, Index first, Index n)
{
    if (seq.shape() != Shape::Bilateral)
        throw InvalidSequence("truncate_bilateral needs a bilateral sequence");
    if (n < 1)
        throw IndexOutOfSupport("truncation dimension must be at least 1");
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i)
        m(i + 1, i) = seq.weight(first + i);
    Provenance p;
    p.kind = Provenance::Kind::Bilateral;
    p.window = n;
    p.offset = first;
    return MatrixTruncation{std::move(m), p};
}

MatrixTruncation truncate_to_matrix(const WeightSequence &seq, Index n)
{
    if (n < 1)
        throw IndexOutOfSupport("truncation dimension must be at least 1");
    if (seq.shape() == Shape::Bilateral)
        return truncate_bilateral(seq, seq.window_first(), n);
    if (seq.shape() == Shape::Finite && n > seq.dim())
        throw IndexOutOfSupport("finite(" + std::to_string(seq.dim()) + ") has no basis vector e_" + std::to_string(n));

    Matrix m = Matrix::Zero(n, n);
    for (Index i = 1; i < n; ++i)
        m(i, i - 1) = seq.weight(i);
    Provenance p;
    p.kind = seq.shape() == Shape::Finite ? Provenance::Kind::TruncatedBlock : Provenance::Kind::Unilateral;
    p.window = n;
    return MatrixTruncation{std::move(m), p};
}

MatrixTruncation adjoint_action(const MatrixTruncation &m)
{
    MatrixTruncation out{m.entries.adjoint(), m.provenance};
    out.provenance.adjoint = !m.provenance.adjoint;
    return out;
}

bool is_subdiagonal(const Matrix &m) noexcept
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (i != j + 1 && m(i, j) != Complex(0.0, 0.0))
                return false;
    return true;
}

Matrix matrix_power(const Matrix &m, Index k)
{
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (Index i = 0; i < k; ++i)
        out = out * m;
    return out;
}

Matrix block_diagonal(const std::vector<Matrix> &blocks)
{
    Index total = 0;
    for (const auto &b : blocks)
        total += b.rows();
    Matrix out = Matrix::Zero(total, total);
    Index at = 0;
    for (const auto &b : blocks)
    {
        out.block(at, at, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

PowerInterleave power_interleave(const WeightSequence &seq, Index k, Index n)
{
    if (seq.shape() != Shape::Unilateral)
        throw InvalidSequence("power_interleave needs a unilateral sequence");
    if (k < 2 || n < 2)
        throw PreconditionViolation("power_interleave needs k >= 2 and n >= 2");

    const Index total = n * k;
    PowerInterleave out;
    for (Index l = 1; l <= k; ++l)
    {
        ComplexVector stride;
        ComplexVector products;
        for (Index t = 0; t < n; ++t)
        {
            stride.push_back(seq.weight(l + t * k));
            if (t + 1 < n)
            {
                Complex p(1.0, 0.0);
                for (Index i = 0; i < k; ++i)
                    p *= seq.weight(l + t * k + i);
                products.push_back(p);
            }
        }
        out.stride_parts.push_back(WeightSequence::unilateral(std::move(stride)));
        out.parts.push_back(WeightSequence::unilateral(std::move(products)));
    }

    out.permutation.resize(static_cast<std::size_t>(total));
    for (Index j = 1; j <= total; ++j)
    {
        Index l = (j - 1) % k;
        Index t = (j - 1) / k;
        out.permutation[static_cast<std::size_t>(j - 1)] = l * n + t;
    }

    Matrix power = matrix_power(truncate_to_matrix(seq, total).entries, k);
    std::vector<Matrix> blocks;
    for (const auto &part : out.parts)
        blocks.push_back(truncate_to_matrix(part, n).entries);
    Matrix sum = block_diagonal(blocks);

    // (P* A P)_{perm(i), perm(j)} = A_{ij}; the last k interleaved indices are the boundary band
    const Index interior = total - k;
    double acc = 0.0;
    for (Index j = 0; j < interior; ++j)
        for (Index i = 0; i < interior; ++i)
            acc += std::norm(power(i, j) - sum(out.permutation[static_cast<std::size_t>(i)],
                                              out.permutation[static_cast<std::size_t>(j)]));
    out.check_residual = std::sqrt(acc);
    return out;
}

PolarParts polar_decompose(const MatrixTruncation &m)
{
    const Matrix &t = m.entries;
    const Index n = t.rows();
    PolarParts out;

    if (is_subdiagonal(t))
    {
        // T e_i = w_i e_{i+1}: |T| = diag(|w_i|, 0), U e_i = (w_i / |w_i|) e_{i+1}
        out.closed_form = true;
        out.modulus = Matrix::Zero(n, n);
        out.isometry = Matrix::Zero(n, n);
        for (Index i = 0; i + 1 < n; ++i)
        {
            Complex w = t(i + 1, i);
            double r = std::abs(w);
            out.modulus(i, i) = r;
            if (w != Complex(0.0, 0.0))
            {
                out.isometry(i + 1, i) = w / r;
                ++out.initial_space_dim;
            }
        }
        out.final_space_dim = out.initial_space_dim;
    }
    else
    {
        Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svd.info() != Eigen::Success)
            throw NumericalFailure("singular value decomposition did not converge");
        const auto &s = svd.singularValues();
        const Matrix &left = svd.matrixU();
        const Matrix &right = svd.matrixV();
        double cutoff = (n > 0 ? s(0) : 0.0) * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
        out.modulus = right * s.cast<Complex>().asDiagonal() * right.adjoint();
        out.isometry = Matrix::Zero(n, n);
        for (Index i = 0; i < s.size(); ++i)
        {
            if (!std::isfinite(s(i)))
                throw NumericalFailure("singular values are not finite");
            if (s(i) > cutoff && s(i) > 0.0)
            {
                out.isometry += left.col(i) * right.col(i).adjoint();
                ++out.initial_space_dim;
            }
        }
        out.final_space_dim = out.initial_space_dim;
    }
    out.reconstruction_residual = (out.isometry * out.modulus - t).norm();
    return out;
}

MatrixTruncation direct_sum(const std::vector<MatrixTruncation> &parts)
{
    if (parts.empty())
        throw PreconditionViolation("direct_sum needs at least one part");
    if (parts.size() == 1)
        return parts.front();

    std::vector<Matrix> blocks;
    Provenance p;
    p.kind = Provenance::Kind::DirectSum;
    p.exact_parts = true;
    for (const auto &part : parts)
    {
        blocks.push_back(part.entries);
        p.part_dims.push_back(part.dim());
        p.exact_parts = p.exact_parts && part.provenance.is_exact_model();
    }
    p.window = 0;
    for (Index d : p.part_dims)
        p.window += d;
    return MatrixTruncation{block_diagonal(blocks), p};
}

} // namespace shiftlab
