#include "shiftlab/symmetry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "shiftlab/parallel.hpp"

namespace shiftlab
{

namespace
{

void require_dim(Index a, Index b, const char *what)
{
    if (a != b)
        throw DimMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

// exp(i X) for real symmetric X
Matrix exp_i(const Eigen::MatrixXd &x)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
    Vector phases(x.rows());
    for (Index i = 0; i < x.rows(); ++i)
        phases(i) = std::polar(1.0, eig.eigenvalues()(i));
    Matrix v = eig.eigenvectors().cast<Complex>();
    return v * phases.asDiagonal() * v.transpose();
}

Matrix nearest_unitary(const Matrix &q)
{
    Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

bool window_provenance(const Provenance &p)
{
    return p.kind == Provenance::Kind::Unilateral || p.kind == Provenance::Kind::Bilateral ||
           (p.kind == Provenance::Kind::DirectSum && !p.exact_parts);
}

} // namespace

Conjugation Conjugation::from_matrix(Matrix u, double tol)
{
    if (u.rows() != u.cols())
        throw PreconditionViolation("conjugation factor must be square");
    const Index n = u.rows();
    double unit_defect = (u.adjoint() * u - Matrix::Identity(n, n)).norm();
    if (!(unit_defect <= tol))
        throw PreconditionViolation("conjugation factor is not unitary (defect " + std::to_string(unit_defect) + ")");
    double sym_defect = (u - u.transpose()).norm();
    if (!(sym_defect <= tol))
        throw PreconditionViolation("conjugation factor is not symmetric (defect " + std::to_string(sym_defect) + ")");
    return Conjugation(std::move(u));
}

Conjugation Conjugation::identity(Index n) { return Conjugation(Matrix::Identity(n, n)); }

Conjugation Conjugation::plain_flip(Index n)
{
    Matrix u = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
        u(n - 1 - j, j) = 1.0;
    return Conjugation(std::move(u));
}

Matrix Conjugation::sandwich(const Matrix &b) const
{
    // C B C f = U conj(B U conj f) = U conj(B) conj(U) f
    return u_ * b.conjugate() * u_.conjugate();
}

Matrix Conjugation::sandwich_adjoint(const Matrix &b) const { return u_ * b.transpose() * u_.conjugate(); }

Vector apply_conjugation(const Conjugation &c, const Vector &f)
{
    require_dim(c.dim(), f.size(), "apply_conjugation");
    return c.u_factor() * f.conjugate();
}

double conjugate_sandwich_adjoint_check(const Conjugation &c, const MatrixTruncation &b)
{
    require_dim(c.dim(), b.dim(), "conjugate_sandwich_adjoint_check");
    return (c.sandwich(b.entries).adjoint() - c.sandwich_adjoint(b.entries)).norm();
}

Conjugation build_flip_conjugation(const TruncatedShift &j)
{
    const Index k = j.dim();
    const auto &w = j.weights();
    auto weight = [&](Index i) { return w[static_cast<std::size_t>(i - 1)]; }; // 1-based

    for (Index i = 1; i < k; ++i)
        if (!moduli_equal(std::abs(weight(i)), std::abs(weight(k - i))))
            throw NoSolution("no flip conjugation: |w_" + std::to_string(i) + "| != |w_" + std::to_string(k - i) + "|");

    // C J* = J C on e_{i+1} gives  mu_{i+1} w_{k-i} = w_i mu_i.  Anchor the middle, walk
    // outwards through the left half and mirror.
    std::vector<Complex> mu(static_cast<std::size_t>(k + 1), Complex(1.0, 0.0));
    const Index mid = (k + 1) / 2;
    for (Index i = mid - 1; i >= 1; --i)
    {
        Complex up = weight(i);
        Complex down = weight(k - i);
        Complex ratio = up == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : down / up;
        Complex m = mu[static_cast<std::size_t>(i + 1)] * ratio;
        mu[static_cast<std::size_t>(i)] = m / std::abs(m);
    }
    for (Index i = 1; i <= k; ++i)
        if (k + 1 - i > i)
            mu[static_cast<std::size_t>(k + 1 - i)] = mu[static_cast<std::size_t>(i)];

    Matrix u = Matrix::Zero(k, k);
    for (Index i = 1; i <= k; ++i)
        u(k - i, i - 1) = mu[static_cast<std::size_t>(i)];
    Conjugation c = Conjugation::from_matrix(std::move(u));

    double r = c_selfadjoint_residual(j.matrix(), c);
    double scale = std::max(1.0, j.matrix().norm());
    if (!(r <= kDerivedTol * scale))
        throw NoSolution("flip conjugation residual " + std::to_string(r) + " exceeds tolerance");
    return c;
}

double c_selfadjoint_residual(const Matrix &t, const Conjugation &c)
{
    require_dim(c.dim(), t.rows(), "c_selfadjoint_residual");
    return (c.sandwich_adjoint(t) - t).norm();
}

SymmetryCertificate verify_c_selfadjoint(const MatrixTruncation &t, const Conjugation &c, double exact_tol)
{
    SymmetryCertificate cert;
    cert.conjugation = c;
    cert.residual = c_selfadjoint_residual(t.entries, c);
    if (cert.residual <= exact_tol)
        cert.verdict = window_provenance(t.provenance) ? SymmetryVerdict::CSymmetricEvidence
                                                       : SymmetryVerdict::CSelfadjointOnTruncation;
    else if (cert.residual <= kSearchSuccessTol)
        cert.verdict = SymmetryVerdict::CSymmetricEvidence;
    else
        cert.verdict = SymmetryVerdict::Fail;
    return cert;
}

PolarConjugationReport partial_conjugation_from_polar(const MatrixTruncation &t, const Conjugation &c)
{
    auto cert = verify_c_selfadjoint(t, c);
    if (cert.verdict == SymmetryVerdict::Fail)
        throw NotCSelfadjoint("T is not C-selfadjoint (residual " + std::to_string(cert.residual) + ")");

    PolarConjugationReport out;
    out.polar = polar_decompose(t);
    const Matrix &u = out.polar.isometry;
    const Matrix &mod = out.polar.modulus;

    // J f = U* C f = U* U_c conj(f)
    out.j.factor = u.adjoint() * c.u_factor();
    out.j.support_projection = u.adjoint() * u;
    out.square_defect = (out.j.factor * out.j.factor.conjugate() - out.j.support_projection).norm();
    // J |T| f = M conj(|T|) conj(f),  |T| J f = |T| M conj(f)
    out.commutation_residual = (out.j.factor * mod.conjugate() - mod * out.j.factor).norm();
    // C J f = U_c conj(M) f
    out.composition_residual = (c.u_factor() * out.j.factor.conjugate() - u).norm();
    return out;
}

Conjugation direct_sum_conjugation(const std::vector<Conjugation> &parts)
{
    if (parts.empty())
        throw PreconditionViolation("direct_sum_conjugation needs at least one part");
    if (parts.size() == 1)
        return parts.front();
    std::vector<Matrix> blocks;
    for (const auto &p : parts)
        blocks.push_back(p.u_factor());
    return Conjugation::from_matrix(block_diagonal(blocks), kDerivedTol);
}

double fit_objective(const Matrix &q, const Matrix &t)
{
    Matrix u = q * q.transpose();
    return (u * t.transpose() * u.conjugate() - t).squaredNorm();
}

Eigen::MatrixXd fit_gradient(const Matrix &q, const Matrix &t)
{
    // Q -> Q exp(i e B) moves U = Q Q^T along 2i Q B Q^T; differentiate ||R||^2 with
    // R = U T^T conj(U) - T and collect the coefficient of B.
    const Complex two_i(0.0, 2.0);
    Matrix u = q * q.transpose();
    Matrix r = u * t.transpose() * u.conjugate() - t;
    Matrix g = two_i * (q.transpose() * t.transpose() * u.conjugate() * r.adjoint() * q) -
               two_i * (q.adjoint() * r.adjoint() * u * t.transpose() * q.conjugate());
    Eigen::MatrixXd re = g.real();
    return re + re.transpose();
}

namespace
{

struct RestartOutcome
{
    Matrix u;
    double residual = 0.0;
};

RestartOutcome descend(const Matrix &t, Rng rng, const FitOptions &options)
{
    const Index n = t.rows();
    Matrix q = random_unitary(n, rng);
    double f = fit_objective(q, t);
    double step = 1.0 / (1.0 + t.squaredNorm());

    // Polak-Ribiere directions in the body frame of Q; a direction that stops descending
    // falls back to the gradient.
    Eigen::MatrixXd s_prev, d;
    for (Index it = 0; it < options.max_iterations && std::sqrt(f) > options.target; ++it)
    {
        Eigen::MatrixXd s = fit_gradient(q, t);
        double g2 = s.squaredNorm();
        if (g2 < 1e-30)
            break;
        if (d.size() == 0 || it % (n * (n + 1) / 2) == 0)
            d = -s;
        else
        {
            double beta = std::max(0.0, (s.array() * (s - s_prev).array()).sum() / s_prev.squaredNorm());
            d = (-s + beta * d).eval();
        }
        double slope = (s.array() * d.array()).sum();
        if (slope >= 0.0)
        {
            d = -s;
            slope = -g2;
        }
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries)
        {
            Matrix trial = q * exp_i(step * d);
            double ft = fit_objective(trial, t);
            if (ft <= f + 1e-4 * step * slope)
            {
                q = std::move(trial);
                f = ft;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            break;
        s_prev = std::move(s);
        if (it % 50 == 49)
        {
            q = nearest_unitary(q);
            f = fit_objective(q, t);
        }
    }
    Matrix u = q * q.transpose();
    u = (0.5 * (u + u.transpose())).eval();
    return RestartOutcome{u, c_selfadjoint_residual(t, Conjugation::from_matrix(u, kSearchSuccessTol))};
}

} // namespace

FitResult fit_conjugation(const MatrixTruncation &t, Index restarts, std::uint64_t seed, const FitOptions &options)
{
    if (t.dim() > 64)
        throw PreconditionViolation("fit_conjugation is limited to dim <= 64");
    if (restarts < 1)
        throw PreconditionViolation("fit_conjugation needs at least one restart");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    parallel_for(restarts, [&](Index r) {
        outcomes[static_cast<std::size_t>(r)] =
            descend(t.entries, Rng::stream(seed, static_cast<std::uint64_t>(r)), options);
    });

    FitResult out;
    for (Index r = 0; r < restarts; ++r)
    {
        const auto &o = outcomes[static_cast<std::size_t>(r)];
        out.restart_residuals.push_back(o.residual);
        if (o.residual < outcomes[static_cast<std::size_t>(out.best_restart)].residual)
            out.best_restart = r;
    }
    const auto &best = outcomes[static_cast<std::size_t>(out.best_restart)];
    out.best = verify_c_selfadjoint(t, Conjugation::from_matrix(best.u, kSearchSuccessTol));
    return out;
}

Matrix random_unitary(Index n, Rng &rng)
{
    Matrix z(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            z(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phases so the distribution is Haar
    for (Index j = 0; j < n; ++j)
    {
        Complex d = r(j, j);
        if (std::abs(d) > 0.0)
            q.col(j) *= d / std::abs(d);
    }
    return q;
}

Conjugation random_conjugation(Index n, Rng &rng)
{
    Matrix q = random_unitary(n, rng);
    Matrix u = q * q.transpose();
    return Conjugation::from_matrix((0.5 * (u + u.transpose())).eval(), 1e-10);
}

std::string to_string(SymmetryVerdict v)
{
    switch (v)
    {
    case SymmetryVerdict::CSelfadjointOnTruncation:
        return "c-selfadjoint-on-truncation";
    case SymmetryVerdict::CSymmetricEvidence:
        return "c-symmetric-evidence";
    case SymmetryVerdict::Fail:
        return "fail";
    }
    return "fail";
}

} // namespace shiftlab
