#pragma once

#include <cstdint>
#include <vector>

#include "shiftlab/operators.hpp"
#include "shiftlab/random.hpp"

namespace shiftlab
{

constexpr double kStructuralTol = 1e-12;
constexpr double kDerivedTol = 1e-10;
constexpr double kSearchSuccessTol = 1e-8;

/**
 * Antilinear isometric involution C f = U conj(f), stored through its linear factor U.
 * U unitary and symmetric is exactly the condition for C to be a conjugation.
 */
class Conjugation
{
public:
    Conjugation() = default;

    // Throws PreconditionViolation when U is not square, unitary or symmetric within tol.
    static Conjugation from_matrix(Matrix u, double tol = kStructuralTol);
    static Conjugation identity(Index n);
    // C e_j = e_{n+1-j}
    static Conjugation plain_flip(Index n);

    Index dim() const noexcept { return static_cast<Index>(u_.rows()); }
    const Matrix &u_factor() const noexcept { return u_; }

    // Linear matrices of the compositions  f -> C B C f  and  f -> C B* C f.
    Matrix sandwich(const Matrix &b) const;
    Matrix sandwich_adjoint(const Matrix &b) const;

private:
    explicit Conjugation(Matrix u) : u_(std::move(u)) {}
    Matrix u_;
};

// J f = factor conj(f) with J^2 = support_projection.
struct PartialConjugation
{
    Matrix factor;
    Matrix support_projection;
    Index dim() const noexcept { return static_cast<Index>(factor.rows()); }
};

enum class SymmetryVerdict
{
    CSelfadjointOnTruncation,
    CSymmetricEvidence,
    Fail
};

struct SymmetryCertificate
{
    Conjugation conjugation;
    double residual = 0.0;
    SymmetryVerdict verdict = SymmetryVerdict::Fail;
    // Original basis indices of the truncation the certificate speaks about (may be empty
    // when the matrix was given directly).
    std::vector<Index> basis;
};

Vector apply_conjugation(const Conjugation &c, const Vector &f);

double conjugate_sandwich_adjoint_check(const Conjugation &c, const MatrixTruncation &b);

// Flip conjugation C e_j = mu_j e_{k+1-j}; throws NoSolution unless |w_i| = |w_{k-i}|.
Conjugation build_flip_conjugation(const TruncatedShift &j);

// || C T* C - T ||_F
double c_selfadjoint_residual(const Matrix &t, const Conjugation &c);

// exact_tol is the residual below which exact models are certified.
SymmetryCertificate verify_c_selfadjoint(const MatrixTruncation &t, const Conjugation &c,
                                         double exact_tol = kDerivedTol);

struct PolarConjugationReport
{
    PartialConjugation j;
    PolarParts polar;
    double commutation_residual = 0.0; // || J|T| - |T|J ||
    double composition_residual = 0.0; // || C J - U ||
    double square_defect = 0.0;        // || J^2 - P ||
};

// J = U* C from T = U|T|. Throws NotCSelfadjoint when verify_c_selfadjoint fails.
PolarConjugationReport partial_conjugation_from_polar(const MatrixTruncation &t, const Conjugation &c);

Conjugation direct_sum_conjugation(const std::vector<Conjugation> &parts);

struct FitOptions
{
    Index max_iterations = 4000;
    double target = 1e-12;
};

struct FitResult
{
    SymmetryCertificate best;
    Index best_restart = 0;
    std::vector<double> restart_residuals; // final residual of each restart, by index
};

// Multistart descent over unitary symmetric U = Q Q^T. Deterministic given seed; restarts
// run in parallel and are merged by index. Throws PreconditionViolation when dim > 64.
FitResult fit_conjugation(const MatrixTruncation &t, Index restarts, std::uint64_t seed,
                          const FitOptions &options = {});

// f(Q) = || U T^T conj(U) - T ||^2 with U = Q Q^T, and its derivative along Q -> Q exp(iB),
// B real symmetric: returns the symmetric matrix S with d f = <S, B> (entrywise).
double fit_objective(const Matrix &q, const Matrix &t);
Eigen::MatrixXd fit_gradient(const Matrix &q, const Matrix &t);

Matrix random_unitary(Index n, Rng &rng);
Conjugation random_conjugation(Index n, Rng &rng);

std::string to_string(SymmetryVerdict v);

} // namespace shiftlab
