#include <doctest.h>

#include "shiftlab/operators.hpp"
#include "shiftlab/random.hpp"

using namespace shiftlab;

namespace
{
Matrix subdiagonal(const ComplexVector &w)
{
    Index n = static_cast<Index>(w.size()) + 1;
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i)
        m(i + 1, i) = w[static_cast<std::size_t>(i)];
    return m;
}

WeightSequence integers(Index len)
{
    ComplexVector w;
    for (Index i = 1; i <= len; ++i)
        w.emplace_back(static_cast<double>(i), 0.0);
    return WeightSequence::unilateral(w);
}
const Complex I(0.0, 1.0);
} // namespace

TEST_CASE("truncations")
{
    auto u = truncate_to_matrix(WeightSequence::unilateral({1.0, 2.0, 3.0}), 4);
    CHECK(u.entries == subdiagonal({1.0, 2.0, 3.0}));
    CHECK(u.provenance.kind == Provenance::Kind::Unilateral);
    CHECK_FALSE(u.provenance.is_exact_model());

    auto f = truncate_to_matrix(WeightSequence::finite({1.0, 2.0, 1.0}), 4);
    CHECK(f.entries == TruncatedShift({1.0, 2.0, 1.0}).matrix());
    CHECK(f.provenance.kind == Provenance::Kind::TruncatedBlock);
    CHECK_THROWS_AS(truncate_to_matrix(WeightSequence::finite({1.0, 2.0, 1.0}), 5), IndexOutOfSupport);

    ComplexVector w;
    for (Index n = -2; n <= 2; ++n)
        w.emplace_back(std::pow(2.0, -static_cast<double>(std::abs(n))), 0.0);
    auto b = truncate_bilateral(WeightSequence::bilateral(w, -2), -2, 5);
    CHECK(b.entries == subdiagonal({0.25, 0.5, 1.0, 0.5}));
    CHECK(b.provenance.offset == -2);
}

TEST_CASE("adjoint action")
{
    auto a = adjoint_action(shift_matrix(TruncatedShift({1.0, 2.0})));
    CHECK(a.entries(0, 1) == Complex(1.0, 0.0));
    CHECK(a.entries(1, 2) == Complex(2.0, 0.0));
    CHECK(a.provenance.adjoint);

    auto b = adjoint_action(shift_matrix(TruncatedShift({I})));
    CHECK(b.entries(0, 1) == -I);

    Rng rng(5);
    Matrix m(4, 4);
    for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 4; ++c)
            m(r, c) = rng.complex_gaussian();
    auto g = general_matrix(m);
    auto twice = adjoint_action(adjoint_action(g));
    CHECK(twice.entries == g.entries);
    CHECK(twice.provenance == g.provenance);
}

TEST_CASE("truncated shifts are nilpotent of order dim")
{
    Rng rng(9);
    for (Index k = 1; k <= 12; ++k)
    {
        ComplexVector w;
        for (Index i = 0; i + 1 < k; ++i)
            w.push_back(rng.complex_gaussian());
        TruncatedShift j(w);
        CHECK(matrix_power(j.matrix(), k).isZero(0.0));
        if (k > 1)
            CHECK_FALSE(matrix_power(j.matrix(), k - 1).isZero(0.0));
    }
}

TEST_CASE("power interleave parts")
{
    auto pi = power_interleave(integers(12), 2, 6);
    REQUIRE(pi.stride_parts.size() == 2);
    CHECK(pi.stride_parts[0].window()[0] == Complex(1.0, 0.0));
    CHECK(pi.stride_parts[0].window()[1] == Complex(3.0, 0.0));
    CHECK(pi.stride_parts[0].window()[2] == Complex(5.0, 0.0));
    CHECK(pi.stride_parts[1].window()[0] == Complex(2.0, 0.0));
    CHECK(pi.stride_parts[1].window()[1] == Complex(4.0, 0.0));
    // the square maps e_n to lambda_n lambda_{n+1} e_{n+2}
    REQUIRE(pi.parts.size() == 2);
    CHECK(pi.parts[0].window()[0] == Complex(2.0, 0.0));  // 1*2
    CHECK(pi.parts[0].window()[1] == Complex(12.0, 0.0)); // 3*4
    CHECK(pi.parts[1].window()[0] == Complex(6.0, 0.0));  // 2*3

    // permutation is a bijection
    std::vector<Index> sorted = pi.permutation;
    std::sort(sorted.begin(), sorted.end());
    for (Index i = 0; i < static_cast<Index>(sorted.size()); ++i)
        CHECK(sorted[static_cast<std::size_t>(i)] == i);
    CHECK(pi.check_residual < 1e-12);
}

TEST_CASE("square entries are products of neighbours")
{
    Rng rng(12);
    ComplexVector w;
    for (int i = 0; i < 10; ++i)
        w.push_back(rng.complex_gaussian());
    Matrix t = truncate_to_matrix(WeightSequence::unilateral(w), 11).entries;
    Matrix sq = matrix_power(t, 2);
    for (Index n = 1; n + 1 <= 10; ++n)
        CHECK(std::abs(sq(n + 1, n - 1) - w[static_cast<std::size_t>(n - 1)] * w[static_cast<std::size_t>(n)]) < 1e-15);
}

TEST_CASE("interleave of constant weights is exact")
{
    ComplexVector ones(24, Complex(1.0, 0.0));
    auto pi = power_interleave(WeightSequence::unilateral(ones), 3, 8);
    CHECK(pi.check_residual == 0.0);
}

TEST_CASE("polar decomposition of shifts is read off")
{
    auto p = polar_decompose(shift_matrix(TruncatedShift({1.0, 2.0, 1.0})));
    CHECK(p.closed_form);
    Matrix mod = Matrix::Zero(4, 4);
    mod.diagonal() << 1.0, 2.0, 1.0, 0.0;
    CHECK(p.modulus == mod);
    CHECK(p.isometry == subdiagonal({1.0, 1.0, 1.0}));
    CHECK(p.initial_space_dim == 3);

    auto z = polar_decompose(general_matrix(Matrix::Zero(3, 3)));
    CHECK(z.modulus.isZero(0.0));
    CHECK(z.isometry.isZero(0.0));

    auto i = polar_decompose(shift_matrix(TruncatedShift({I})));
    CHECK(i.modulus(0, 0) == Complex(1.0, 0.0));
    CHECK(i.modulus(1, 1) == Complex(0.0, 0.0));
    CHECK(i.isometry(1, 0) == I);
}

TEST_CASE("polar decomposition invariants on dense matrices")
{
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial)
    {
        Index n = rng.integer(1, 12);
        Matrix m(n, n);
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < n; ++c)
                m(r, c) = rng.complex_gaussian();
        if (trial % 3 == 0 && n > 1)
            m.col(0) = m.col(n - 1); // rank deficient
        auto p = polar_decompose(general_matrix(m));
        CHECK((p.isometry * p.modulus - m).norm() <= 1e-12 * std::max(1.0, m.norm()));
        CHECK((p.isometry.adjoint() * p.isometry * p.modulus - p.modulus).norm() <= 1e-11 * std::max(1.0, m.norm()));
        CHECK((p.modulus - p.modulus.adjoint()).norm() <= 1e-12 * std::max(1.0, m.norm()));
        Eigen::SelfAdjointEigenSolver<Matrix> es(p.modulus);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, m.norm()));
    }
}

TEST_CASE("direct sums")
{
    auto a = shift_matrix(TruncatedShift({1.0}));
    auto b = shift_matrix(TruncatedShift({2.0}));
    auto s = direct_sum({a, b});
    CHECK(s.dim() == 4);
    CHECK(s.entries == subdiagonal({1.0, 0.0, 2.0}));
    CHECK(s.provenance.kind == Provenance::Kind::DirectSum);
    CHECK(s.provenance.part_dims == std::vector<Index>{2, 2});
    CHECK(s.provenance.exact_parts);

    auto one = direct_sum({a});
    CHECK(one.entries == a.entries);
    CHECK(one.provenance == a.provenance);

    auto mixed = direct_sum({a, general_matrix(Matrix::Identity(3, 3)), b});
    CHECK(mixed.dim() == 7);
    CHECK_FALSE(mixed.provenance.exact_parts);
}

TEST_CASE("non-square matrices are rejected")
{
    CHECK_THROWS_AS(general_matrix(Matrix::Zero(2, 3)), DimMismatch);
}
