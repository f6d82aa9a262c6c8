#include <doctest.h>

#include "shiftlab/analysis.hpp"

using namespace shiftlab;

namespace
{
DostawaInstance linear_instance(Index len = 90)
{
    return make_dostawa(SequenceRule::parse("k"), SequenceRule::parse("1/k"), len);
}
} // namespace

TEST_CASE("closedness of the square: constant weights")
{
    auto r = closedness_square_check(WeightSequence::unilateral({1.0}, Periodic{{1.0}}), 50);
    CHECK(r.verdict == ClosednessVerdict::Closed);
    CHECK(r.basis == EvidenceBasis::Symbolic);
    CHECK(r.sup_on_window == 0.5);
    for (double x : r.ratios)
        CHECK(x == 0.5);
}

TEST_CASE("closedness of the square: zero-block example")
{
    auto inst = linear_instance();
    auto r = closedness_square_check(inst.weights, 90);
    CHECK(r.verdict == ClosednessVerdict::NotClosed);
    for (std::size_t i = 0; i < r.indices.size(); ++i)
    {
        Index n = r.indices[i];
        if ((n + 1) % 3 == 0)
        {
            double k = static_cast<double>((n + 1) / 3);
            CHECK(r.ratios[i] == k * k);
        }
    }
    CHECK(r.sup_on_window == 900.0);
}

TEST_CASE("closedness of the square: bare window")
{
    auto r = closedness_square_check(WeightSequence::unilateral({1.0, 10.0, 100.0}), 50);
    CHECK(r.verdict == ClosednessVerdict::Inconclusive);
    CHECK(r.basis == EvidenceBasis::Numeric);
    REQUIRE(r.ratios.size() == 2);
    CHECK(r.ratios[0] == 1.0 / 101.0);
    CHECK(r.ratios[1] == 100.0 / 1000001.0);
    CHECK(r.sup_on_window == 1.0 / 101.0);
}

TEST_CASE("closedness ratios match a recomputation from raw weights")
{
    ComplexVector block{Complex(0.5, 2.0), 3.0, 0.0, Complex(0.0, -1.0)};
    auto seq = WeightSequence::unilateral(block, Periodic{block});
    auto r = closedness_square_check(seq, 40);
    for (std::size_t i = 0; i < r.indices.size(); ++i)
    {
        Complex a = eval_weight(seq, r.indices[i]), b = eval_weight(seq, r.indices[i] + 1);
        CHECK(r.ratios[i] == std::norm(a) / (1.0 + std::norm(a * b)));
    }
    CHECK(r.verdict == ClosednessVerdict::Closed);
}

TEST_CASE("closedness symbolic cases")
{
    // growing weights with nothing to damp them: (k, 0) pattern is not closed
    BlockWithZeros grow{{1.0}, 1, SequenceRule::parse("k")};
    CHECK(closedness_square_check(WeightSequence::from_pattern(Shape::Unilateral, grow, 20), 20).verdict ==
          ClosednessVerdict::NotClosed);
    // lambda_k = k: ratio k^2 / (1 + k^2 (k+1)^2) is bounded
    auto lin = WeightSequence::from_pattern(
        Shape::Unilateral, TaggedGrowth{{GrowthClass::Kind::Polynomial, 1.0, 1.0}, SequenceRule::parse("k"), 0}, 20);
    CHECK(closedness_square_check(lin, 20).verdict == ClosednessVerdict::Closed);
    CHECK(closedness_square_check(WeightSequence::finite({5.0, 0.0, 7.0}), 10).verdict == ClosednessVerdict::Closed);
}

TEST_CASE("domain membership")
{
    auto inst = linear_instance();
    auto fin = domain_membership(inst.weights, FiniteVector{{1.0, 2.0, 3.0}}, 1, 90);
    CHECK(fin.probe.verdict == SeriesVerdict::Converges);

    auto wit = domain_membership(inst.weights, inst.witness, 1, 90);
    CHECK(wit.probe.verdict == SeriesVerdict::Diverges);
    CHECK(wit.probe.partial_sums.back() == doctest::Approx(30.0).epsilon(1e-13));

    // truncated pieces of the witness are killed by the square
    for (Index pieces : {1, 4, 10})
    {
        ComplexVector f(static_cast<std::size_t>(3 * pieces), Complex(0.0, 0.0));
        for (Index k = 1; k <= pieces; ++k)
            f[static_cast<std::size_t>(3 * k - 2)] = 1.0 / static_cast<double>(k); // n = 3k - 1
        auto sq = domain_membership(inst.weights, FiniteVector{f}, 2, 90);
        CHECK(sq.probe.verdict == SeriesVerdict::Converges);
        for (double s : sq.probe.partial_sums)
            CHECK(s == 0.0);
        auto one = domain_membership(inst.weights, FiniteVector{f}, 1, 90);
        CHECK(one.probe.partial_sums.back() == doctest::Approx(static_cast<double>(pieces)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(domain_membership(inst.weights, inst.witness, 0, 90), PreconditionViolation);
    CHECK_THROWS_AS(domain_membership(inst.weights, LatticeRule{SequenceRule::parse("1"), 0, 0}, 1, 90),
                    UnsupportedVectorSpec);
}

TEST_CASE("zero-block example construction")
{
    auto inst = linear_instance(9);
    CHECK(inst.validity.valid());
    ComplexVector expect{1.0, 1.0, 0.0, 2.0, 2.0, 0.0, 3.0, 3.0, 0.0};
    CHECK(inst.weights.window() == expect);
    CHECK(inst.witness.period == 3);
    CHECK(inst.witness.offset == 1);

    CHECK_THROWS_AS(make_dostawa(SequenceRule::parse("1"), SequenceRule::parse("1/k")), InvalidSpecCombination);
    CHECK_THROWS_AS(make_dostawa(SequenceRule::parse("2^k"), SequenceRule::parse("0.5^k*1/k")), InvalidSpecCombination);
    CHECK_THROWS_AS(make_dostawa(SequenceRule::parse("k"), SequenceRule::parse("1")), InvalidSpecCombination);
    CHECK_THROWS_AS(make_dostawa(SequenceRule::parse("k"), SequenceRule::parse("0")), InvalidSpecCombination);

    auto v = dostawa_validity(SequenceRule::parse("1"), SequenceRule::parse("1/k"));
    CHECK(v.b_square_summable);
    CHECK(v.b_nonvanishing);
    CHECK_FALSE(v.ab_not_square_summable);
    CHECK(v.explain().find("converges") != std::string::npos);
}

TEST_CASE("zero-block examples are symmetric for any amplitude")
{
    for (const char *a : {"k", "k^3", "2^k", "1/k", "(-1)*k"})
    {
        BlockWithZeros p{{1.0, 1.0}, 1, SequenceRule::parse(a)};
        auto v = classify_unilateral(WeightSequence::from_pattern(Shape::Unilateral, p, 60), 60);
        CHECK(v.outcome == Outcome::SymmetricWithCertificate);
    }
}

TEST_CASE("power symmetry: zero-block example")
{
    auto inst = linear_instance();
    auto v = classify_unilateral(inst.weights, 60);
    REQUIRE(v.certificate);
    auto rep = power_symmetry_report(inst.weights, v.certificate->symmetry, 3, 60);
    REQUIRE(rep.entries.size() == 3);
    CHECK(rep.entries[0].residual == v.certificate->symmetry.residual);
    CHECK(rep.entries[1].interior_residual <= 1e-10);
    REQUIRE(rep.entries[1].closedness);
    CHECK(*rep.entries[1].closedness == ClosednessVerdict::NotClosed);
    CHECK_FALSE(rep.entries[0].closedness);
    REQUIRE(rep.adjoint_power_inequality_expected);
    CHECK(*rep.adjoint_power_inequality_expected);
}

TEST_CASE("power symmetry: single palindromic block")
{
    auto seq = WeightSequence::finite({1.0, 2.0, 1.0});
    auto v = classify(seq, 10);
    REQUIRE(v.certificate);
    auto rep = power_symmetry_report(seq, v.certificate->symmetry, 4);
    for (const auto &e : rep.entries)
        CHECK(e.residual <= 1e-10);
    REQUIRE(rep.adjoint_power_inequality_expected);
    CHECK_FALSE(*rep.adjoint_power_inequality_expected);
}

TEST_CASE("power symmetry: bounded periodic example")
{
    auto seq = WeightSequence::unilateral({2.0, 2.0, 0.0}, Periodic{{2.0, 2.0, 0.0}});
    auto v = classify_unilateral(seq, 30);
    REQUIRE(v.certificate);
    auto rep = power_symmetry_report(seq, v.certificate->symmetry, 2, 30);
    CHECK(rep.entries[1].residual <= 1e-10);
    CHECK(*rep.entries[1].closedness == ClosednessVerdict::Closed);
    CHECK_FALSE(*rep.adjoint_power_inequality_expected);
    CHECK_THROWS_AS(power_symmetry_report(seq, v.certificate->symmetry, 0), PreconditionViolation);
}
