#include <doctest.h>

#include <map>

#include "shiftlab/decompose.hpp"
#include "shiftlab/random.hpp"

using namespace shiftlab;

namespace
{
TaggedGrowth linear_tail()
{
    return TaggedGrowth{{GrowthClass::Kind::Polynomial, 1.0, 1.0}, SequenceRule::parse("k"), 0};
}

std::vector<double> mods(const TruncatedShift &j)
{
    std::vector<double> m;
    for (const auto &w : j.weights())
        m.push_back(std::abs(w));
    return m;
}

// Independent check of a certificate: rebuild the compression and measure the residual.
double certificate_residual(const WeightSequence &seq, const SymmetryCertificate &cert)
{
    const auto &basis = cert.basis;
    Index d = static_cast<Index>(basis.size());
    Matrix t = Matrix::Zero(d, d);
    for (Index i = 0; i + 1 < d; ++i)
        if (basis[static_cast<std::size_t>(i + 1)] == basis[static_cast<std::size_t>(i)] + 1)
            t(i + 1, i) = eval_weight(seq, basis[static_cast<std::size_t>(i)]);
    const Matrix &u = cert.conjugation.u_factor();
    return (u * t.transpose() * u.conjugate() - t).norm();
}

// Multiset oracle: tuple counts against reversed-tuple counts.
std::size_t unmatched_oracle(const std::vector<std::vector<double>> &tuples)
{
    std::map<std::vector<double>, long> count;
    for (const auto &t : tuples)
        ++count[t];
    std::size_t out = 0;
    for (const auto &[t, c] : count)
    {
        std::vector<double> r(t.rbegin(), t.rend());
        if (r == t)
            continue;
        auto it = count.find(r);
        long other = it == count.end() ? 0 : it->second;
        if (c > other)
            out += static_cast<std::size_t>(c - other);
    }
    return out;
}
} // namespace

TEST_CASE("split at zeros with a zero-free tail")
{
    auto seq = WeightSequence::unilateral({1.0, 2.0, 0.0, 3.0, 0.0, 0.0, 5.0, 6.0}, linear_tail());
    auto dec = split_at_zeros(seq, 20);
    REQUIRE(dec.blocks.size() == 2);
    CHECK(dec.blocks[0].first_index == 1);
    CHECK(dec.blocks[0].shift.weights() == ComplexVector{1.0, 2.0});
    CHECK(dec.blocks[1].first_index == 4);
    CHECK(dec.blocks[1].shift.weights() == ComplexVector{3.0});
    CHECK(dec.zero_singletons == std::vector<Index>{6});
    REQUIRE(dec.tail);
    CHECK(dec.tail_first == 7);
    CHECK(eval_weight(*dec.tail, 1) == Complex(5.0, 0.0));
    CHECK(eval_weight(*dec.tail, 2) == Complex(6.0, 0.0));
    CHECK(eval_weight(*dec.tail, 5) == Complex(11.0, 0.0));
    CHECK(kernel_obstruction_check(dec) == KernelStatus::FiniteZeroSet);
}

TEST_CASE("split of a periodic zero pattern")
{
    Complex a(2.0, 1.0);
    auto seq = WeightSequence::unilateral({a, a, 0.0}, Periodic{{a, a, 0.0}});
    auto dec = split_at_zeros(seq, 30);
    CHECK(dec.blocks.size() == 10);
    for (const auto &b : dec.blocks)
        CHECK(b.shift.weights() == ComplexVector{a, a});
    CHECK_FALSE(dec.tail);
    CHECK(dec.zeros.certainty == ZeroCertainty::InfiniteCertain);
    CHECK(kernel_obstruction_check(dec) == KernelStatus::Ok);
}

TEST_CASE("zero-free windows leave the tail undecided")
{
    auto dec = split_at_zeros(WeightSequence::unilateral({1.0, 2.0, 3.0}), 10);
    CHECK(dec.blocks.empty());
    REQUIRE(dec.open_run);
    CHECK(dec.open_run->first_index == 1);
    CHECK_FALSE(dec.tail);
    CHECK(kernel_obstruction_check(dec) == KernelStatus::Undecidable);

    auto periodic = split_at_zeros(WeightSequence::unilateral({1.0, 2.0}, Periodic{{1.0, 2.0}}), 10);
    CHECK(kernel_obstruction_check(periodic) == KernelStatus::NoZeroWeights);
}

TEST_CASE("reassembly is bit-exact")
{
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial)
    {
        Index len = rng.integer(1, 40);
        ComplexVector w;
        for (Index i = 0; i < len; ++i)
            w.push_back(rng.uniform() < 0.3 ? Complex(0.0, 0.0) : rng.complex_gaussian());
        auto seq = WeightSequence::unilateral(w);
        CHECK(split_at_zeros(seq, len).reassemble() == w);
    }
    ComplexVector with_neg_zero{1.0, Complex(-0.0, 0.0), 2.0};
    auto back = split_at_zeros(WeightSequence::unilateral(with_neg_zero), 3).reassemble();
    CHECK(std::signbit(back[1].real()));
}

TEST_CASE("pairing by modulus tuples")
{
    auto p = pairing_match({TruncatedShift({1.0, 2.0}), TruncatedShift({Complex(0.0, 2.0), 1.0})});
    CHECK(p.fully_matched());
    REQUIRE(p.groups.size() == 1);
    CHECK(p.groups[0].paired.size() == 1);

    auto q = pairing_match({TruncatedShift({1.0, 2.0}), TruncatedShift({1.0, 2.0})});
    CHECK(q.unmatched_count() == 2);

    auto r = pairing_match({TruncatedShift({3.0, 3.0})});
    CHECK(r.fully_matched());
    CHECK(r.groups[0].self_palindromic.size() == 1);

    // tuples of different orders never pair
    auto s = pairing_match({TruncatedShift({1.0, 2.0}), TruncatedShift({2.0, 1.0, 1.0})});
    CHECK(s.groups.size() == 2);
    CHECK(s.unmatched_count() == 2);
}

TEST_CASE("pairing agrees with a multiset oracle")
{
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<TruncatedShift> blocks;
        std::vector<std::vector<double>> tuples;
        Index count = rng.integer(1, 8);
        for (Index b = 0; b < count; ++b)
        {
            Index order = rng.integer(1, 3);
            ComplexVector w;
            for (Index i = 0; i < order; ++i)
                w.push_back(std::polar(static_cast<double>(rng.integer(1, 2)), rng.phase_angle()));
            blocks.emplace_back(w);
            tuples.push_back(mods(blocks.back()));
        }
        // rounding on the moduli can only merge equal tuples here, values are 1 or 2
        for (auto &t : tuples)
            for (auto &x : t)
                x = std::round(x);
        std::map<std::size_t, std::vector<std::vector<double>>> by_order;
        for (const auto &t : tuples)
            by_order[t.size()].push_back(t);
        std::size_t expect = 0;
        for (const auto &[o, ts] : by_order)
            expect += unmatched_oracle(ts);
        CHECK(pairing_match(blocks).unmatched_count() == expect);
    }
}

TEST_CASE("cross flip between a block and its reversal")
{
    TruncatedShift a({1.0, Complex(0.0, 2.0)}), b({Complex(2.0, 0.0), Complex(-1.0, 0.0)});
    auto c = cross_flip_conjugation(a, b);
    CHECK(c.dim() == 6);
    auto t = direct_sum({shift_matrix(a), shift_matrix(b)});
    CHECK(c_selfadjoint_residual(t.entries, c) <= 1e-12);
    CHECK_THROWS_AS(cross_flip_conjugation(a, a), NoSolution);
}

TEST_CASE("unilateral classification")
{
    auto aa = WeightSequence::unilateral({2.0, 2.0, 0.0}, Periodic{{2.0, 2.0, 0.0}});
    auto v = classify_unilateral(aa, 60);
    CHECK(v.outcome == Outcome::SymmetricWithCertificate);
    REQUIRE(v.certificate);
    CHECK(v.certificate->symmetry.verdict == SymmetryVerdict::CSelfadjointOnTruncation);
    CHECK(certificate_residual(aa, v.certificate->symmetry) <= 1e-10);
    CHECK(v.metadata.count("domain-hypothesis") == 1);

    auto zero_free = WeightSequence::unilateral({1.0, 2.0, 3.0}, linear_tail());
    auto w = classify_unilateral(zero_free, 60);
    CHECK(w.outcome == Outcome::NotSymmetricWithWitness);
    REQUIRE(w.witness);
    CHECK(w.witness->kind == "no-zero-weights");

    ComplexVector block{1.0, 2.0, 0.0, 2.0, 1.0, 0.0};
    auto paired = WeightSequence::unilateral(block, Periodic{block});
    auto p = classify_unilateral(paired, 60);
    CHECK(p.outcome == Outcome::SymmetricWithCertificate);
    REQUIRE(p.certificate);
    CHECK(p.certificate->kind == "pairing");
    CHECK(certificate_residual(paired, p.certificate->symmetry) <= 1e-10);
    CHECK(p.certificate->symmetry.residual <= 1e-10);
    CHECK(p.certificate->symmetry.basis.size() == 60);

    ComplexVector lopsided{1.0, 2.0, 0.0, 1.0, 2.0, 0.0};
    auto l = classify_unilateral(WeightSequence::unilateral(lopsided, Periodic{lopsided}), 60);
    CHECK(l.outcome == Outcome::NotSymmetricWithWitness);
    REQUIRE(l.witness);
    CHECK(l.witness->kind == "unmatched-block");

    auto finite_zeros = classify_unilateral(WeightSequence::unilateral({1.0, 2.0, 0.0, 4.0}, linear_tail()), 60);
    REQUIRE(finite_zeros.witness);
    CHECK(finite_zeros.witness->kind == "finite-zero-set");

    auto window_only = classify_unilateral(WeightSequence::unilateral({1.0, 0.0, 1.0}), 60);
    CHECK(window_only.outcome == Outcome::UndecidableAtHorizon);
    CHECK_FALSE(window_only.reason.empty());
}

TEST_CASE("finite sequences use the truncated-block criterion")
{
    auto good = classify(WeightSequence::finite({1.0, 2.0, 1.0}), 10);
    CHECK(good.outcome == Outcome::SymmetricWithCertificate);
    CHECK(good.case_label == "finite");
    auto bad = classify(WeightSequence::finite({1.0, 2.0}), 10);
    CHECK(bad.outcome == Outcome::NotSymmetricWithWitness);
    // zeros split a finite shift into blocks that may pair across the zero
    auto split = classify(WeightSequence::finite({1.0, 2.0, 0.0, 2.0, 1.0}), 10);
    CHECK(split.outcome == Outcome::SymmetricWithCertificate);
}

TEST_CASE("bilateral classification")
{
    // (i) zero-free, |lambda_n| = |lambda_{-n}|
    ComplexVector w;
    for (Index n = -8; n <= 8; ++n)
        w.emplace_back(std::pow(0.5, static_cast<double>(std::abs(n))), 0.0);
    TaggedGrowth g{{GrowthClass::Kind::Geometric, 0.5, 1.0}, SequenceRule::parse("0.5^k"), 0};
    auto i = classify_bilateral(WeightSequence::bilateral(w, -8, g), 30);
    CHECK(i.case_label == "bilateral-i");
    CHECK(i.outcome == Outcome::SymmetricWithCertificate);
    REQUIRE(i.certificate);
    CHECK(i.certificate->offset == Index{0});
    CHECK(i.certificate->symmetry.verdict == SymmetryVerdict::CSymmetricEvidence);

    // (i) with a shifted centre: |lambda_n| = |lambda_{3-n}|
    ComplexVector s{1.0, 2.0, 3.0, 3.0, 2.0, 1.0};
    auto shifted = classify_bilateral(WeightSequence::bilateral(s, -1, Periodic{{1.0, 2.0, 3.0, 3.0, 2.0, 1.0}}), 20);
    CHECK(shifted.case_label == "bilateral-i");

    // (ii) one zero, mirrored moduli with different phases
    ComplexVector m;
    for (Index n = -6; n <= 6; ++n)
        m.push_back(n == 0 ? Complex(0.0, 0.0) : std::polar(1.0 + std::abs(n), 0.3 * n));
    TaggedGrowth poly{{GrowthClass::Kind::Polynomial, 1.0, 1.0}, SequenceRule::parse("k"), 1};
    auto ii = classify_bilateral(WeightSequence::bilateral(m, -6, poly), 30);
    CHECK(ii.case_label == "bilateral-ii");
    CHECK(ii.outcome == Outcome::SymmetricWithCertificate);
    REQUIRE(ii.certificate);
    CHECK(ii.certificate->mirror_at == Index{0});

    // (ii) broken mirror
    m[1] *= 0.5;
    auto ii_bad = classify_bilateral(WeightSequence::bilateral(m, -6, poly), 30);
    CHECK(ii_bad.outcome == Outcome::NotSymmetricWithWitness);
    REQUIRE(ii_bad.witness);
    CHECK(ii_bad.witness->kind == "mirror-mismatch");

    // (iv) infinitely many zeros
    ComplexVector blk{1.0, 2.0, 0.0, 2.0, 1.0, 0.0};
    auto iv = classify_bilateral(WeightSequence::bilateral(blk, 0, Periodic{blk}), 30);
    CHECK(iv.case_label == "bilateral-iv");
    CHECK(iv.outcome == Outcome::SymmetricWithCertificate);
    CHECK(iv.metadata.at("delegated-to") == "unilateral");

    // window-only: the zero set is unknown
    auto unknown = classify_bilateral(WeightSequence::bilateral({1.0, 0.0, 1.0}, -1), 30);
    CHECK(unknown.outcome == Outcome::UndecidableAtHorizon);
}
