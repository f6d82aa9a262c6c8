#include "shiftlab/decompose.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace shiftlab
{

namespace
{

constexpr const char *kHypothesis = "C(E) contained in the C-infinity vectors of W";

bool is_zero(Complex w) { return w == Complex(0.0, 0.0); }

Block make_block(const WeightSequence &seq, Index first, Index last_basis)
{
    ComplexVector w;
    for (Index n = first; n < last_basis; ++n)
        w.push_back(seq.weight(n));
    return Block{TruncatedShift(std::move(w)), first};
}

std::vector<double> moduli(const TruncatedShift &j)
{
    std::vector<double> m;
    for (const auto &w : j.weights())
        m.push_back(std::abs(w));
    return m;
}

std::vector<std::int64_t> reversed(std::vector<std::int64_t> k)
{
    std::reverse(k.begin(), k.end());
    return k;
}

// One piece of an assembled conjugation: basis indices and the local factor on them.
struct Piece
{
    std::vector<Index> basis;
    Matrix u;
};

std::vector<Index> block_basis(const Block &b)
{
    std::vector<Index> out;
    for (Index n = b.first_index; n <= b.last_index(); ++n)
        out.push_back(n);
    return out;
}

void add_pairing_pieces(const std::vector<Block> &blocks, const PairingReport &rep, std::vector<Piece> &pieces)
{
    for (const auto &g : rep.groups)
    {
        for (auto p : g.self_palindromic)
            pieces.push_back({block_basis(blocks[p]), build_flip_conjugation(blocks[p].shift).u_factor()});
        for (auto [a, b] : g.paired)
        {
            auto basis = block_basis(blocks[a]);
            auto rest = block_basis(blocks[b]);
            basis.insert(basis.end(), rest.begin(), rest.end());
            pieces.push_back({std::move(basis), cross_flip_conjugation(blocks[a].shift, blocks[b].shift).u_factor()});
        }
    }
}

// Compresses the shift to the union of the piece bases and assembles the conjugation on it.
SymmetryCertificate assemble(const WeightSequence &seq, std::vector<Piece> pieces, Provenance provenance)
{
    std::vector<Index> basis;
    for (const auto &p : pieces)
        basis.insert(basis.end(), p.basis.begin(), p.basis.end());
    std::sort(basis.begin(), basis.end());
    const Index d = static_cast<Index>(basis.size());
    if (d == 0)
    {
        SymmetryCertificate empty;
        empty.verdict = SymmetryVerdict::CSelfadjointOnTruncation;
        return empty;
    }
    std::map<Index, Index> pos;
    for (Index i = 0; i < d; ++i)
        pos[basis[static_cast<std::size_t>(i)]] = i;

    Matrix u = Matrix::Zero(d, d);
    for (const auto &p : pieces)
        for (std::size_t a = 0; a < p.basis.size(); ++a)
            for (std::size_t b = 0; b < p.basis.size(); ++b)
                u(pos[p.basis[a]], pos[p.basis[b]]) = p.u(static_cast<Index>(a), static_cast<Index>(b));

    Matrix t = Matrix::Zero(d, d);
    for (Index i = 0; i + 1 < d; ++i)
    {
        Index n = basis[static_cast<std::size_t>(i)];
        if (basis[static_cast<std::size_t>(i + 1)] == n + 1)
            t(i + 1, i) = seq.weight(n);
    }
    provenance.window = d;
    auto cert = verify_c_selfadjoint(MatrixTruncation{t, provenance}, Conjugation::from_matrix(u, kDerivedTol));
    cert.basis = std::move(basis);
    return cert;
}

Provenance exact_sum_provenance()
{
    Provenance p;
    p.kind = Provenance::Kind::DirectSum;
    p.exact_parts = true;
    return p;
}

Witness unmatched_witness(std::vector<std::vector<double>> tuples)
{
    Witness w;
    w.kind = "unmatched-block";
    w.detail = "block modulus tuples without a reversed partner";
    w.tuples = std::move(tuples);
    return w;
}

std::vector<std::vector<double>> unmatched_tuples(const std::vector<Block> &blocks, const PairingReport &rep)
{
    std::vector<std::vector<double>> out;
    for (const auto &g : rep.groups)
        for (auto p : g.unmatched)
            out.push_back(moduli(blocks[p].shift));
    return out;
}

std::vector<TruncatedShift> shifts_of(const std::vector<Block> &blocks)
{
    std::vector<TruncatedShift> out;
    for (const auto &b : blocks)
        out.push_back(b.shift);
    return out;
}

// Pairing over a multiset in which tuples of `repeating` occur infinitely often and those
// of `once` finitely often. Returns the offending tuples.
std::vector<std::vector<double>> extended_match(const std::vector<Block> &once, const std::vector<Block> &repeating)
{
    std::map<std::vector<std::int64_t>, std::size_t> finite_count;
    std::set<std::vector<std::int64_t>> infinite;
    std::map<std::vector<std::int64_t>, std::vector<double>> sample;
    for (const auto &b : repeating)
    {
        auto k = modulus_key(b.shift);
        infinite.insert(k);
        sample.emplace(k, moduli(b.shift));
    }
    for (const auto &b : once)
    {
        auto k = modulus_key(b.shift);
        ++finite_count[k];
        sample.emplace(k, moduli(b.shift));
    }

    std::vector<std::vector<double>> bad;
    for (const auto &[k, m] : sample)
    {
        auto r = reversed(k);
        if (r == k)
            continue;
        bool inf_k = infinite.count(k) > 0;
        bool inf_r = infinite.count(r) > 0;
        if (inf_k && inf_r)
            continue;
        if (inf_k || inf_r)
        {
            if (inf_k)
                bad.push_back(m);
            continue;
        }
        std::size_t ck = finite_count[k];
        std::size_t cr = finite_count.count(r) ? finite_count[r] : 0;
        if (ck > cr)
            bad.push_back(m);
    }
    return bad;
}

struct SymbolicPairing
{
    bool decided = false;
    std::vector<std::vector<double>> unmatched;
    std::string note;
};

std::optional<Index> last_zero(const ComplexVector &v)
{
    for (Index i = static_cast<Index>(v.size()) - 1; i >= 0; --i)
        if (is_zero(v[static_cast<std::size_t>(i)]))
            return i;
    return std::nullopt;
}

SymbolicPairing periodic_pairing(const WeightSequence &seq, const ComplexVector &block)
{
    // lambda_n = block[(n-1) mod L]; past the last zero p of the first period the run
    // structure repeats with period L.
    const Index len = static_cast<Index>(block.size());
    const Index p = *last_zero(block) + 1;
    auto dec = split_at_zeros(seq, p + len);
    std::vector<Block> once, repeating;
    for (const auto &b : dec.blocks)
        (b.first_index <= p ? once : repeating).push_back(b);
    return {true, extended_match(once, repeating), "pairing decided on one period"};
}

bool constant_modulus(const SequenceRule &r)
{
    return r.degree() == 0.0 && moduli_equal(std::abs(r.ratio()), 1.0);
}

bool strictly_monotone_modulus(const SequenceRule &r)
{
    double lr = std::log(std::abs(r.ratio()));
    double d = r.degree();
    bool up = d >= 0.0 && lr >= 0.0;
    bool down = d <= 0.0 && lr <= 0.0;
    return (up || down) && !constant_modulus(r);
}

SymbolicPairing symbolic_pairing(const WeightSequence &seq)
{
    return std::visit(
        [&](const auto &p) -> SymbolicPairing {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Periodic>)
                return periodic_pairing(seq, p.block);
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                const bool vanishing = p.amplitude && !p.amplitude->nonvanishing();
                if (vanishing)
                    return {true, {}, "all weights vanish"};
                const bool uniform = !p.amplitude || constant_modulus(*p.amplitude);
                if (p.zeros == 0)
                {
                    if (uniform)
                        return periodic_pairing(seq, p.block);
                    return {false, {}, "runs straddle units with different amplitudes"};
                }
                const Index len = p.unit_length();
                auto dec = split_at_zeros(seq, len);
                if (uniform)
                    return {true, extended_match({}, dec.blocks), "pairing decided on one period"};
                // every unit is amplitude(k) times the base block; a non-palindromic tuple can
                // only meet its reversal at the same amplitude modulus
                auto rep = pairing_match(shifts_of(dec.blocks));
                if (rep.fully_matched())
                    return {true, {}, "each unit pairs internally"};
                if (strictly_monotone_modulus(*p.amplitude))
                    return {true, unmatched_tuples(dec.blocks, rep), "amplitude moduli are distinct across units"};
                return {false, {}, "units may pair across repeated amplitude moduli"};
            }
            else if constexpr (std::is_same_v<P, TaggedGrowth>)
            {
                // vanishing rule: zero past the window, only the window blocks remain
                auto dec = split_at_zeros(seq, seq.window_last() + 1);
                return {true, extended_match(dec.blocks, {}), "weights vanish past the window"};
            }
            else
                return {false, {}, "no pattern"};
        },
        seq.pattern());
}

std::map<std::string, std::string> base_metadata(const WeightSequence &seq, const ZeroSetReport &zs, Index horizon)
{
    return {{"domain-hypothesis", kHypothesis},
            {"shape", to_string(seq.shape())},
            {"zero-set", to_string(zs.certainty)},
            {"horizon", std::to_string(horizon)}};
}

ClassificationVerdict certified(std::string label, Certificate cert, std::map<std::string, std::string> meta)
{
    ClassificationVerdict v;
    v.case_label = std::move(label);
    v.metadata = std::move(meta);
    if (cert.symmetry.verdict == SymmetryVerdict::Fail)
    {
        v.outcome = Outcome::UndecidableAtHorizon;
        v.reason = "assembled conjugation failed verification";
        return v;
    }
    v.outcome = Outcome::SymmetricWithCertificate;
    v.certificate = std::move(cert);
    return v;
}

ClassificationVerdict refuted(std::string label, Witness w, std::map<std::string, std::string> meta)
{
    ClassificationVerdict v;
    v.outcome = Outcome::NotSymmetricWithWitness;
    v.case_label = std::move(label);
    v.witness = std::move(w);
    v.metadata = std::move(meta);
    return v;
}

ClassificationVerdict undecided(std::string label, std::string reason, std::map<std::string, std::string> meta)
{
    ClassificationVerdict v;
    v.outcome = Outcome::UndecidableAtHorizon;
    v.case_label = std::move(label);
    v.reason = std::move(reason);
    v.metadata = std::move(meta);
    return v;
}

Certificate pairing_certificate(const WeightSequence &seq, const BlockDecomposition &dec, Provenance provenance,
                                std::size_t &deferred)
{
    Certificate cert;
    cert.kind = "pairing";
    cert.blocks = dec.blocks;
    cert.pairing = pairing_match(shifts_of(dec.blocks));
    deferred = cert.pairing.unmatched_count();
    std::vector<Piece> pieces;
    for (Index s : dec.zero_singletons)
        pieces.push_back({{s}, Matrix::Identity(1, 1)});
    add_pairing_pieces(dec.blocks, cert.pairing, pieces);
    cert.symmetry = assemble(seq, std::move(pieces), provenance);
    return cert;
}

} // namespace

ComplexVector BlockDecomposition::reassemble() const
{
    const Index lo = zeros.scanned_from;
    const Index hi = zeros.scanned_to;
    ComplexVector out(static_cast<std::size_t>(std::max<Index>(hi - lo + 1, 0)));
    auto put = [&](Index n, Complex w) {
        if (n >= lo && n <= hi)
            out[static_cast<std::size_t>(n - lo)] = w;
    };
    auto put_block = [&](const Block &b) {
        for (Index i = 0; i < b.shift.order(); ++i)
            put(b.first_index + i, b.shift.weights()[static_cast<std::size_t>(i)]);
    };
    if (leading_run)
        put_block(*leading_run);
    for (const auto &b : blocks)
        put_block(b);
    for (const auto &[n, w] : zero_weights)
        put(n, w);
    if (tail)
        for (Index i = 0; i < static_cast<Index>(tail->window().size()); ++i)
            put(tail_first + i, tail->window()[static_cast<std::size_t>(i)]);
    if (open_run)
        put_block(*open_run);
    return out;
}

BlockDecomposition split_at_zeros(const WeightSequence &seq, Index horizon)
{
    BlockDecomposition dec;
    dec.shape = seq.shape();
    dec.zeros = zero_set(seq, horizon);
    const Index lo = dec.zeros.scanned_from;
    const Index hi = dec.zeros.scanned_to;

    Index run = lo;
    bool first_run = true;
    for (Index z : dec.zeros.indices)
    {
        dec.zero_weights.emplace_back(z, seq.weight(z));
        if (seq.shape() == Shape::Bilateral && first_run)
            dec.leading_run = make_block(seq, run, z); // cut by the horizon on the left
        else if (z > run)
            dec.blocks.push_back(make_block(seq, run, z));
        else
            dec.zero_singletons.push_back(z);
        first_run = false;
        run = z + 1;
    }

    if (seq.shape() == Shape::Finite)
    {
        // the last basis vector e_k closes the final run
        Index k = seq.dim();
        if (k > run)
            dec.blocks.push_back(make_block(seq, run, k));
        else
            dec.zero_singletons.push_back(k);
        return dec;
    }

    const bool all_zeros_seen = dec.zeros.certainty == ZeroCertainty::FiniteCertain && dec.zeros.total &&
                                *dec.zeros.total == dec.zeros.indices.size();
    if (seq.shape() == Shape::Unilateral && all_zeros_seen && (run <= hi || seq.evaluable(run)))
    {
        ComplexVector w;
        for (Index n = run; n <= std::max(hi, run); ++n)
            w.push_back(seq.weight(n));
        dec.tail = WeightSequence::unilateral(std::move(w));
        dec.tail_first = run;
        return dec;
    }
    dec.open_run = make_block(seq, run, hi + 1);
    return dec;
}

bool PairingReport::fully_matched() const { return unmatched_count() == 0; }

std::size_t PairingReport::unmatched_count() const
{
    std::size_t n = 0;
    for (const auto &g : groups)
        n += g.unmatched.size();
    return n;
}

std::vector<std::int64_t> modulus_key(const TruncatedShift &j)
{
    std::vector<std::int64_t> key;
    for (const auto &w : j.weights())
    {
        double m = std::abs(w);
        key.push_back(m == 0.0 ? std::numeric_limits<std::int64_t>::min() : std::llround(std::log(m) * 1e12));
    }
    return key;
}

PairingReport pairing_match(const std::vector<TruncatedShift> &blocks)
{
    std::map<Index, std::map<std::vector<std::int64_t>, std::vector<std::size_t>>> by_order;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        by_order[blocks[i].order()][modulus_key(blocks[i])].push_back(i);

    PairingReport report;
    for (auto &[order, buckets] : by_order)
    {
        PairingGroup g;
        g.order = order;
        std::set<std::vector<std::int64_t>> done;
        for (auto &[key, members] : buckets)
        {
            g.size += members.size();
            if (done.count(key))
                continue;
            auto rev = reversed(key);
            done.insert(key);
            if (rev == key)
            {
                g.self_palindromic.insert(g.self_palindromic.end(), members.begin(), members.end());
                continue;
            }
            auto it = buckets.find(rev);
            if (it == buckets.end())
            {
                g.unmatched.insert(g.unmatched.end(), members.begin(), members.end());
                continue;
            }
            done.insert(rev);
            const auto &partners = it->second;
            std::size_t m = std::min(members.size(), partners.size());
            for (std::size_t i = 0; i < m; ++i)
                g.paired.emplace_back(members[i], partners[i]);
            for (std::size_t i = m; i < members.size(); ++i)
                g.unmatched.push_back(members[i]);
            for (std::size_t i = m; i < partners.size(); ++i)
                g.unmatched.push_back(partners[i]);
        }
        std::sort(g.self_palindromic.begin(), g.self_palindromic.end());
        std::sort(g.unmatched.begin(), g.unmatched.end());
        std::sort(g.paired.begin(), g.paired.end());
        report.groups.push_back(std::move(g));
    }
    return report;
}

KernelStatus kernel_obstruction_check(const BlockDecomposition &dec)
{
    switch (dec.zeros.certainty)
    {
    case ZeroCertainty::InfiniteCertain:
        return KernelStatus::Ok;
    case ZeroCertainty::Unknown:
        return KernelStatus::Undecidable;
    case ZeroCertainty::FiniteCertain:
        break;
    }
    std::size_t total = dec.zeros.total.value_or(dec.zeros.indices.size());
    return total == 0 ? KernelStatus::NoZeroWeights : KernelStatus::FiniteZeroSet;
}

Conjugation cross_flip_conjugation(const TruncatedShift &a, const TruncatedShift &b)
{
    ComplexVector w = a.weights();
    w.emplace_back(0.0, 0.0);
    w.insert(w.end(), b.weights().begin(), b.weights().end());
    return build_flip_conjugation(TruncatedShift(std::move(w)));
}

ClassificationVerdict classify_unilateral(const WeightSequence &seq, Index horizon)
{
    if (seq.shape() == Shape::Bilateral)
        throw InvalidSequence("classify_unilateral needs a unilateral or finite sequence");

    if (seq.shape() == Shape::Finite)
    {
        auto dec = split_at_zeros(seq, seq.dim());
        auto meta = base_metadata(seq, dec.zeros, seq.dim());
        meta.erase("domain-hypothesis");
        auto rep = pairing_match(shifts_of(dec.blocks));
        if (!rep.fully_matched())
            return refuted("finite", unmatched_witness(unmatched_tuples(dec.blocks, rep)), meta);
        Provenance prov;
        prov.kind = Provenance::Kind::TruncatedBlock;
        std::size_t deferred = 0;
        return certified("finite", pairing_certificate(seq, dec, prov, deferred), meta);
    }

    auto dec = split_at_zeros(seq, horizon);
    auto meta = base_metadata(seq, dec.zeros, horizon);
    switch (kernel_obstruction_check(dec))
    {
    case KernelStatus::NoZeroWeights: {
        Witness w;
        w.kind = "no-zero-weights";
        w.detail = "a unilateral weighted shift without zero weights is not complex symmetric";
        return refuted("unilateral", w, meta);
    }
    case KernelStatus::FiniteZeroSet: {
        Witness w;
        w.kind = "finite-zero-set";
        w.detail = "obstruction under the hypothesis C(E) contained in D(W); a finite nonempty zero set "
                   "is not excluded under weaker hypotheses";
        w.index = dec.zeros.indices.empty() ? std::optional<Index>{} : dec.zeros.indices.back();
        return refuted("unilateral", w, meta);
    }
    case KernelStatus::Undecidable:
        return undecided("unilateral", "the zero set is not determined beyond the window", meta);
    case KernelStatus::Ok:
        break;
    }

    auto sym = symbolic_pairing(seq);
    meta["pairing-basis"] = sym.note;
    if (!sym.decided)
        return undecided("unilateral", sym.note, meta);
    if (!sym.unmatched.empty())
        return refuted("unilateral", unmatched_witness(sym.unmatched), meta);

    std::size_t deferred = 0;
    auto cert = pairing_certificate(seq, dec, exact_sum_provenance(), deferred);
    // blocks whose partners lie past the horizon stay outside the certified truncation
    meta["deferred-blocks"] = std::to_string(deferred);
    return certified("unilateral", std::move(cert), meta);
}

std::optional<WeightSequence> bilateral_reindex(const WeightSequence &seq)
{
    ComplexVector period;
    if (const auto *p = std::get_if<Periodic>(&seq.pattern()))
        period = p->block;
    else if (const auto *b = std::get_if<BlockWithZeros>(&seq.pattern()); b && !b->amplitude)
    {
        period = b->block;
        period.resize(period.size() + static_cast<std::size_t>(b->zeros), Complex(0.0, 0.0));
    }
    else
        return std::nullopt;
    auto z = last_zero(period);
    if (!z)
        return std::nullopt;
    const Index len = static_cast<Index>(period.size());
    ComplexVector rotated;
    for (Index i = 0; i < len; ++i)
        rotated.push_back(period[static_cast<std::size_t>((*z + 1 + i) % len)]);
    return WeightSequence::from_pattern(Shape::Unilateral, Periodic{rotated}, std::max<Index>(len, kDefaultWindow));
}

ClassificationVerdict classify_bilateral(const WeightSequence &seq, Index horizon)
{
    if (seq.shape() != Shape::Bilateral)
        throw InvalidSequence("classify_bilateral needs a bilateral sequence");

    auto zs = zero_set(seq, horizon);
    auto meta = base_metadata(seq, zs, horizon);
    const Index lo = zs.scanned_from;
    const Index hi = zs.scanned_to;
    auto mod = [&](Index n) { return std::abs(seq.weight(n)); };

    if (zs.certainty == ZeroCertainty::Unknown)
        return undecided("bilateral", "the zero set is not determined beyond the window", meta);

    if (zs.certainty == ZeroCertainty::InfiniteCertain)
    {
        auto uni = bilateral_reindex(seq);
        if (!uni)
            return undecided("bilateral-iv", "infinitely many zeros without a periodic structure", meta);
        auto v = classify_unilateral(*uni, horizon);
        v.case_label = "bilateral-iv";
        v.metadata["delegated-to"] = "unilateral";
        v.metadata["shape"] = "bilateral";
        v.metadata["zero-set"] = to_string(zs.certainty);
        return v;
    }

    const std::size_t total = zs.total.value_or(zs.indices.size());
    if (zs.indices.size() != total)
        return undecided("bilateral", "some zeros lie outside the scanned range", meta);

    if (total == 0)
    {
        // (i): |lambda_n| = |lambda_{k-n}| for some k
        std::optional<Index> best;
        Index best_overlap = -1;
        for (Index k = 2 * seq.window_first(); k <= 2 * seq.window_last(); ++k)
        {
            Index overlap = 0;
            bool ok = true;
            for (Index n = std::max(lo, k - hi); n <= std::min(hi, k - lo) && ok; ++n)
            {
                ok = moduli_equal(mod(n), mod(k - n));
                ++overlap;
            }
            if (!ok || overlap == 0)
                continue;
            bool better = overlap > best_overlap ||
                          (overlap == best_overlap && (std::abs(k) < std::abs(*best) ||
                                                       (std::abs(k) == std::abs(*best) && k < *best)));
            if (better)
            {
                best = k;
                best_overlap = overlap;
            }
        }
        if (!best)
        {
            Witness w;
            w.kind = "offset-not-found";
            w.detail = "no k with |lambda_n| = |lambda_{k-n}| on the scanned range";
            return refuted("bilateral-i", w, meta);
        }
        const Index k = *best;
        const Index a = std::max(lo, k - hi);
        const Index b = k + 1 - a;
        Certificate cert;
        cert.kind = "offset";
        cert.offset = k;
        if (b > a)
        {
            ComplexVector w;
            for (Index n = a; n < b; ++n)
                w.push_back(seq.weight(n));
            auto c = build_flip_conjugation(TruncatedShift(std::move(w)));
            cert.symmetry = verify_c_selfadjoint(truncate_bilateral(seq, a, b - a + 1), c);
            for (Index n = a; n <= b; ++n)
                cert.symmetry.basis.push_back(n);
        }
        else
            cert.symmetry.verdict = SymmetryVerdict::CSymmetricEvidence;
        meta["evidence"] = "window";
        return certified("bilateral-i", std::move(cert), meta);
    }

    auto mirror_check = [&](Index left, Index right, Index m) -> std::optional<Index> {
        for (Index n = 1; n < m; ++n)
            if (!moduli_equal(mod(left - n), mod(right + n)))
                return n;
        return std::nullopt;
    };
    auto mirror_witness = [&](Index n) {
        Witness w;
        w.kind = "mirror-mismatch";
        w.detail = "tail moduli differ at distance " + std::to_string(n) + " from the outer zeros";
        w.index = n;
        return w;
    };

    const Index z1 = zs.indices.front();
    const Index zn = zs.indices.back();
    const Index m = std::min(z1 - lo + 1, hi - zn + 1);
    if (auto bad = mirror_check(z1, zn, m))
        return refuted(total == 1 ? "bilateral-ii" : "bilateral-iii", mirror_witness(*bad), meta);

    // the two tails, flipped into each other across the outer zeros
    Piece tails;
    ComplexVector tw;
    for (Index n = z1 - m + 1; n <= z1; ++n)
    {
        tails.basis.push_back(n);
        if (n < z1)
            tw.push_back(seq.weight(n));
    }
    tw.push_back(seq.weight(z1));
    for (Index n = zn + 1; n <= zn + m; ++n)
    {
        tails.basis.push_back(n);
        if (n < zn + m)
            tw.push_back(seq.weight(n));
    }
    Provenance window;
    window.kind = Provenance::Kind::Bilateral;
    meta["evidence"] = "window";

    if (total == 1)
    {
        tails.u = build_flip_conjugation(TruncatedShift(std::move(tw))).u_factor();
        Certificate cert;
        cert.kind = "mirror";
        cert.mirror_at = z1;
        cert.symmetry = assemble(seq, {tails}, window);
        return certified("bilateral-ii", std::move(cert), meta);
    }

    // (iii): inner blocks between consecutive zeros
    std::vector<Block> inner;
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < zs.indices.size(); ++i)
    {
        Index start = zs.indices[i] + 1;
        Index end = zs.indices[i + 1];
        if (end > start)
            inner.push_back(make_block(seq, start, end));
        else
            pieces.push_back({{end}, Matrix::Identity(1, 1)});
    }
    auto rep = pairing_match(shifts_of(inner));
    if (!rep.fully_matched())
        return refuted("bilateral-iii", unmatched_witness(unmatched_tuples(inner, rep)), meta);
    add_pairing_pieces(inner, rep, pieces);
    tails.u = build_flip_conjugation(TruncatedShift(std::move(tw))).u_factor();
    pieces.push_back(std::move(tails));

    Certificate cert;
    cert.kind = "finite-zeros";
    cert.pairing = rep;
    cert.blocks = inner;
    cert.symmetry = assemble(seq, std::move(pieces), window);
    return certified("bilateral-iii", std::move(cert), meta);
}

ClassificationVerdict classify(const WeightSequence &seq, Index horizon)
{
    return seq.shape() == Shape::Bilateral ? classify_bilateral(seq, horizon) : classify_unilateral(seq, horizon);
}

std::string to_string(KernelStatus s)
{
    switch (s)
    {
    case KernelStatus::Ok:
        return "ok";
    case KernelStatus::NoZeroWeights:
        return "no-zero-weights";
    case KernelStatus::FiniteZeroSet:
        return "finite-zero-set";
    case KernelStatus::Undecidable:
        return "undecidable";
    }
    return "undecidable";
}

std::string to_string(Outcome o)
{
    switch (o)
    {
    case Outcome::SymmetricWithCertificate:
        return "symmetric-with-certificate";
    case Outcome::NotSymmetricWithWitness:
        return "not-symmetric-with-witness";
    case Outcome::UndecidableAtHorizon:
        return "undecidable-at-horizon";
    }
    return "undecidable-at-horizon";
}

} // namespace shiftlab
