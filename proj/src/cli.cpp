#include "shiftlab/cli.hpp"

#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "shiftlab/io.hpp"

namespace shiftlab::cli
{

namespace
{

constexpr int kDefinite = 0;
constexpr int kFailure = 1;
constexpr int kUndecidable = 2;

struct Options
{
    std::string input;
    Index horizon = kDefaultWindow;
    std::string dump_path;
    // conjugation
    bool fit = false;
    Index restarts = 16;
    std::uint64_t seed = 0;
    Index dim = 0;
    // verify
    std::string conjugation_path;
    double tol = kDerivedTol;
    // analyze
    bool closedness = false;
    std::vector<std::string> dostawa;
    Index power = 0;
    // wtn
    WtnConfig wtn;
    std::string csv_path;
    std::string format = "json";
    std::string rows = "as-printed";
    Index candidate_dim = 0;
    // dump-matrix
    Index first = 0;
    bool first_set = false;
    std::string out_path;
};

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        throw InputError("cannot write '" + path + "'");
}

WeightSequence load(const std::string &path)
{
    try
    {
        return load_sequence(path);
    }
    catch (const InputError &e)
    {
        throw InputError(path + ": " + e.what());
    }
}

// Leading truncation of dimension n (bilateral: from the window start unless given).
MatrixTruncation leading_truncation(const WeightSequence &seq, Index n, std::optional<Index> first = {})
{
    if (seq.shape() == Shape::Bilateral)
        return truncate_bilateral(seq, first.value_or(seq.window_first()), n);
    if (first && *first != 1)
        throw InputError("--first only applies to bilateral sequences");
    return truncate_to_matrix(seq, n);
}

// The compression of the shift to span{e_b : b in basis}.
MatrixTruncation compressed(const WeightSequence &seq, const std::vector<Index> &basis)
{
    const Index d = static_cast<Index>(basis.size());
    Matrix t = Matrix::Zero(d, d);
    for (Index i = 0; i + 1 < d; ++i)
    {
        Index n = basis[static_cast<std::size_t>(i)];
        if (basis[static_cast<std::size_t>(i + 1)] == n + 1)
            t(i + 1, i) = eval_weight(seq, n);
    }
    Provenance p;
    p.kind = seq.shape() == Shape::Finite    ? Provenance::Kind::TruncatedBlock
             : seq.shape() == Shape::Bilateral ? Provenance::Kind::Bilateral
                                               : Provenance::Kind::Unilateral;
    p.window = d;
    p.offset = basis.empty() ? 1 : basis.front();
    return MatrixTruncation{t, p};
}

Index default_dim(const WeightSequence &seq, Index requested)
{
    if (requested > 0)
        return requested;
    if (seq.shape() == Shape::Finite)
        return seq.dim();
    return std::min<Index>(static_cast<Index>(seq.window().size()), 16);
}

int classify_cmd(const Options &o, std::ostream &out)
{
    auto seq = load(o.input);
    auto v = classify(seq, o.horizon);
    if (!o.dump_path.empty())
    {
        if (!v.certificate)
            throw InputError("--dump-matrix: no certificate to dump (outcome " + to_string(v.outcome) + ")");
        Json m = matrix_to_json(v.certificate->symmetry.conjugation.u_factor());
        Json basis = Json::array();
        for (Index b : v.certificate->symmetry.basis)
            basis.push_back(b);
        m["basis"] = std::move(basis);
        write_file(o.dump_path, dump_json(m));
    }
    out << dump_json(to_json(v));
    return v.outcome == Outcome::UndecidableAtHorizon ? kUndecidable : kDefinite;
}

int decompose_cmd(const Options &o, std::ostream &out)
{
    auto seq = load(o.input);
    auto dec = split_at_zeros(seq, o.horizon);
    std::vector<TruncatedShift> shifts;
    for (const auto &b : dec.blocks)
        shifts.push_back(b.shift);
    Json j = to_json(dec);
    j["kernel_status"] = to_string(kernel_obstruction_check(dec));
    j["pairing"] = to_json(pairing_match(shifts));
    out << dump_json(j);
    return kDefinite;
}

int conjugation_cmd(const Options &o, std::ostream &out)
{
    auto seq = load(o.input);
    auto t = leading_truncation(seq, default_dim(seq, o.dim));
    Json j;
    j["dim"] = t.dim();
    if (o.fit)
    {
        j["method"] = "fit";
        auto fit = fit_conjugation(t, o.restarts, o.seed);
        j["found"] = fit.best.verdict != SymmetryVerdict::Fail;
        j["fit"] = to_json(fit);
        out << dump_json(j);
        return kDefinite;
    }
    j["method"] = "flip";
    ComplexVector w;
    for (Index i = 0; i + 1 < t.dim(); ++i)
        w.push_back(t.entries(i + 1, i));
    try
    {
        auto c = build_flip_conjugation(TruncatedShift(w));
        auto cert = verify_c_selfadjoint(t, c);
        j["found"] = true;
        j["certificate"] = to_json(cert);
        if (cert.verdict != SymmetryVerdict::Fail)
            j["polar"] = to_json(partial_conjugation_from_polar(t, c));
    }
    catch (const NoSolution &e)
    {
        j["found"] = false;
        j["reason"] = e.what();
    }
    out << dump_json(j);
    return kDefinite;
}

int verify_cmd(const Options &o, std::ostream &out)
{
    auto seq = load(o.input);
    std::string text = read_file(o.conjugation_path);
    Json cj;
    try
    {
        cj = Json::parse(text);
    }
    catch (const Json::parse_error &e)
    {
        throw InputError(o.conjugation_path + ": " + e.what());
    }
    Matrix u = matrix_from_json(cj);
    auto c = Conjugation::from_matrix(u, std::max(o.tol, kStructuralTol));

    MatrixTruncation t;
    std::vector<Index> basis;
    if (cj.contains("basis"))
    {
        for (const auto &b : cj["basis"])
        {
            if (!b.is_number_integer())
                throw InputError(o.conjugation_path + ": basis entries must be integers");
            basis.push_back(b.get<Index>());
        }
        if (static_cast<Index>(basis.size()) != c.dim())
            throw InputError(o.conjugation_path + ": basis length differs from dim");
        t = compressed(seq, basis);
    }
    else
    {
        t = leading_truncation(seq, c.dim());
        for (Index i = 0; i < c.dim(); ++i)
            basis.push_back(t.provenance.offset + i);
    }
    auto cert = verify_c_selfadjoint(t, c, o.tol);
    cert.basis = std::move(basis);
    out << dump_json(to_json(cert));
    return kDefinite;
}

std::pair<SequenceRule, SequenceRule> dostawa_rules(const std::vector<std::string> &args)
{
    std::map<std::string, SequenceRule> rules;
    for (const auto &a : args)
    {
        auto eq = a.find('=');
        if (eq == std::string::npos)
            throw InputError("--dostawa expects a=<rule> b=<rule>, got '" + a + "'");
        std::string name = a.substr(0, eq);
        if (name != "a" && name != "b")
            throw InputError("--dostawa: unknown parameter '" + name + "'");
        try
        {
            rules.insert_or_assign(name, SequenceRule::parse(a.substr(eq + 1)));
        }
        catch (const InvalidSequence &e)
        {
            throw InputError("--dostawa " + name + ": " + e.what());
        }
    }
    if (!rules.count("a") || !rules.count("b"))
        throw InputError("--dostawa needs both a=<rule> and b=<rule>");
    return {rules.at("a"), rules.at("b")};
}

int analyze_cmd(const Options &o, std::ostream &out)
{
    int modes = (o.closedness ? 1 : 0) + (o.dostawa.empty() ? 0 : 1) + (o.power > 0 ? 1 : 0);
    if (modes != 1)
        throw InputError("analyze takes exactly one of --closedness, --dostawa, --power");

    if (!o.dostawa.empty())
    {
        if (!o.input.empty())
            throw InputError("--dostawa builds its own sequence; drop the input file");
        auto [a, b] = dostawa_rules(o.dostawa);
        DostawaInstance inst = [&] {
            try
            {
                return make_dostawa(a, b, std::max<Index>(o.horizon, 3));
            }
            catch (const InvalidSpecCombination &e)
            {
                throw InputError(std::string("--dostawa: ") + e.what());
            }
        }();
        auto v = classify(inst.weights, o.horizon);
        Json j;
        j["instance"] = to_json(inst);
        j["classification"] = to_json(v);
        j["closedness"] = to_json(closedness_square_check(inst.weights, o.horizon));
        j["witness_domain"] = to_json(domain_membership(inst.weights, inst.witness, 1, o.horizon));
        out << dump_json(j);
        return v.outcome == Outcome::UndecidableAtHorizon ? kUndecidable : kDefinite;
    }

    if (o.input.empty())
        throw InputError("analyze needs an input file");
    auto seq = load(o.input);
    if (o.closedness)
    {
        auto r = closedness_square_check(seq, o.horizon);
        out << dump_json(to_json(r));
        return r.verdict == ClosednessVerdict::Inconclusive ? kUndecidable : kDefinite;
    }

    auto v = classify(seq, o.horizon);
    Json j;
    j["classification"] = to_json(v);
    if (!v.certificate)
    {
        j["power_report"] = nullptr;
        out << dump_json(j);
        return v.outcome == Outcome::UndecidableAtHorizon ? kUndecidable : kDefinite;
    }
    j["power_report"] = to_json(power_symmetry_report(seq, v.certificate->symmetry, o.power, o.horizon));
    out << dump_json(j);
    return kDefinite;
}

int wtn_cmd(const Options &o, std::ostream &out)
{
    if (o.format != "json" && o.format != "csv")
        throw InputError("--format must be json or csv");
    CandidateRows variant;
    if (o.rows == "as-printed")
        variant = CandidateRows::AsPrinted;
    else if (o.rows == "first-power")
        variant = CandidateRows::FirstPower;
    else
        throw InputError("--rows must be as-printed or first-power");

    WtnSearchResult r;
    try
    {
        r = search(o.wtn);
    }
    catch (const PreconditionViolation &e)
    {
        throw InputError(e.what());
    }
    std::string csv = trace_csv(r);
    if (!o.csv_path.empty())
        write_file(o.csv_path, csv);
    if (o.format == "csv")
    {
        out << csv;
        return kDefinite;
    }
    Json j;
    j["N"] = o.wtn.N;
    j["M"] = o.wtn.M;
    j["restarts"] = o.wtn.restarts;
    j["seed"] = o.wtn.seed;
    j["budget"] = o.wtn.budget;
    j["result"] = to_json(r);
    Index n = o.candidate_dim > 0 ? o.candidate_dim : std::min(o.wtn.M + 1, o.wtn.N);
    if (n > o.wtn.N)
        throw InputError("--candidate-dim exceeds N");
    j["candidate"] = to_json(build_candidate_conjugation(r.best, n, variant));
    out << dump_json(j);
    return kDefinite;
}

int dump_matrix_cmd(const Options &o, std::ostream &out)
{
    auto seq = load(o.input);
    std::optional<Index> first;
    if (o.first_set)
        first = o.first;
    auto t = leading_truncation(seq, default_dim(seq, o.dim), first);
    std::string text = dump_json(matrix_to_json(t.entries));
    if (o.out_path.empty())
        out << text;
    else
        write_file(o.out_path, text);
    return kDefinite;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    Options o;
    CLI::App app{"Complex symmetric weighted shifts: decomposition, conjugations, classification"};
    app.name("shiftlab");
    app.require_subcommand(1, 1);

    auto add_input = [&](CLI::App *sub, bool required = true) {
        auto *opt = sub->add_option("file", o.input, "weight-sequence JSON file");
        if (required)
            opt->required();
    };
    auto add_horizon = [&](CLI::App *sub) {
        sub->add_option("--horizon", o.horizon, "indices examined")->check(CLI::Range(Index{1}, kMaxHorizon));
    };

    auto *classify_sub = app.add_subcommand("classify", "decide complex symmetry of the shift");
    add_input(classify_sub);
    add_horizon(classify_sub);
    classify_sub->add_option("--dump-matrix", o.dump_path, "write the certificate's conjugation matrix here");

    auto *decompose_sub = app.add_subcommand("decompose", "split the shift at its zero weights");
    add_input(decompose_sub);
    add_horizon(decompose_sub);

    auto *conj_sub = app.add_subcommand("conjugation", "build or fit a conjugation for a truncation");
    add_input(conj_sub);
    conj_sub->add_option("--dim", o.dim, "truncation dimension")->check(CLI::Range(Index{1}, Index{4096}));
    conj_sub->add_flag("--fit", o.fit, "fit numerically instead of using the flip");
    conj_sub->add_option("--restarts", o.restarts)->check(CLI::Range(Index{1}, Index{100000}));
    conj_sub->add_option("--seed", o.seed);

    auto *verify_sub = app.add_subcommand("verify", "check a conjugation against the truncation");
    add_input(verify_sub);
    verify_sub->add_option("--conjugation", o.conjugation_path, "matrix file")->required();
    verify_sub->add_option("--tol", o.tol, "exactness tolerance")->check(CLI::PositiveNumber);

    auto *analyze_sub = app.add_subcommand("analyze", "closedness, the zero-block example, or power symmetry");
    add_input(analyze_sub, false);
    add_horizon(analyze_sub);
    analyze_sub->add_flag("--closedness", o.closedness, "closedness of the square");
    analyze_sub->add_option("--dostawa", o.dostawa, "a=<rule> b=<rule>")->expected(2);
    analyze_sub->add_option("--power", o.power, "highest power checked")->check(CLI::Range(Index{1}, Index{64}));

    auto *wtn_sub = app.add_subcommand("wtn", "multistart search for the moment equations");
    wtn_sub->add_option("--N", o.wtn.N)->check(CLI::Range(Index{3}, Index{4096}));
    wtn_sub->add_option("--M", o.wtn.M)->check(CLI::Range(Index{1}, Index{4095}));
    wtn_sub->add_option("--restarts", o.wtn.restarts)->check(CLI::Range(Index{1}, Index{100000}));
    wtn_sub->add_option("--seed", o.wtn.seed);
    wtn_sub->add_option("--budget", o.wtn.budget, "sweeps per restart")->check(CLI::Range(Index{1}, Index{1000000}));
    wtn_sub->add_option("--csv", o.csv_path, "also write the trace CSV here");
    wtn_sub->add_option("--format", o.format, "json or csv");
    wtn_sub->add_option("--rows", o.rows, "candidate rows: as-printed or first-power");
    wtn_sub->add_option("--candidate-dim", o.candidate_dim)->check(CLI::Range(Index{1}, Index{4096}));

    auto *dump_sub = app.add_subcommand("dump-matrix", "write a truncation matrix");
    add_input(dump_sub);
    dump_sub->add_option("--dim", o.dim, "truncation dimension")->check(CLI::Range(Index{1}, Index{4096}));
    dump_sub->add_option("--first", o.first, "first basis index (bilateral)");
    dump_sub->add_option("--out", o.out_path, "output path (default stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return kFailure;
    }
    o.first_set = dump_sub->count("--first") > 0;

    try
    {
        if (*classify_sub)
            return classify_cmd(o, out);
        if (*decompose_sub)
            return decompose_cmd(o, out);
        if (*conj_sub)
            return conjugation_cmd(o, out);
        if (*verify_sub)
            return verify_cmd(o, out);
        if (*analyze_sub)
            return analyze_cmd(o, out);
        if (*wtn_sub)
            return wtn_cmd(o, out);
        return dump_matrix_cmd(o, out);
    }
    catch (const InputError &e)
    {
        err << "error: " << e.what() << "\n";
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << "\n";
    }
    catch (const std::exception &e)
    {
        err << "internal error: " << e.what() << "\n";
    }
    return kFailure;
}

} // namespace shiftlab::cli
