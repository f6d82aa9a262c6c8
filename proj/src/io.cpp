#include "shiftlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace shiftlab
{

namespace
{

void emit(const Json &j, std::string &out, int depth)
{
    auto pad = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (j.type())
    {
    case Json::value_t::object: {
        if (j.empty())
        {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto &[key, value] : j.items())
        {
            if (!first)
                out += ",\n";
            first = false;
            pad(depth + 1);
            out += Json(key).dump();
            out += ": ";
            emit(value, out, depth + 1);
        }
        out += "\n";
        pad(depth);
        out += "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty())
        {
            out += "[]";
            return;
        }
        // short numeric arrays (complex pairs) stay on one line
        bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json &v) { return v.is_number(); });
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto &v : j)
        {
            if (!first)
                out += flat ? ", " : ",\n";
            first = false;
            if (!flat)
                pad(depth + 1);
            emit(v, out, depth + 1);
        }
        if (!flat)
        {
            out += "\n";
            pad(depth);
        }
        out += "]";
        return;
    }
    case Json::value_t::number_float: {
        double v = j.get<double>();
        if (!std::isfinite(v))
        {
            out += "null";
            return;
        }
        if (v == 0.0 && std::signbit(v))
        {
            out += "-0.0"; // "-0" would read back as the integer 0
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        return;
    }
    default:
        out += j.dump();
    }
}

struct Source
{
    const std::string &text;

    // Line of the first occurrence of "key", 0 when absent.
    std::size_t line_of(const std::string &key) const
    {
        auto at = text.find("\"" + key + "\"");
        if (at == std::string::npos)
            return 0;
        return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(at), '\n')) + 1;
    }

    [[noreturn]] void fail(const std::string &key, const std::string &field, const std::string &what) const
    {
        std::size_t line = line_of(key);
        std::string where = line ? "line " + std::to_string(line) + ", " : "";
        throw InputError(where + "field '" + field + "': " + what);
    }
};

Complex complex_from(const Json &j, const Source &src, const std::string &key, const std::string &field)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        src.fail(key, field, "expected a pair [re, im]");
    Complex z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z))
        src.fail(key, field, "value is not finite");
    return z;
}

ComplexVector complex_list(const Json &j, const Source &src, const std::string &key, const std::string &field)
{
    if (!j.is_array())
        src.fail(key, field, "expected a list of [re, im] pairs");
    ComplexVector out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(complex_from(j[i], src, key, field + "[" + std::to_string(i) + "]"));
    return out;
}

double number_from(const Json &j, const Source &src, const std::string &key, const std::string &field)
{
    if (!j.is_number())
        src.fail(key, field, "expected a number");
    return j.get<double>();
}

Index integer_from(const Json &j, const Source &src, const std::string &key, const std::string &field)
{
    if (!j.is_number_integer())
        src.fail(key, field, "expected an integer");
    return j.get<Index>();
}

void only_keys(const Json &obj, std::initializer_list<const char *> allowed, const Source &src, const std::string &prefix)
{
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : obj.items())
        if (!ok.count(key))
            src.fail(key, prefix + key, "unknown field");
}

SequenceRule rule_from(const Json &j, const Source &src, const std::string &key, const std::string &field)
{
    try
    {
        return rule_from_json(j, field);
    }
    catch (const InputError &e)
    {
        src.fail(key, field, e.what());
    }
    catch (const InvalidSequence &e)
    {
        src.fail(key, field, e.what());
    }
}

Pattern pattern_from(const Json &j, const Source &src)
{
    if (!j.is_object())
        src.fail("pattern", "pattern", "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string())
        src.fail("pattern", "pattern.kind", "expected one of none, periodic, block-with-zeros, tagged-growth");
    std::string kind = j["kind"];
    if (kind == "none")
    {
        only_keys(j, {"kind"}, src, "pattern.");
        return NoPattern{};
    }
    if (kind == "periodic")
    {
        only_keys(j, {"kind", "block"}, src, "pattern.");
        if (!j.contains("block"))
            src.fail("pattern", "pattern.block", "missing");
        return Periodic{complex_list(j["block"], src, "block", "pattern.block")};
    }
    if (kind == "block-with-zeros")
    {
        only_keys(j, {"kind", "block", "zeros", "amplitude"}, src, "pattern.");
        if (!j.contains("block"))
            src.fail("pattern", "pattern.block", "missing");
        ComplexVector block = complex_list(j["block"], src, "block", "pattern.block");
        Index zeros = j.contains("zeros") ? integer_from(j["zeros"], src, "zeros", "pattern.zeros") : 1;
        if (!j.contains("amplitude"))
            return BlockWithZeros{std::move(block), zeros, std::nullopt};
        return BlockWithZeros{std::move(block), zeros, rule_from(j["amplitude"], src, "amplitude", "pattern.amplitude")};
    }
    if (kind == "tagged-growth")
    {
        only_keys(j, {"kind", "class", "bound", "degree", "ratio", "scale", "rule", "index_shift"}, src, "pattern.");
        if (!j.contains("class") || !j["class"].is_string())
            src.fail("class", "pattern.class", "expected one of bounded, polynomial, geometric");
        std::string cls = j["class"];
        TaggedGrowth p;
        const char *param = nullptr;
        if (cls == "bounded")
        {
            p.growth.kind = GrowthClass::Kind::Bounded;
            param = "bound";
        }
        else if (cls == "polynomial")
        {
            p.growth.kind = GrowthClass::Kind::Polynomial;
            param = "degree";
        }
        else if (cls == "geometric")
        {
            p.growth.kind = GrowthClass::Kind::Geometric;
            param = "ratio";
        }
        else
            src.fail("class", "pattern.class", "unknown growth class '" + cls + "'");
        if (!j.contains(param))
            src.fail("pattern", std::string("pattern.") + param, "missing");
        p.growth.parameter = number_from(j[param], src, param, std::string("pattern.") + param);
        if (j.contains("scale"))
            p.growth.scale = number_from(j["scale"], src, "scale", "pattern.scale");
        if (j.contains("rule"))
            p.rule = rule_from(j["rule"], src, "rule", "pattern.rule");
        if (j.contains("index_shift"))
            p.index_shift = integer_from(j["index_shift"], src, "index_shift", "pattern.index_shift");
        return p;
    }
    src.fail("kind", "pattern.kind", "unknown pattern kind '" + kind + "'");
}

Json pattern_to_json(const Pattern &pattern)
{
    return std::visit(
        [](const auto &p) -> Json {
            using P = std::decay_t<decltype(p)>;
            Json j;
            auto list = [](const ComplexVector &v) {
                Json a = Json::array();
                for (const auto &z : v)
                    a.push_back(complex_to_json(z));
                return a;
            };
            if constexpr (std::is_same_v<P, NoPattern>)
                j["kind"] = "none";
            else if constexpr (std::is_same_v<P, Periodic>)
            {
                j["kind"] = "periodic";
                j["block"] = list(p.block);
            }
            else if constexpr (std::is_same_v<P, BlockWithZeros>)
            {
                j["kind"] = "block-with-zeros";
                j["block"] = list(p.block);
                j["zeros"] = p.zeros;
                if (p.amplitude)
                    j["amplitude"] = rule_to_json(*p.amplitude);
            }
            else
            {
                j["kind"] = "tagged-growth";
                switch (p.growth.kind)
                {
                case GrowthClass::Kind::Bounded:
                    j["class"] = "bounded";
                    j["bound"] = p.growth.parameter;
                    break;
                case GrowthClass::Kind::Polynomial:
                    j["class"] = "polynomial";
                    j["degree"] = p.growth.parameter;
                    break;
                case GrowthClass::Kind::Geometric:
                    j["class"] = "geometric";
                    j["ratio"] = p.growth.parameter;
                    break;
                }
                j["scale"] = p.growth.scale;
                if (p.rule)
                    j["rule"] = rule_to_json(*p.rule);
                j["index_shift"] = p.index_shift;
            }
            return j;
        },
        pattern);
}

Json index_list(const std::vector<Index> &v)
{
    Json a = Json::array();
    for (Index i : v)
        a.push_back(i);
    return a;
}

Json real_list(const std::vector<double> &v)
{
    Json a = Json::array();
    for (double x : v)
        a.push_back(x);
    return a;
}

Json complex_list_json(const ComplexVector &v)
{
    Json a = Json::array();
    for (const auto &z : v)
        a.push_back(complex_to_json(z));
    return a;
}

Json block_to_json(const Block &b)
{
    Json j;
    j["first_index"] = b.first_index;
    j["dim"] = b.dim();
    j["weights"] = complex_list_json(b.shift.weights());
    std::vector<double> m;
    for (const auto &w : b.shift.weights())
        m.push_back(std::abs(w));
    j["moduli"] = real_list(m);
    return j;
}

template <class T> Json optional_json(const std::optional<T> &v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

std::string dump_json(const Json &j)
{
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SequenceRule rule_from_json(const Json &j, const std::string &field)
{
    if (j.is_string())
        return SequenceRule::parse(j.get<std::string>());
    if (j.is_number())
        return SequenceRule::constant(j.get<double>());
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw InputError(field + ": expected a rule string or an object with a kind");
    std::string kind = j["kind"];
    auto num = [&](const char *key) {
        if (!j.contains(key) || !j[key].is_number())
            throw InputError(field + "." + key + ": expected a number");
        return j[key].get<double>();
    };
    if (kind == "constant")
        return SequenceRule::constant(num("value"));
    if (kind == "linear")
        return SequenceRule::linear();
    if (kind == "power")
        return SequenceRule::power(num("degree"));
    if (kind == "geometric")
        return SequenceRule::geometric(num("ratio"));
    if (kind == "reciprocal")
        return SequenceRule::reciprocal();
    if (kind == "custom")
    {
        if (!j.contains("values") || !j["values"].is_array())
            throw InputError(field + ".values: expected a list of numbers");
        ComplexVector v;
        for (const auto &x : j["values"])
        {
            if (!x.is_number())
                throw InputError(field + ".values: expected a list of numbers");
            v.emplace_back(x.get<double>(), 0.0);
        }
        return SequenceRule::custom(std::move(v));
    }
    throw InputError(field + ": unknown rule kind '" + kind + "'");
}

Json rule_to_json(const SequenceRule &r) { return r.to_string(); }

WeightSequence parse_sequence(const std::string &text)
{
    Json j;
    try
    {
        j = Json::parse(text);
    }
    catch (const Json::parse_error &e)
    {
        std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        auto line = std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n') + 1;
        auto nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
        std::size_t col = nl == std::string::npos ? byte + 1 : byte - nl;
        std::string what = e.what();
        auto cut = what.find("syntax error");
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         (cut == std::string::npos ? what : what.substr(cut)));
    }

    Source src{text};
    if (!j.is_object())
        throw InputError("line 1: the document must be an object");
    only_keys(j, {"shape", "window", "offset", "pattern", "window_length", "dim"}, src, "");
    if (!j.contains("shape") || !j["shape"].is_string())
        src.fail("shape", "shape", "expected one of finite, unilateral, bilateral");
    std::string shape_name = j["shape"];
    Shape shape;
    if (shape_name == "finite")
        shape = Shape::Finite;
    else if (shape_name == "unilateral")
        shape = Shape::Unilateral;
    else if (shape_name == "bilateral")
        shape = Shape::Bilateral;
    else
        src.fail("shape", "shape", "unknown shape '" + shape_name + "'");

    Pattern pattern = NoPattern{};
    if (j.contains("pattern"))
        pattern = pattern_from(j["pattern"], src);

    Index offset = 0;
    if (j.contains("offset"))
    {
        if (shape != Shape::Bilateral)
            src.fail("offset", "offset", "only bilateral sequences take an offset");
        offset = integer_from(j["offset"], src, "offset", "offset");
    }
    else if (shape == Shape::Bilateral && j.contains("window"))
        src.fail("shape", "offset", "bilateral windows need an offset (index of window[0])");

    try
    {
        if (!j.contains("window"))
        {
            if (std::holds_alternative<NoPattern>(pattern))
                src.fail("shape", "window", "missing, and no pattern to generate it from");
            Index len = kDefaultWindow;
            if (j.contains("window_length"))
                len = integer_from(j["window_length"], src, "window_length", "window_length");
            if (len < 1 || len > kMaxHorizon)
                src.fail("window_length", "window_length", "must lie in 1..1000000");
            if (shape == Shape::Bilateral && !j.contains("offset"))
                offset = -(len / 2);
            return WeightSequence::from_pattern(shape, pattern, len, offset);
        }
        if (j.contains("window_length"))
            src.fail("window_length", "window_length", "only used when the window is generated from the pattern");
        ComplexVector window = complex_list(j["window"], src, "window", "window");
        if (shape == Shape::Finite)
        {
            if (j.contains("dim"))
            {
                Index k = integer_from(j["dim"], src, "dim", "dim");
                if (k != static_cast<Index>(window.size()) + 1)
                    src.fail("dim", "dim", "finite(" + std::to_string(k) + ") needs exactly " + std::to_string(k - 1) +
                                               " weights");
            }
            if (!std::holds_alternative<NoPattern>(pattern))
                src.fail("pattern", "pattern", "finite sequences carry no pattern");
            return WeightSequence::finite(std::move(window));
        }
        if (j.contains("dim"))
            src.fail("dim", "dim", "only finite sequences take a dim");
        if (shape == Shape::Unilateral)
            return WeightSequence::unilateral(std::move(window), pattern);
        return WeightSequence::bilateral(std::move(window), offset, pattern);
    }
    catch (const InvalidSequence &e)
    {
        src.fail("window", "window", e.what());
    }
}

WeightSequence load_sequence(const std::string &path) { return parse_sequence(read_file(path)); }

Json sequence_to_json(const WeightSequence &seq)
{
    Json j;
    j["shape"] = to_string(seq.shape());
    if (seq.shape() == Shape::Finite)
        j["dim"] = seq.dim();
    j["window"] = complex_list_json(seq.window());
    if (seq.shape() == Shape::Bilateral)
        j["offset"] = seq.window_first();
    if (seq.has_pattern())
        j["pattern"] = pattern_to_json(seq.pattern());
    return j;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix &m)
{
    Json j;
    j["dim"] = m.rows();
    Json entries = Json::array();
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            entries.push_back(complex_to_json(m(r, c)));
    j["entries"] = std::move(entries);
    return j;
}

Matrix matrix_from_json(const Json &j)
{
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer() || !j.contains("entries") ||
        !j["entries"].is_array())
        throw InputError("matrix: expected {\"dim\": n, \"entries\": [[re, im], ...]}");
    Index n = j["dim"].get<Index>();
    if (n < 0 || static_cast<Index>(j["entries"].size()) != n * n)
        throw InputError("matrix: entries must hold dim*dim pairs");
    Matrix m(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
        {
            const auto &e = j["entries"][static_cast<std::size_t>(r * n + c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw InputError("matrix: entry " + std::to_string(r * n + c) + " is not a pair [re, im]");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

Matrix load_matrix(const std::string &path)
{
    std::string text = read_file(path);
    try
    {
        return matrix_from_json(Json::parse(text));
    }
    catch (const Json::parse_error &e)
    {
        throw InputError(path + ": " + e.what());
    }
}

Json to_json(const ZeroSetReport &z)
{
    Json j;
    j["indices"] = index_list(z.indices);
    j["certainty"] = to_string(z.certainty);
    j["scanned_from"] = z.scanned_from;
    j["scanned_to"] = z.scanned_to;
    j["total"] = z.total ? Json(*z.total) : Json(nullptr);
    return j;
}

Json to_json(const SeriesProbe &p)
{
    Json j;
    j["verdict"] = to_string(p.verdict);
    j["basis"] = p.basis == EvidenceBasis::Symbolic ? "symbolic-from-growth-class" : "numeric-window-only";
    j["terms"] = p.partial_sums.size();
    j["last_partial_sum"] = p.partial_sums.empty() ? 0.0 : p.partial_sums.back();
    j["partial_sums"] = real_list(p.partial_sums);
    return j;
}

Json to_json(const BlockDecomposition &d)
{
    Json j;
    j["shape"] = to_string(d.shape);
    j["zero_set"] = to_json(d.zeros);
    Json blocks = Json::array();
    for (const auto &b : d.blocks)
        blocks.push_back(block_to_json(b));
    j["blocks"] = std::move(blocks);
    j["zero_singletons"] = index_list(d.zero_singletons);
    if (d.tail)
    {
        Json t;
        t["first_index"] = d.tail_first;
        t["window"] = complex_list_json(d.tail->window());
        j["tail"] = std::move(t);
    }
    else
        j["tail"] = nullptr;
    j["tail_decided"] = d.tail.has_value() || d.shape == Shape::Finite;
    j["leading_run"] = d.leading_run ? block_to_json(*d.leading_run) : Json(nullptr);
    j["open_run"] = d.open_run ? block_to_json(*d.open_run) : Json(nullptr);
    return j;
}

Json to_json(const PairingReport &p)
{
    Json j;
    j["fully_matched"] = p.fully_matched();
    j["unmatched_count"] = p.unmatched_count();
    Json groups = Json::array();
    for (const auto &g : p.groups)
    {
        Json gj;
        gj["order"] = g.order;
        gj["size"] = g.size;
        gj["self_palindromic"] = g.self_palindromic;
        Json pairs = Json::array();
        for (auto [a, b] : g.paired)
            pairs.push_back(Json::array({a, b}));
        gj["paired"] = std::move(pairs);
        gj["unmatched"] = g.unmatched;
        groups.push_back(std::move(gj));
    }
    j["groups"] = std::move(groups);
    return j;
}

Json to_json(const SymmetryCertificate &c)
{
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["residual"] = c.residual;
    j["basis"] = index_list(c.basis);
    j["u_factor"] = matrix_to_json(c.conjugation.u_factor());
    return j;
}

Json to_json(const ClassificationVerdict &v)
{
    Json j;
    j["outcome"] = to_string(v.outcome);
    j["case"] = v.case_label;
    Json meta = Json::object();
    for (const auto &[k, val] : v.metadata)
        meta[k] = val;
    j["metadata"] = std::move(meta);
    if (v.certificate)
    {
        const auto &c = *v.certificate;
        Json cj;
        cj["kind"] = c.kind;
        cj["offset"] = optional_json(c.offset);
        cj["mirror_at"] = optional_json(c.mirror_at);
        Json blocks = Json::array();
        for (const auto &b : c.blocks)
            blocks.push_back(block_to_json(b));
        cj["blocks"] = std::move(blocks);
        cj["pairing"] = to_json(c.pairing);
        cj["symmetry"] = to_json(c.symmetry);
        j["certificate"] = std::move(cj);
    }
    else
        j["certificate"] = nullptr;
    if (v.witness)
    {
        const auto &w = *v.witness;
        Json wj;
        wj["kind"] = w.kind;
        wj["detail"] = w.detail;
        wj["index"] = optional_json(w.index);
        Json tuples = Json::array();
        for (const auto &t : w.tuples)
            tuples.push_back(real_list(t));
        wj["tuples"] = std::move(tuples);
        j["witness"] = std::move(wj);
    }
    else
        j["witness"] = nullptr;
    j["reason"] = v.reason;
    return j;
}

Json to_json(const ClosednessReport &r)
{
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["basis"] = r.basis == EvidenceBasis::Symbolic ? "symbolic" : "numeric";
    j["sup_on_window"] = r.sup_on_window;
    j["indices"] = index_list(r.indices);
    j["ratios"] = real_list(r.ratios);
    return j;
}

Json to_json(const DomainReport &r)
{
    Json j;
    j["power"] = r.power;
    j["probe"] = to_json(r.probe);
    return j;
}

Json to_json(const DostawaInstance &d)
{
    Json j;
    j["a"] = rule_to_json(d.a);
    j["b"] = rule_to_json(d.b);
    j["valid"] = d.validity.valid();
    Json v;
    v["b_square_summable"] = d.validity.b_square_summable;
    v["b_nonvanishing"] = d.validity.b_nonvanishing;
    v["ab_not_square_summable"] = d.validity.ab_not_square_summable;
    j["validity"] = std::move(v);
    Json w;
    w["rule"] = rule_to_json(d.witness.rule);
    w["period"] = d.witness.period;
    w["offset"] = d.witness.offset;
    j["witness"] = std::move(w);
    j["sequence"] = sequence_to_json(d.weights);
    return j;
}

Json to_json(const PowerSymmetryReport &r)
{
    Json j;
    j["k_max"] = r.k_max;
    j["adjoint_power_inequality_expected"] = optional_json(r.adjoint_power_inequality_expected);
    Json entries = Json::array();
    for (const auto &e : r.entries)
    {
        Json ej;
        ej["power"] = e.power;
        ej["residual"] = e.residual;
        ej["interior_residual"] = e.interior_residual;
        ej["closedness"] = e.closedness ? Json(to_string(*e.closedness)) : Json(nullptr);
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    return j;
}

Json to_json(const PolarConjugationReport &r)
{
    Json j;
    j["commutation_residual"] = r.commutation_residual;
    j["composition_residual"] = r.composition_residual;
    j["square_defect"] = r.square_defect;
    j["reconstruction_residual"] = r.polar.reconstruction_residual;
    j["initial_space_dim"] = r.polar.initial_space_dim;
    j["final_space_dim"] = r.polar.final_space_dim;
    j["closed_form"] = r.polar.closed_form;
    j["partial_conjugation"] = matrix_to_json(r.j.factor);
    return j;
}

Json to_json(const FitResult &r)
{
    Json j;
    j["best_restart"] = r.best_restart;
    j["restart_residuals"] = real_list(r.restart_residuals);
    j["certificate"] = to_json(r.best);
    return j;
}

Json to_json(const WtnSearchResult &r)
{
    Json j;
    j["best_restart"] = r.best_restart;
    j["feasible_at_truncation"] = r.feasible_at_truncation;
    j["objective"] = r.best_residuals.objective;
    j["divergence_proxy"] = r.best_residuals.divergence_proxy;
    j["residuals"] = real_list(r.best_residuals.r);
    j["alpha"] = real_list(r.best.alpha);
    j["lambda"] = real_list(r.best.lam);
    Json trace = Json::array();
    for (const auto &p : r.trace)
    {
        Json pj;
        pj["restart"] = p.restart;
        pj["iteration"] = p.iteration;
        pj["objective"] = p.objective;
        pj["best_so_far"] = p.best_so_far;
        pj["divergence_proxy"] = p.divergence_proxy;
        trace.push_back(std::move(pj));
    }
    j["trace"] = std::move(trace);
    return j;
}

Json to_json(const CandidateConjugation &c)
{
    Json j;
    j["variant"] = to_string(c.variant);
    j["max_gram_defect"] = c.max_gram_defect;
    j["involution_defect"] = c.involution_defect;
    Json rows = Json::array();
    for (const auto &r : c.rows)
        rows.push_back(real_list(r));
    j["rows"] = std::move(rows);
    Json gram = Json::array();
    for (const auto &r : c.gram)
        gram.push_back(real_list(r));
    j["gram"] = std::move(gram);
    return j;
}

} // namespace shiftlab
