#pragma once

#include <string>

#include <json.hpp>

#include "shiftlab/analysis.hpp"
#include "shiftlab/decompose.hpp"
#include "shiftlab/wtn.hpp"

namespace shiftlab
{

using Json = nlohmann::ordered_json;

// Malformed input; the message names the line (when known) and the field.
class InputError : public Error
{
public:
    using Error::Error;
};

// Pretty-printed JSON with every floating-point value at 17 significant digits.
std::string dump_json(const Json &j);

WeightSequence parse_sequence(const std::string &text);
WeightSequence load_sequence(const std::string &path);
Json sequence_to_json(const WeightSequence &seq);

SequenceRule rule_from_json(const Json &j, const std::string &field = "rule");
Json rule_to_json(const SequenceRule &r);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix &m);
// {"dim": n, "entries": [[re, im], ...]} in row-major order.
Matrix matrix_from_json(const Json &j);
Matrix load_matrix(const std::string &path);

Json to_json(const ZeroSetReport &z);
Json to_json(const SeriesProbe &p);
Json to_json(const BlockDecomposition &d);
Json to_json(const PairingReport &p);
Json to_json(const SymmetryCertificate &c);
Json to_json(const ClassificationVerdict &v);
Json to_json(const ClosednessReport &r);
Json to_json(const DomainReport &r);
Json to_json(const DostawaInstance &d);
Json to_json(const PowerSymmetryReport &r);
Json to_json(const PolarConjugationReport &r);
Json to_json(const FitResult &r);
Json to_json(const WtnSearchResult &r);
Json to_json(const CandidateConjugation &c);

std::string read_file(const std::string &path);

} // namespace shiftlab
