#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/types.hpp"

namespace shiftlab
{

// Positive alpha_1..alpha_N, lambda_1..lambda_N with |alpha| = 1, and the number M of
// moment equations enforced.
struct WtnState
{
    std::vector<double> alpha;
    std::vector<double> lam;
    Index M = 1;

    Index N() const noexcept { return static_cast<Index>(alpha.size()); }
};

// Fills alpha and lam after normalising alpha; throws PreconditionViolation on
// non-positive entries, mismatched lengths or M outside 1..N-1.
WtnState make_wtn_state(std::vector<double> alpha, std::vector<double> lam, Index M);

struct WtnResiduals
{
    // r_m = sum_{k=1}^{N-m} lambda_k^2 ... lambda_{k+m-1}^2 alpha_{k+m}^2 - lambda_1^2 ... lambda_m^2
    std::vector<double> r;
    double objective = 0.0;        // sum r_m^2
    double divergence_proxy = 0.0; // sum alpha_k^2 lambda_k^2
};

// Products are accumulated in log space; throws Overflow when a result is not representable.
WtnResiduals residuals(const WtnState &state);

enum class StepRule
{
    CoordinateDescent
};

struct WtnConfig
{
    Index N = 8;
    Index M = 1;
    Index restarts = 8;
    std::uint64_t seed = 0;
    Index budget = 200; // sweeps per restart
    StepRule step_rule = StepRule::CoordinateDescent;
};

struct WtnTracePoint
{
    Index restart = 0;
    Index iteration = 0;
    double objective = 0.0;    // current iterate of this restart
    double best_so_far = 0.0;  // over every earlier point in restart-index order
    double divergence_proxy = 0.0;
};

struct WtnSearchResult
{
    WtnState best;
    WtnResiduals best_residuals;
    Index best_restart = 0;
    bool feasible_at_truncation = false; // objective < 1e-10
    std::vector<WtnTracePoint> trace;
};

WtnSearchResult search(const WtnConfig &config);

std::string trace_csv(const WtnSearchResult &result);

enum class CandidateRows
{
    AsPrinted,  // coefficient lambda_k^2..lambda_{k+m-1}^2 / (lambda_1^2..lambda_m^2) alpha_{k+m}^2
    FirstPower  // coefficient lambda_k..lambda_{k+m-1} / (lambda_1..lambda_m) alpha_{k+m}
};

struct CandidateConjugation
{
    // rows[i] = C e_{i+1} expanded in e_1..e_N
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<double>> gram; // <C e_i, C e_j>
    double max_gram_defect = 0.0;          // max |gram_ij - delta_ij|
    double involution_defect = 0.0;        // || V_n V_n - I ||_F on the n x n truncation
    CandidateRows variant = CandidateRows::AsPrinted;
};

CandidateConjugation build_candidate_conjugation(const WtnState &state, Index n,
                                                 CandidateRows variant = CandidateRows::AsPrinted);

std::string to_string(CandidateRows v);

} // namespace shiftlab
