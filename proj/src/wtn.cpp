#include "shiftlab/wtn.hpp"

#include <cfloat>
#include <cstdio>
#include <limits>

#include "shiftlab/parallel.hpp"
#include "shiftlab/random.hpp"

namespace shiftlab
{

namespace
{

const double kLogMax = std::log(DBL_MAX);

void check_state(const WtnState &s)
{
    if (s.alpha.size() != s.lam.size())
        throw PreconditionViolation("alpha and lambda must have the same length");
    if (s.N() < 2 || s.M < 1 || s.M > s.N() - 1)
        throw PreconditionViolation("need N >= 2 and 1 <= M <= N-1");
    for (Index k = 0; k < s.N(); ++k)
    {
        double a = s.alpha[static_cast<std::size_t>(k)];
        double l = s.lam[static_cast<std::size_t>(k)];
        if (!(a > 0.0) || !(l > 0.0) || !std::isfinite(a) || !std::isfinite(l))
            throw PreconditionViolation("alpha and lambda must be positive and finite");
    }
}

// prefix[j] = sum_{i <= j} 2 log lambda_i  (1-based, prefix[0] = 0)
std::vector<double> log_square_prefix(const std::vector<double> &lam)
{
    std::vector<double> prefix(lam.size() + 1, 0.0);
    for (std::size_t i = 0; i < lam.size(); ++i)
        prefix[i + 1] = prefix[i] + 2.0 * std::log(lam[i]);
    return prefix;
}

struct Coordinates
{
    std::vector<double> log_alpha;
    std::vector<double> log_lam;
};

void project(Coordinates &x)
{
    double hi = *std::max_element(x.log_alpha.begin(), x.log_alpha.end());
    double acc = 0.0;
    for (double v : x.log_alpha)
        acc += std::exp(2.0 * (v - hi));
    double shift = hi + 0.5 * std::log(acc);
    for (double &v : x.log_alpha)
        v -= shift;
}

WtnState to_state(const Coordinates &x, Index M)
{
    WtnState s;
    s.M = M;
    for (double v : x.log_alpha)
        s.alpha.push_back(std::exp(v));
    for (double v : x.log_lam)
        s.lam.push_back(std::exp(v));
    return s;
}

double objective_of(const Coordinates &x, Index M, double *proxy = nullptr)
{
    try
    {
        auto s = to_state(x, M);
        auto r = residuals(s);
        if (proxy)
            *proxy = r.divergence_proxy;
        return r.objective;
    }
    catch (const Overflow &)
    {
        return std::numeric_limits<double>::infinity();
    }
    catch (const PreconditionViolation &)
    {
        return std::numeric_limits<double>::infinity();
    }
}

struct RestartRun
{
    Coordinates best;
    double best_objective = std::numeric_limits<double>::infinity();
    std::vector<double> objective;
    std::vector<double> proxy;
};

RestartRun run_restart(const WtnConfig &cfg, Rng rng)
{
    const Index n = cfg.N;
    Coordinates x;
    const double lo = std::log(1e-2), hi = std::log(1e2);
    for (Index k = 0; k < n; ++k)
        x.log_alpha.push_back(rng.uniform(lo, hi));
    for (Index k = 0; k < n; ++k)
        x.log_lam.push_back(rng.uniform(lo, hi));
    project(x);

    RestartRun run;
    double proxy = 0.0;
    double f = objective_of(x, cfg.M, &proxy);
    std::vector<double> step(static_cast<std::size_t>(2 * n), 0.5);

    for (Index it = 0; it < cfg.budget; ++it)
    {
        for (Index j = 0; j < 2 * n; ++j)
        {
            double &s = step[static_cast<std::size_t>(j)];
            bool on_alpha = j < n;
            double &coord = on_alpha ? x.log_alpha[static_cast<std::size_t>(j)]
                                     : x.log_lam[static_cast<std::size_t>(j - n)];
            bool improved = false;
            for (double dir : {1.0, -1.0})
            {
                Coordinates trial = x;
                double &c = on_alpha ? trial.log_alpha[static_cast<std::size_t>(j)]
                                     : trial.log_lam[static_cast<std::size_t>(j - n)];
                c = coord + dir * s;
                if (on_alpha)
                    project(trial);
                double trial_proxy = 0.0;
                double ft = objective_of(trial, cfg.M, &trial_proxy);
                if (ft < f)
                {
                    x = std::move(trial);
                    f = ft;
                    proxy = trial_proxy;
                    s *= 1.2 * dir; // keep moving the way that worked
                    improved = true;
                    break;
                }
            }
            if (!improved)
                s *= 0.5;
        }
        run.objective.push_back(f);
        run.proxy.push_back(proxy);
        if (f < run.best_objective)
        {
            run.best_objective = f;
            run.best = x;
        }
        if (f < 1e-28)
            break;
    }
    if (run.objective.empty())
    {
        run.best = x;
        run.best_objective = f;
    }
    return run;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

WtnState make_wtn_state(std::vector<double> alpha, std::vector<double> lam, Index M)
{
    WtnState s{std::move(alpha), std::move(lam), M};
    check_state(s);
    double norm = 0.0;
    for (double a : s.alpha)
        norm += a * a;
    norm = std::sqrt(norm);
    for (double &a : s.alpha)
        a /= norm;
    return s;
}

WtnResiduals residuals(const WtnState &state)
{
    check_state(state);
    const Index n = state.N();
    auto prefix = log_square_prefix(state.lam);
    std::vector<double> log_a2;
    for (double a : state.alpha)
        log_a2.push_back(2.0 * std::log(a));

    WtnResiduals out;
    std::vector<double> terms;
    for (Index m = 1; m <= state.M; ++m)
    {
        terms.clear();
        for (Index k = 1; k <= n - m; ++k)
            terms.push_back(prefix[static_cast<std::size_t>(k + m - 1)] - prefix[static_cast<std::size_t>(k - 1)] +
                            log_a2[static_cast<std::size_t>(k + m - 1)]);
        double top = *std::max_element(terms.begin(), terms.end());
        double acc = 0.0;
        for (double t : terms)
            acc += std::exp(t - top);
        double log_sum = top + std::log(acc);
        double log_rhs = prefix[static_cast<std::size_t>(m)];
        if (log_sum > kLogMax || log_rhs > kLogMax)
            throw Overflow("moment equation " + std::to_string(m) + " exceeds the double range");
        double r = std::exp(log_sum) - std::exp(log_rhs);
        out.r.push_back(r);
        out.objective += r * r;
    }
    for (Index k = 0; k < n; ++k)
    {
        double a = state.alpha[static_cast<std::size_t>(k)];
        double l = state.lam[static_cast<std::size_t>(k)];
        out.divergence_proxy += a * a * l * l;
    }
    if (!std::isfinite(out.objective) || !std::isfinite(out.divergence_proxy))
        throw Overflow("objective exceeds the double range");
    return out;
}

WtnSearchResult search(const WtnConfig &cfg)
{
    if (cfg.N < 3 || cfg.M < 1 || cfg.M > cfg.N - 1)
        throw PreconditionViolation("search needs N >= 3 and 1 <= M <= N-1");
    if (cfg.restarts < 1 || cfg.budget < 1)
        throw PreconditionViolation("search needs at least one restart and one sweep");

    std::vector<RestartRun> runs(static_cast<std::size_t>(cfg.restarts));
    parallel_for(cfg.restarts, [&](Index r) {
        runs[static_cast<std::size_t>(r)] = run_restart(cfg, Rng::stream(cfg.seed, static_cast<std::uint64_t>(r)));
    });

    WtnSearchResult out;
    double best = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < cfg.restarts; ++r)
    {
        const auto &run = runs[static_cast<std::size_t>(r)];
        for (std::size_t i = 0; i < run.objective.size(); ++i)
        {
            best = std::min(best, run.objective[i]);
            out.trace.push_back({r, static_cast<Index>(i), run.objective[i], best, run.proxy[i]});
        }
        if (run.best_objective < runs[static_cast<std::size_t>(out.best_restart)].best_objective)
            out.best_restart = r;
    }
    out.best = to_state(runs[static_cast<std::size_t>(out.best_restart)].best, cfg.M);
    out.best_residuals = residuals(out.best);
    out.feasible_at_truncation = out.best_residuals.objective < 1e-10;
    return out;
}

std::string trace_csv(const WtnSearchResult &result)
{
    std::string csv = "restart,iteration,objective,best_so_far,divergence_proxy\n";
    for (const auto &p : result.trace)
        csv += std::to_string(p.restart) + "," + std::to_string(p.iteration) + "," + format_double(p.objective) + "," +
               format_double(p.best_so_far) + "," + format_double(p.divergence_proxy) + "\n";
    return csv;
}

CandidateConjugation build_candidate_conjugation(const WtnState &state, Index n, CandidateRows variant)
{
    check_state(state);
    const Index big = state.N();
    if (n < 1 || n > big)
        throw PreconditionViolation("candidate dimension must satisfy 1 <= n <= N");

    auto prefix = log_square_prefix(state.lam);
    CandidateConjugation out;
    out.variant = variant;
    out.rows.push_back(state.alpha);
    const double power = variant == CandidateRows::AsPrinted ? 1.0 : 0.5;
    for (Index m = 1; m < n; ++m)
    {
        std::vector<double> row(static_cast<std::size_t>(big), 0.0);
        for (Index k = 1; k <= big - m; ++k)
        {
            double log_ratio = prefix[static_cast<std::size_t>(k + m - 1)] - prefix[static_cast<std::size_t>(k - 1)] -
                               prefix[static_cast<std::size_t>(m)];
            double a = state.alpha[static_cast<std::size_t>(k + m - 1)];
            row[static_cast<std::size_t>(k - 1)] = std::exp(power * log_ratio) * std::pow(a, 2.0 * power);
        }
        out.rows.push_back(std::move(row));
    }

    out.gram.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
        {
            double g = 0.0;
            for (Index k = 0; k < big; ++k)
                g += out.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                     out.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            out.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g;
            out.max_gram_defect = std::max(out.max_gram_defect, std::abs(g - (i == j ? 1.0 : 0.0)));
        }

    // C is antilinear with a real matrix, so C^2 has the matrix V V
    double acc = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
        {
            double v = 0.0;
            for (Index k = 0; k < n; ++k)
                v += out.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                     out.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            double d = v - (i == j ? 1.0 : 0.0);
            acc += d * d;
        }
    out.involution_defect = std::sqrt(acc);
    return out;
}

std::string to_string(CandidateRows v)
{
    return v == CandidateRows::AsPrinted ? "as-printed" : "first-power";
}

} // namespace shiftlab
