#include <doctest.h>

#include "shiftlab/random.hpp"
#include "shiftlab/wtn.hpp"

using namespace shiftlab;

TEST_CASE("moment residual by hand")
{
    double eps = 1e-3;
    double rest = std::sqrt((1.0 - eps * eps) / 2.0);
    auto s = make_wtn_state({eps, rest, rest}, {1.0, 1.0, 1.0}, 1);
    auto r = residuals(s);
    REQUIRE(r.r.size() == 1);
    CHECK(r.r[0] == doctest::Approx(-eps * eps).epsilon(1e-9));
    CHECK(r.objective == doctest::Approx(eps * eps * eps * eps).epsilon(1e-8));
    CHECK(r.divergence_proxy == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("states must be positive")
{
    CHECK_THROWS_AS(make_wtn_state({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, 1), PreconditionViolation);
    CHECK_THROWS_AS(make_wtn_state({1.0, -1.0, 1.0}, {1.0, 1.0, 1.0}, 1), PreconditionViolation);
    CHECK_THROWS_AS(make_wtn_state({1.0, 1.0}, {1.0, 1.0, 1.0}, 1), PreconditionViolation);
    CHECK_THROWS_AS(make_wtn_state({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 3), PreconditionViolation);
    auto s = make_wtn_state({3.0, 4.0, 12.0}, {1.0, 1.0, 1.0}, 1);
    CHECK(s.alpha[0] == doctest::Approx(3.0 / 13.0).epsilon(1e-15));
}

TEST_CASE("scaling lambda by c scales r_m by c^(2m)")
{
    Rng rng(4);
    std::vector<double> alpha, lam;
    for (int k = 0; k < 10; ++k)
    {
        alpha.push_back(rng.uniform(0.2, 1.0));
        lam.push_back(rng.uniform(0.5, 1.5));
    }
    auto base = residuals(make_wtn_state(alpha, lam, 5));
    double c = 1.7;
    for (double &l : lam)
        l *= c;
    auto scaled = residuals(make_wtn_state(alpha, lam, 5));
    for (int m = 1; m <= 5; ++m)
        CHECK(scaled.r[static_cast<std::size_t>(m - 1)] ==
              doctest::Approx(base.r[static_cast<std::size_t>(m - 1)] * std::pow(c, 2 * m)).epsilon(1e-12));
}

TEST_CASE("unrepresentable products raise Overflow")
{
    auto s = make_wtn_state({1.0, 1.0, 1.0}, {1e200, 1e200, 1e200}, 2);
    CHECK_THROWS_AS(residuals(s), Overflow);
}

TEST_CASE("single equation is feasible")
{
    WtnConfig cfg;
    cfg.N = 8;
    cfg.M = 1;
    cfg.seed = 42;
    auto a = search(cfg);
    CHECK(a.feasible_at_truncation);
    CHECK(a.best_residuals.objective < 1e-10);
    // plugging the reported state back in reproduces the objective
    CHECK(residuals(a.best).objective == a.best_residuals.objective);
    double norm = 0.0;
    for (double x : a.best.alpha)
        norm += x * x;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

    auto b = search(cfg);
    CHECK(trace_csv(a) == trace_csv(b));
}

TEST_CASE("search trace")
{
    WtnConfig cfg;
    cfg.N = 12;
    cfg.M = 4;
    cfg.restarts = 5;
    cfg.budget = 40;
    cfg.seed = 9;
    auto r = search(cfg);
    REQUIRE_FALSE(r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i)
    {
        CHECK(r.trace[i].best_so_far <= r.trace[i - 1].best_so_far);
        CHECK(r.trace[i].restart >= r.trace[i - 1].restart);
    }
    CHECK(r.trace.back().best_so_far == r.best_residuals.objective);

    std::string csv = trace_csv(r);
    CHECK(csv.rfind("restart,iteration,objective,best_so_far,divergence_proxy\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.trace.size()) + 1);

    cfg.seed = 10;
    CHECK(trace_csv(search(cfg)) != csv);
}

TEST_CASE("search preconditions")
{
    WtnConfig cfg;
    cfg.N = 2;
    CHECK_THROWS_AS(search(cfg), PreconditionViolation);
    cfg.N = 5;
    cfg.M = 5;
    CHECK_THROWS_AS(search(cfg), PreconditionViolation);
    cfg.M = 0;
    CHECK_THROWS_AS(search(cfg), PreconditionViolation);
}

TEST_CASE("candidate rows")
{
    Rng rng(17);
    std::vector<double> alpha, lam;
    for (int k = 0; k < 9; ++k)
    {
        alpha.push_back(rng.uniform(0.1, 1.0));
        lam.push_back(rng.uniform(0.5, 2.0));
    }
    auto s = make_wtn_state(alpha, lam, 4);
    auto printed = build_candidate_conjugation(s, 5);
    REQUIRE(printed.rows.size() == 5);
    CHECK(printed.gram[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    // as printed: coefficient of e_k in C e_2 is lambda_k^2 / lambda_1^2 alpha_{k+1}^2
    CHECK(printed.rows[1][2] == doctest::Approx(lam[2] * lam[2] / (lam[0] * lam[0]) * s.alpha[3] * s.alpha[3]));
    CHECK(printed.rows[1][8] == 0.0);

    // first-power rows have ||C e_{1+m}||^2 - 1 = r_m / (lambda_1^2 ... lambda_m^2)
    auto first = build_candidate_conjugation(s, 5, CandidateRows::FirstPower);
    auto r = residuals(s);
    double p = 1.0;
    for (int m = 1; m <= 4; ++m)
    {
        p *= lam[static_cast<std::size_t>(m - 1)] * lam[static_cast<std::size_t>(m - 1)];
        CHECK(first.gram[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] - 1.0 ==
              doctest::Approx(r.r[static_cast<std::size_t>(m - 1)] / p).epsilon(1e-10));
    }

    // Gram defect recomputed by hand
    double worst = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
        {
            double g = 0.0;
            for (std::size_t k = 0; k < 9; ++k)
                g += first.rows[i][k] * first.rows[j][k];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    CHECK(first.max_gram_defect == doctest::Approx(worst).epsilon(1e-14));

    CHECK_THROWS_AS(build_candidate_conjugation(s, 10), PreconditionViolation);
    CHECK(to_string(CandidateRows::AsPrinted) == "as-printed");
}

TEST_CASE("candidate rows for a feasible single-equation state")
{
    WtnConfig cfg;
    cfg.N = 8;
    cfg.M = 1;
    cfg.seed = 42;
    auto r = search(cfg);
    auto c = build_candidate_conjugation(r.best, 2, CandidateRows::FirstPower);
    CHECK(c.gram[1][1] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::isfinite(c.gram[0][1]));
    CHECK(std::isfinite(c.involution_defect));
}
