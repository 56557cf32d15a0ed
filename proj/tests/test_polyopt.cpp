#include "doctest.h"

#include "noninfo/criteria.hpp"
#include "noninfo/polyopt.hpp"

#include <cmath>

using namespace noninfo;

TEST_SUITE("polyopt")
{
    TEST_CASE("Jeffreys system is solved to tolerance")
    {
        for (int n = 1; n <= 4; ++n)
        {
            const auto seq = solve_jeffreys_system(n);
            REQUIRE(seq.size() == 2 * n);
            CHECK(seq.values.back() == 1.0);
            const std::vector<double> free(seq.values.begin(), seq.values.end() - 1);
            for (double r : jeffreys_system_residual(n, free))
                CHECK(std::abs(r) < 1e-12);
        }
    }

    TEST_CASE("Jeffreys system solution maximizes the half-line criterion")
    {
        // the residuals are the gradient of log Phi_J in the canonical moments
        const int n = 3;
        const auto m = ModelSpec::hetero_poly_exp(n, 1.0);
        const auto d = jeffreys_design_exp(n, 1.0);
        const double best = log_phi_J_halfline(d, m);
        for (double shift : {-0.01, 0.01})
        {
            auto pts = d.points();
            pts[1] += shift;
            const auto other = make_design(pts, d.weights(), d.interval());
            CHECK(log_phi_J_halfline(other, m) < best);
        }
    }

    TEST_CASE("n = 1 reduces to the symmetric two-point design")
    {
        const auto seq = solve_jeffreys_system(1);
        CHECK(seq.values[0] == doctest::Approx(0.5));
        const auto d = jeffreys_design_exp(1, 2.0);
        REQUIRE(d.size() == 2);
        CHECK(d.points()[0] == doctest::Approx(0.0));
        CHECK(d.points()[1] == doctest::Approx(2.0));
        CHECK(d.weights()[0] == doctest::Approx(0.5));
    }

    TEST_CASE("Laguerre branch gives the closed form")
    {
        // quadratic on [0, 3], gamma = 2: b gamma = 6 exceeds the largest root 3 + sqrt 3 of L_2^(1)
        CHECK(laguerre_threshold(2) == doctest::Approx(3.0 + std::sqrt(3.0)));
        const auto d = bb_design_exp(2, 3.0, 2.0);
        REQUIRE(d.size() == 3);
        CHECK(d.points()[0] == 0.0);
        CHECK(std::abs(d.points()[1] - (3.0 - std::sqrt(3.0)) / 2.0) < 1e-12);
        CHECK(std::abs(d.points()[2] - (3.0 + std::sqrt(3.0)) / 2.0) < 1e-12);
        for (double w : d.weights())
            CHECK(w == doctest::Approx(1.0 / 3.0));
    }

    TEST_CASE("case (b) system and the q0 convention")
    {
        const auto seq = solve_bb_exp_system(3, 2.0);
        const std::vector<double> free(seq.values.begin(), seq.values.end() - 1);
        for (double r : bb_exp_system_residual(3, 2.0, free))
            CHECK(std::abs(r) < 1e-12);
        const auto d = bb_design_exp(3, 1.0, 2.0);
        REQUIRE(d.size() == 4);
        CHECK(d.points()[1] == doctest::Approx(0.2177).epsilon(5e-4));
        CHECK(d.points()[2] == doctest::Approx(0.6497).epsilon(5e-4));

        // the literal q0 = 0 variant solves a different system
        const auto alt = solve_bb_exp_system(3, 2.0, 0.0);
        CHECK(std::abs(alt.values[0] - seq.values[0]) > 1e-3);
    }

    TEST_CASE("case (b) at b gamma = 0 is the exact starting point")
    {
        const auto seq = solve_bb_exp_system(2, 0.0);
        CHECK(seq.values[0] == doctest::Approx(0.5));
        CHECK(seq.values[1] == doctest::Approx(2.0 / 3.0));
        CHECK(seq.values[2] == doctest::Approx(0.5));
    }

    TEST_CASE("Jacobi closed-form canonical moments")
    {
        const double g1 = 0.7, g2 = 1.9;
        const int n = 3;
        const auto seq = jacobi_canonical_moments(n, g1, g2);
        REQUIRE(seq.size() == 2 * n + 2);
        CHECK(seq.values.back() == 0.0);
        const auto d = make_uniform_design(jacobi_roots(n + 1, g1, g2), {-1.0, 1.0});
        const auto p = canonical_moments(d, 2 * n + 2);
        for (int i = 1; i <= 2 * n + 1; ++i)
            CHECK(std::abs(p.p(i) - seq.p(i)) < 1e-10);
        // equal parameters give a symmetric design, so every odd canonical moment is 1/2
        const auto sym = jacobi_canonical_moments(2, 1.3, 1.3);
        for (int i = 1; i <= 5; i += 2)
            CHECK(sym.p(i) == doctest::Approx(0.5));
        // hand-checked low-order value: p_1 = (g2 + n + 1) / (g1 + g2 + 2(n + 1))
        CHECK(seq.p(1) == doctest::Approx((1.9 + 4.0) / (2.6 + 8.0)));
    }

    TEST_CASE("Jacobi design")
    {
        const auto d = bb_design_jacobi(2, 1.0, 1.0);
        REQUIRE(d.size() == 3);
        CHECK(d.points()[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.points()[2] == doctest::Approx(std::sqrt(3.0 / 7.0)));
        CHECK_THROWS(bb_design_jacobi(2, 0.0, 1.0));
    }

    TEST_CASE("convergence failure carries the residual")
    {
        try
        {
            // far above the Laguerre threshold the interior system has no solution
            (void)solve_bb_exp_system(3, 1e300);
            FAIL("expected ConvergenceError");
        }
        catch (const ConvergenceError& e)
        {
            CHECK(e.residual() > 1e-6);
        }
    }

    TEST_CASE("gamma statistic")
    {
        CHECK(gamma_stat(ParamCoord{"t", 0.0, 4.0, false}) == 2.0);
    }
}
