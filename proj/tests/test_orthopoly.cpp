#include "doctest.h"

#include "noninfo/orthopoly.hpp"
#include "noninfo/polyopt.hpp"

#include <cmath>
#include <numeric>

using namespace noninfo;

namespace
{

void check_all(const std::vector<double>& got, const std::vector<double>& want, double tol)
{
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) < tol);
}

} // namespace

TEST_SUITE("orthopoly")
{
    // reference roots frozen from scipy.special.roots_genlaguerre / roots_jacobi
    TEST_CASE("Laguerre roots")
    {
        check_all(laguerre_roots(2, 1.0, 1.0), {1.2679491924311228, 4.732050807568878}, 1e-12);
        check_all(laguerre_roots(3, 1.0, 1.0), {0.9358222275240878, 3.305407289332279, 7.758770483143634}, 1e-12);
        check_all(laguerre_roots(4, 0.5, 1.0),
                  {0.5235260767382691, 2.1566487632690943, 5.137387546176711, 10.182437613815926},
                  1e-11);
        // scaling divides the roots
        check_all(laguerre_roots(2, 1.0, 2.0), {1.2679491924311228 / 2, 4.732050807568878 / 2}, 1e-12);
    }

    TEST_CASE("Jacobi roots")
    {
        check_all(jacobi_roots(3, 0.5, 1.5), {-0.5379862043520485, 0.15282886386478045, 0.760157340487268}, 1e-12);
        check_all(jacobi_roots(4, 2.0, 0.3),
                  {-0.8713944917211827, -0.47473812990443687, 0.07447664104782555, 0.6114618058205126},
                  1e-12);
        check_all(jacobi_roots(2, 1.0, 1.0), {-std::sqrt(0.2), std::sqrt(0.2)}, 1e-13);
    }

    TEST_CASE("polynomial values vanish at the roots")
    {
        for (double r : jacobi_roots(5, 0.7, 2.2))
            CHECK(std::abs(jacobi_value(5, 0.7, 2.2, r)) < 1e-10);
        for (double r : laguerre_roots(5, 1.0, 1.0))
            CHECK(std::abs(laguerre_value(5, 1.0, r)) < 1e-8);
        CHECK(jacobi_value(3, 0.5, 1.5, 0.3) == doctest::Approx(-0.39725000000000016));
        CHECK(laguerre_value(4, 0.5, 1.7) == doctest::Approx(-0.6526833333333335));
    }

    TEST_CASE("Gauss-Legendre integrates polynomials exactly")
    {
        const auto g = gauss_legendre(6, 0.0, 2.0);
        for (int deg = 0; deg <= 11; ++deg)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i)
                s += g.weights[i] * std::pow(g.nodes[i], deg);
            CHECK(s == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-13));
        }
        CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(2.0));
    }

    TEST_CASE("discrete recurrence reproduces a discrete measure")
    {
        const std::vector<double> x{0.1, 0.4, 0.8}, w{0.2, 0.5, 0.3};
        const auto rec = discrete_recurrence(x, w, 3, 1e-14, 1.0);
        const auto g = gauss_from_recurrence(rec, 3);
        check_all(g.nodes, x, 1e-12);
        check_all(g.weights, w, 1e-12);
    }

    TEST_CASE("invalid arguments")
    {
        CHECK_THROWS(laguerre_roots(0, 1.0, 1.0));
        CHECK_THROWS(laguerre_roots(2, 1.0, 0.0));
        CHECK_THROWS(jacobi_roots(2, -1.5, 0.0));
    }
}
