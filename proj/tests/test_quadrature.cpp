#include "doctest.h"

#include "noninfo/models.hpp"
#include "noninfo/quadrature.hpp"

#include <cmath>
#include <numeric>

using namespace noninfo;

TEST_SUITE("quadrature")
{
    TEST_CASE("tensor nodes cover the active coordinates only")
    {
        const auto m = ModelSpec::compartment();
        const auto box = ParamBox::for_model(m, {{0.5, 1.5}, {0.05, 0.07}, {3.3, 5.3}, {0.5, 1.5}});
        const QuadratureRule rule{7, 32};
        const auto nodes = tensor_nodes(box, rule, 0, box.size(), box.midpoint());
        CHECK(nodes.size() == 49);
        const double total = std::accumulate(nodes.weight.begin(), nodes.weight.end(), 0.0);
        CHECK(total == doctest::Approx(box.active_volume(0, box.size())));
        CHECK(box.active_volume(0, 4) == doctest::Approx(0.02 * 2.0));
        CHECK(box.inert_volume() == doctest::Approx(1.0));
        for (const auto& t : nodes.theta)
        {
            CHECK(t[0] == 1.0);
            CHECK(t[3] == 1.0);
            CHECK(t[1] > 0.05);
            CHECK(t[2] < 5.3);
        }
    }

    TEST_CASE("tensor rule integrates a separable product")
    {
        std::vector<ParamCoord> c{{"a", 0.0, 2.0, false}, {"b", 1.0, 3.0, false}};
        const ParamBox box(c);
        const auto nodes = tensor_nodes(box, QuadratureRule{6, 8}, 0, 2, box.midpoint());
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            s += nodes.weight[i] * std::pow(nodes.theta[i][0], 3) * nodes.theta[i][1] * nodes.theta[i][1];
        // int_0^2 a^3 da * int_1^3 b^2 db = 4 * 26/3
        CHECK(s == doctest::Approx(4.0 * 26.0 / 3.0).epsilon(1e-13));
    }

    TEST_CASE("sub-range grids keep the base vector elsewhere")
    {
        const auto m = ModelSpec::hetero_poly_exp(2, 3.0);
        const auto box = ParamBox::for_model(m, {{0, 1}, {0, 1}, {0, 1}, {0.5, 1.5}, {0, 4}});
        std::vector<double> base{9, 9, 9, 9, 9};
        const auto inner = tensor_nodes(box, QuadratureRule{}, 3, 5, base);
        CHECK(inner.size() == 20);
        for (const auto& t : inner.theta)
            CHECK(t[0] == 9.0);
    }

    TEST_CASE("box validation")
    {
        const auto m = ModelSpec::emax();
        CHECK_THROWS_AS(ParamBox::for_model(m, {{0, 1}, {0, 5}, {1, 6}}).validate(m), ParameterError);
        CHECK_THROWS_AS(ParamBox::for_model(m, {{0, 1}, {0, 5}, {-1, 6}, {0.5, 1.5}}).validate(m), ParameterError);
        CHECK_THROWS_AS(ParamBox::for_model(m, {{0, 1}, {0, 5}, {6, 1}, {0.5, 1.5}}).validate(m), ParameterError);
        CHECK_NOTHROW(ParamBox::for_model(m, {{0, 1}, {0, 5}, {1, 6}, {0.5, 1.5}}).validate(m));
    }
}
