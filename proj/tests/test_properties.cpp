#include "doctest.h"

#include "cm_suite.hpp"

#include "noninfo/equivalence.hpp"
#include "noninfo/polyopt.hpp"
#include "noninfo/tables.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace noninfo;

namespace
{

Design random_design_on(Interval iv, int m, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x, w;
    double s = 0.0;
    for (int i = 0; i < m; ++i)
    {
        x.push_back(iv.lo + iv.length() * (i + 0.1 + 0.8 * u(rng)) / m);
        w.push_back(0.1 + u(rng));
        s += w.back();
    }
    for (double& v : w)
        v /= s;
    return make_design(x, w, iv);
}

} // namespace

TEST_CASE("canonical moments: roundtrip, Hankel, support and affine properties on 200 designs")
{
    const auto e = cm_suite::run(200, 20240611);
    CHECK(e.designs == 200);
    CHECK(e.roundtrip < 1e-8);
    CHECK(e.hankel < 1e-8);
    CHECK(e.support < 1e-8);
    CHECK(e.affine < 1e-8);
}

TEST_CASE("canonical moments stay in the unit interval")
{
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k)
    {
        const auto d = cm_suite::random_design(rng);
        const auto p = canonical_moments(d, 2 * static_cast<int>(d.size()) + 1);
        for (int i = 1; i <= p.size(); ++i)
        {
            CHECK(p.p(i) >= 0.0);
            CHECK(p.p(i) <= 1.0);
        }
    }
}

TEST_CASE("information matrices are symmetric, positive semidefinite and linear in the design")
{
    std::mt19937_64 rng(5);
    for (const auto& t : table_setups())
    {
        const auto iv = t.model.design_space();
        const auto theta = t.box.midpoint();
        const auto d1 = random_design_on(iv, t.m + 1, rng);
        const auto d2 = random_design_on(iv, t.m + 1, rng);
        const Matrix m1 = info_matrix(t.model, d1, theta);
        CHECK((m1 - m1.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * m1.cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Matrix> es(m1);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);

        std::vector<double> x = d1.points(), w;
        x.insert(x.end(), d2.points().begin(), d2.points().end());
        for (double v : d1.weights())
            w.push_back(0.5 * v);
        for (double v : d2.weights())
            w.push_back(0.5 * v);
        const auto mix = make_design(x, w, iv);
        const Matrix lin = 0.5 * m1 + 0.5 * info_matrix(t.model, d2, theta);
        CHECK((info_matrix(t.model, mix, theta) - lin).cwiseAbs().maxCoeff() <= 1e-12 * lin.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("heteroscedastic polynomial information has block structure and the nuisance determinant identity")
{
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 4; ++n)
    {
        const double b = 0.5 + n;
        const auto model = ModelSpec::hetero_poly_exp(n, b);
        for (int rep = 0; rep < 10; ++rep)
        {
            const auto d = random_design_on(model.design_space(), n + 2, rng);
            std::vector<double> theta(static_cast<std::size_t>(n + 3), 0.3);
            theta[static_cast<std::size_t>(n + 1)] = 0.7 + 0.1 * rep;
            theta[static_cast<std::size_t>(n + 2)] = 0.4 * rep;
            const Matrix m = info_matrix(model, d, theta);
            CHECK(m.topRightCorner(n + 1, 2).cwiseAbs().maxCoeff() == 0.0);
            const auto p = canonical_moments(d, 3);
            const double s = theta[static_cast<std::size_t>(n + 1)];
            const double expected = 0.25 / (s * s) * b * b * p.p(1) * p.p(2) * p.q(1);
            CHECK(m.bottomRightCorner(2, 2).determinant() == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("trace identity on random designs")
{
    std::mt19937_64 rng(11);
    for (const auto& t : table_setups())
    {
        if (t.id == "2b")
            continue;
        for (auto k : {CriterionKind::BayesDUniform, CriterionKind::Jeffreys, CriterionKind::BergerBernardo})
        {
            const Criterion c(t.model, k, t.box);
            const auto d = random_design_on(t.model.design_space(), t.m + 1, rng);
            const Sensitivity s(c, d);
            double acc = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i)
                acc += d.weights()[i] * s(d.points()[i]);
            CHECK(acc == doctest::Approx(s.bound()).epsilon(1e-9));
        }
    }
}

TEST_CASE("quadrature convergence at the default rule")
{
    // doubling every node count moves each criterion by less than 1e-6 at the published designs
    const QuadratureRule base{};
    const QuadratureRule fine{2 * base.nodes_per_coord, 2 * base.design_nodes};
    for (const auto& t : table_setups())
    {
        for (auto k : {CriterionKind::BayesDUniform, CriterionKind::Jeffreys, CriterionKind::BergerBernardo,
                       CriterionKind::BayesDFunctionalUniform})
        {
            if (k == CriterionKind::BayesDFunctionalUniform && t.id != "3" && t.id != "5")
                continue;
            auto ref = reference_design(t.id, k);
            if (!ref)
                ref = reference_design(t.id, CriterionKind::Jeffreys);
            std::vector<double> w = ref->weights;
            double s = 0.0;
            for (double v : w)
                s += v;
            for (double& v : w)
                v /= s;
            const auto d = make_design(ref->points, w, t.model.design_space());
            const double coarse = Criterion(t.model, k, t.box, base).objective(d);
            const double dense = Criterion(t.model, k, t.box, fine).objective(d);
            INFO("table " << t.id << " " << to_string(k));
            CHECK(std::abs(coarse - dense) < 1e-6);
        }
    }
}

TEST_CASE("published Emax optimum satisfies the bound")
{
    const auto t = table_setup("3");
    const auto d = make_uniform_design(std::vector<double>{0.0, 0.9472, 4.0}, t.model.design_space());
    for (auto k : {CriterionKind::Jeffreys, CriterionKind::BergerBernardo})
    {
        const auto r = verify_design(d, Criterion(t.model, k, t.box));
        CHECK(r.max_violation <= 2e-3);
        CHECK(r.pass);
    }
}

TEST_CASE("Jeffreys half-line design scales linearly in b")
{
    for (int n = 1; n <= 3; ++n)
    {
        const auto d1 = jeffreys_design_exp(n, 1.0);
        const auto d3 = jeffreys_design_exp(n, 3.0);
        REQUIRE(d1.size() == d3.size());
        CHECK(d1.points().front() == 0.0);
        CHECK(d3.points().back() == 3.0);
        for (std::size_t i = 0; i < d1.size(); ++i)
        {
            CHECK(d3.points()[i] == doctest::Approx(3.0 * d1.points()[i]).epsilon(1e-12));
            CHECK(d3.weights()[i] == doctest::Approx(d1.weights()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("Laguerre branch depends on b and gamma only through their product")
{
    const auto a = bb_design_exp(2, 3.0, 2.0);
    const auto b = bb_design_exp(2, 1.5, 4.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(b.points()[i] == doctest::Approx(0.5 * a.points()[i]).epsilon(1e-12));
        CHECK(b.weights()[i] == doctest::Approx(1.0 / 3.0));
    }
}
