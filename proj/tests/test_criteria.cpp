#include "doctest.h"

#include "noninfo/criteria.hpp"
#include "noninfo/orthopoly.hpp"

#include <algorithm>
#include <cmath>

using namespace noninfo;

namespace
{

Design mk(std::vector<double> x, std::vector<double> w, Interval iv)
{
    return make_design(x, w, iv);
}

double logdet(const Matrix& m) { return std::log(m.determinant()); }

const ModelSpec kCubic = ModelSpec::hetero_poly_exp(3, 1.0);
const ParamBox kCubicBox = ParamBox::for_model(kCubic, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0.5, 1.5}, {0, 4}});
const ModelSpec kEmax = ModelSpec::emax();
const ParamBox kEmaxBox = ParamBox::for_model(kEmax, {{0, 1}, {0, 5}, {1, 6}, {0.5, 1.5}});

} // namespace

TEST_SUITE("criteria")
{
    TEST_CASE("names round trip")
    {
        for (auto k : {CriterionKind::BayesDUniform, CriterionKind::BayesDFunctionalUniform, CriterionKind::Jeffreys,
                       CriterionKind::BergerBernardo})
            CHECK(criterion_kind_from_string(to_string(k)) == k);
        CHECK_THROWS(criterion_kind_from_string("a_optimal"));
    }

    TEST_CASE("Bayes-D against a direct quadrature over theta_2")
    {
        const auto d = mk({0.0, 1.2, 4.0}, {0.3, 0.3, 0.4}, {0, 4});
        const auto g = gauss_legendre(60, 1.0, 6.0);
        double ref = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
        {
            const std::vector<double> t{0.5, 2.5, g.nodes[i], 1.0};
            ref += g.weights[i] / 5.0 * logdet(info_matrix(kEmax, d, t));
        }
        CHECK(phi_D(d, kEmax, kEmaxBox) == doctest::Approx(ref).epsilon(1e-9));
    }

    TEST_CASE("Jeffreys against an adaptive-quadrature value")
    {
        // log int_0^4 |M|^{1/2} d theta_5 with theta_0..3 irrelevant and theta_4 = 1;
        // reference from scipy.integrate.quad
        const auto d = mk({0, .2347, .7018, 1}, {.2809, .2170, .2114, .2907}, {0, 1});
        const Criterion c(kCubic, CriterionKind::Jeffreys, kCubicBox);
        CHECK(c.objective(d) == doctest::Approx(-8.41351569725598).epsilon(1e-9));
        CHECK(c.value(d) == doctest::Approx(std::exp(-8.41351569725598)).epsilon(1e-8));
        CHECK(phi_J(d, kCubic, kCubicBox) == doctest::Approx(c.value(d)));
    }

    TEST_CASE("Berger-Bernardo against a direct nested quadrature")
    {
        // exponential-variance model: the interest block is inert, so the criterion
        // is exp(int c(theta) log(|M|^{1/2} / |M_22|^{1/2}))
        const auto d = mk({0.0, 0.3, 0.7, 1.0}, {0.3, 0.2, 0.2, 0.3}, {0, 1});
        const auto g = gauss_legendre(40, 0.0, 4.0);
        double norm = 0.0, acc = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
        {
            const std::vector<double> t{0.5, 0.5, 0.5, 0.5, 1.0, g.nodes[i]};
            const Matrix m = info_matrix(kCubic, d, t);
            const double l22 = logdet(m.bottomRightCorner(2, 2));
            const double c = g.weights[i] * std::exp(0.5 * l22);
            norm += c;
            acc += c * 0.5 * (logdet(m) - l22);
        }
        const Criterion crit(kCubic, CriterionKind::BergerBernardo, kCubicBox);
        CHECK(crit.objective(d) == doctest::Approx(acc / norm).epsilon(1e-9));
    }

    TEST_CASE("singular designs")
    {
        const auto d = mk({0.0, 4.0}, {0.5, 0.5}, {0, 4});
        for (auto k : {CriterionKind::BayesDUniform, CriterionKind::Jeffreys, CriterionKind::BergerBernardo})
        {
            const Criterion c(kEmax, k, kEmaxBox);
            CHECK(c.objective(d) == kNegInf);
        }
        CHECK(Criterion(kEmax, CriterionKind::Jeffreys, kEmaxBox).value(d) == 0.0);
    }

    TEST_CASE("design outside the design space is rejected")
    {
        const auto d = mk({0.0, 1.0, 5.0}, {0.3, 0.3, 0.4}, {0, 5});
        CHECK_THROWS(Criterion(kEmax, CriterionKind::BayesDUniform, kEmaxBox).objective(d));
    }

    TEST_CASE("functional-uniform density is normalized")
    {
        // integrate over every coordinate that enters the information
        std::vector<ParamCoord> c = kEmaxBox.coords();
        const QuadratureRule q{10, 32};
        const auto g1 = gauss_legendre(4, c[1].lo, c[1].hi);
        const auto g2 = gauss_legendre(24, c[2].lo, c[2].hi);
        const auto g3 = gauss_legendre(8, c[3].lo, c[3].hi);
        double s = 0.0;
        for (std::size_t a = 0; a < g1.nodes.size(); ++a)
            for (std::size_t b = 0; b < g2.nodes.size(); ++b)
                for (std::size_t e = 0; e < g3.nodes.size(); ++e)
                {
                    const std::vector<double> t{0.5, g1.nodes[a], g2.nodes[b], g3.nodes[e]};
                    s += g1.weights[a] * g2.weights[b] * g3.weights[e] * functional_uniform_density(t, kEmax, kEmaxBox, q);
                }
        CHECK(s * c[0].width() == doctest::Approx(1.0).epsilon(1e-6));
    }

    TEST_CASE("functional-uniform collapses to uniform without parameter dependence")
    {
        const auto m = ModelSpec::homoscedastic_poly(2);
        const auto box = ParamBox::for_model(m, {{0, 2}, {0, 1}, {0, 3}});
        const double dens = functional_uniform_density({1.0, 0.5, 1.0}, m, box);
        CHECK(dens == doctest::Approx(1.0 / 6.0));
        const auto d = mk({-1.0, 0.0, 1.0}, {0.3, 0.4, 0.3}, {-1, 1});
        CHECK(phi_D_functional_uniform(d, m, box) == doctest::Approx(phi_D(d, m, box)).epsilon(1e-12));
    }

    TEST_CASE("conditional reference density integrates to one")
    {
        const auto d = mk({0.0, 0.3, 0.7, 1.0}, {0.3, 0.2, 0.2, 0.3}, {0, 1});
        const auto g4 = gauss_legendre(10, 0.5, 1.5);
        const auto g5 = gauss_legendre(30, 0.0, 4.0);
        double s = 0.0;
        for (std::size_t a = 0; a < 10; ++a)
            for (std::size_t b = 0; b < 30; ++b)
                s += g4.weights[a] * g5.weights[b] *
                     bb_conditional_density({0.5, 0.5, 0.5, 0.5, g4.nodes[a], g5.nodes[b]}, d, kCubic, kCubicBox);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
        // no active interest coordinates: the marginal is uniform over their widths
        CHECK(bb_marginal_density({0.5, 0.5, 0.5, 0.5, 1.0, 1.0}, d, kCubic, kCubicBox) == doctest::Approx(1.0));
    }

    TEST_CASE("half-line Jeffreys form against brute-force integration")
    {
        const auto d1 = mk({0, .2347, .7018, 1}, {.2809, .2170, .2114, .2907}, {0, 1});
        const auto d2 = mk({0, .3, .6, 1}, {.25, .25, .25, .25}, {0, 1});
        auto brute = [](const Design& d) {
            const auto g = gauss_legendre(40, 0.0, 1.0);
            double s = 0.0;
            for (int p = 0; p < 400; ++p)
                for (std::size_t i = 0; i < g.nodes.size(); ++i)
                {
                    const double t5 = p + g.nodes[i];
                    const std::vector<double> t{0, 0, 0, 0, 1.0, t5};
                    s += g.weights[i] * std::sqrt(std::max(info_matrix(kCubic, d, t).determinant(), 0.0));
                }
            return std::log(s);
        };
        CHECK(log_phi_J_halfline(d1, kCubic) - log_phi_J_halfline(d2, kCubic) ==
              doctest::Approx(brute(d1) - brute(d2)).epsilon(1e-8));
        CHECK(log_phi_J_halfline(mk({0, 0.5, 1}, {0.3, 0.4, 0.3}, {0, 1}), kCubic) == kNegInf);
    }

    TEST_CASE("serial and parallel evaluation agree bit for bit")
    {
        const auto d = mk({0.0, 0.9, 4.0}, {0.3, 0.3, 0.4}, {0, 4});
        for (auto k : {CriterionKind::BayesDUniform, CriterionKind::BayesDFunctionalUniform, CriterionKind::Jeffreys,
                       CriterionKind::BergerBernardo})
        {
            const QuadratureRule q{40, 64};
            const Criterion s(kEmax, k, kEmaxBox, q, Exec::Serial);
            const Criterion p(kEmax, k, kEmaxBox, q, Exec::Parallel);
            CHECK(s.objective(d) == p.objective(d));
        }
    }
}
