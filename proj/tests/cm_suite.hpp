// Randomized canonical-moment checks shared by the property tests and the acceptance runner.
#ifndef NONINFO_TESTS_CM_SUITE_HPP
#define NONINFO_TESTS_CM_SUITE_HPP

#include "noninfo/design.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cm_suite
{

struct Errors
{
    double roundtrip = 0.0;       // max |p_i(roundtrip) - p_i| and support/weight deviation
    double hankel = 0.0;          // max relative deviation
    double support = 0.0;         // max relative deviation over the three identities
    double affine = 0.0;          // max |p_i([a,b]) - p_i([0,1])|
    int designs = 0;
};

inline double rel(double x, double y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); }

inline double rel_small(double x, double y)
{
    const double s = std::max(std::abs(x), std::abs(y));
    return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

// Random design with 2..6 points, spacing at least 4% of the interval and weights at
// least 0.05 of the mean, so the Hankel determinants stay well away from underflow.
inline noninfo::Design random_design(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = -2.0 + 4.0 * u(rng);
    const double b = a + 0.5 + 3.0 * u(rng);
    const int m = 2 + static_cast<int>(u(rng) * 5.0);
    std::vector<double> t;
    while (static_cast<int>(t.size()) < m)
    {
        const double x = u(rng);
        if (std::all_of(t.begin(), t.end(), [&](double y) { return std::abs(x - y) >= 0.04; }))
            t.push_back(x);
    }
    std::sort(t.begin(), t.end());
    const double r = u(rng);
    if (r < 0.25)
        t.front() = 0.0;
    else if (r < 0.5)
        t.back() = 1.0;
    else if (r < 0.6)
    {
        t.front() = 0.0;
        t.back() = 1.0;
    }
    std::vector<double> x, w;
    double s = 0.0;
    for (int i = 0; i < m; ++i)
    {
        const double ti = t[static_cast<std::size_t>(i)];
        x.push_back(ti == 1.0 ? b : a + (b - a) * ti);
        w.push_back(0.05 + u(rng));
        s += w.back();
    }
    for (double& v : w)
        v /= s;
    return noninfo::make_design(x, w, {a, b});
}

inline Errors run(int count, std::uint64_t seed)
{
    using namespace noninfo;
    std::mt19937_64 rng(seed);
    Errors e;
    for (int k = 0; k < count; ++k, ++e.designs)
    {
        const Design d = random_design(rng);
        const int m = static_cast<int>(d.size());
        const auto p = canonical_moments(d, 2 * m + 1);

        const Design back = design_from_canonical_moments(p);
        if (back.size() != d.size())
            e.roundtrip = std::max(e.roundtrip, 1.0);
        else
        {
            for (std::size_t i = 0; i < d.size(); ++i)
            {
                e.roundtrip = std::max(e.roundtrip, rel(back.points()[i], d.points()[i]));
                e.roundtrip = std::max(e.roundtrip, std::abs(back.weights()[i] - d.weights()[i]));
            }
            const auto p2 = canonical_moments(back, 2 * m + 1);
            for (int i = 1; i <= 2 * m + 1; ++i)
                e.roundtrip = std::max(e.roundtrip, std::abs(p2.p(i) - p.p(i)));
        }

        for (int n = 1; n < m; ++n)
            e.hankel = std::max(e.hankel, rel_small(hankel_det(d, n), hankel_det_from_canonical(p, n)));

        // identities relative to their natural scale, so products that vanish at an endpoint compare absolutely
        const auto s = support_identities(d);
        const double len_m = std::pow(d.interval().length(), m);
        auto scaled = [](double x, double y, double scale) {
            return std::abs(x - y) / std::max({scale, std::abs(x), std::abs(y)});
        };
        e.support = std::max({e.support,
                              scaled(s.prod_left, s.prod_left_cm, len_m),
                              scaled(s.prod_right, s.prod_right_cm, len_m),
                              scaled(s.sum_shifted, s.sum_shifted_cm, d.interval().length())});

        std::vector<double> unit;
        const double a = d.interval().lo;
        const double len = d.interval().length();
        for (double x : d.points())
            unit.push_back(std::clamp((x - a) / len, 0.0, 1.0));
        const auto pu = canonical_moments(make_design(unit, d.weights(), {0.0, 1.0}), 2 * m + 1);
        for (int i = 1; i <= 2 * m + 1; ++i)
            e.affine = std::max(e.affine, std::abs(pu.p(i) - p.p(i)));
    }
    return e;
}

} // namespace cm_suite

#endif
