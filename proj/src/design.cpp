#include "noninfo/design.hpp"
#include "noninfo/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace noninfo
{

Design make_design(std::span<const double> points,
                   std::span<const double> weights,
                   Interval interval,
                   double merge_rel)
{
    if (points.size() != weights.size())
        throw DesignError("make_design: points and weights differ in length");
    if (points.empty())
        throw DesignError("make_design: empty design");
    if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi))
        throw DesignError("make_design: invalid interval");

    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (!std::isfinite(points[i]) || !interval.contains(points[i]))
        {
            std::ostringstream os;
            os << "make_design: point " << points[i] << " outside interval [" << interval.lo << ", " << interval.hi
               << "]";
            throw DesignError(os.str());
        }
        if (!(weights[i] > 0.0))
            throw DesignError("make_design: nonpositive weight");
        total += weights[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
    {
        std::ostringstream os;
        os.precision(17);
        os << "make_design: weights sum to " << total;
        throw DesignError(os.str());
    }

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return points[i] < points[j]; });

    Design d;
    d.interval_ = interval;
    const double gap = merge_rel * interval.length();
    for (auto idx : order)
    {
        if (!d.points_.empty() && points[idx] - d.points_.back() < gap)
        {
            // weighted position keeps the first moment unchanged
            const double w0 = d.weights_.back();
            const double w1 = weights[idx];
            d.points_.back() = (w0 * d.points_.back() + w1 * points[idx]) / (w0 + w1);
            d.weights_.back() = w0 + w1;
            continue;
        }
        d.points_.push_back(points[idx]);
        d.weights_.push_back(weights[idx]);
    }
    for (auto& w : d.weights_)
        w /= total;
    return d;
}

Design make_uniform_design(std::span<const double> points, Interval interval)
{
    std::vector<double> w(points.size(), 1.0 / static_cast<double>(points.size()));
    return make_design(points, w, interval);
}

MomentVector moments(const Design& d, int n)
{
    MomentVector mv;
    mv.values.assign(static_cast<std::size_t>(std::max(n, 0)), 0.0);
    for (std::size_t j = 0; j < d.size(); ++j)
    {
        double xp = 1.0;
        for (int i = 0; i < n; ++i)
        {
            xp *= d.points()[j];
            mv.values[static_cast<std::size_t>(i)] += d.weights()[j] * xp;
        }
    }
    return mv;
}

double CanonicalMomentSeq::p(int i) const
{
    if (i < 1)
        throw std::out_of_range("CanonicalMomentSeq::p: index must be >= 1");
    if (i <= size())
        return values[static_cast<std::size_t>(i - 1)];
    if (terminal)
        return 0.0;
    throw std::out_of_range("CanonicalMomentSeq::p: index beyond computed order");
}

double CanonicalMomentSeq::zeta(int i) const
{
    if (i == 0)
        return 0.0;
    if (i == 1)
        return p(1);
    return q(i - 1) * p(i);
}

CanonicalMomentSeq canonical_moments(const Design& d, int n)
{
    const auto& iv = d.interval();
    const double len = iv.length();
    CanonicalMomentSeq seq;
    seq.interval = iv;

    const int m = static_cast<int>(d.size());
    const auto rec = discrete_recurrence(d.points(), d.weights(), m + 1, 1e-13, len);

    auto push = [&](double value) {
        if (value <= kCanonicalBoundaryTol)
        {
            seq.values.push_back(0.0);
            seq.terminal = true;
        }
        else if (value >= 1.0 - kCanonicalBoundaryTol)
        {
            seq.values.push_back(1.0);
            seq.terminal = true;
        }
        else
        {
            seq.values.push_back(value);
        }
    };

    double zeta_prev = 0.0; // zeta_{i-1}
    double p_prev = 0.0;    // p_{i-1}
    for (int i = 1; i <= n && !seq.terminal; ++i)
    {
        double zeta = 0.0;
        const int k = i / 2;
        if (i % 2 == 1)
        {
            // alpha_k = a + (b-a)(zeta_{2k} + zeta_{2k+1})
            if (static_cast<std::size_t>(k) >= rec.alpha.size())
            {
                push(0.0);
                break;
            }
            zeta = (rec.alpha[static_cast<std::size_t>(k)] - iv.lo) / len - zeta_prev;
        }
        else
        {
            // beta_k = (b-a)^2 zeta_{2k-1} zeta_{2k}
            const double beta = static_cast<std::size_t>(k) < rec.beta.size() ? rec.beta[static_cast<std::size_t>(k)] : 0.0;
            zeta = beta / (len * len * zeta_prev);
        }
        const double qprev = (i == 1) ? 1.0 : 1.0 - p_prev;
        const double pi = zeta / qprev;
        push(pi);
        p_prev = seq.values.back();
        zeta_prev = (i == 1) ? p_prev : qprev * p_prev;
    }
    return seq;
}

namespace
{

// Number of support points encoded by a terminal sequence (cases 1-4), or -1.
int support_size(const CanonicalMomentSeq& p)
{
    const int len = p.size();
    if (len == 0 || !p.terminal)
        return -1;
    for (int i = 1; i < len; ++i)
    {
        const double v = p.p(i);
        if (!(v > 0.0 && v < 1.0))
            return -1;
    }
    const double last = p.p(len);
    if (len % 2 == 0)
        return last == 0.0 ? len / 2 : len / 2 + 1;
    return (len - 1) / 2 + 1;
}

} // namespace

Design design_from_canonical_moments(const CanonicalMomentSeq& p)
{
    const int m = support_size(p);
    if (m < 1)
        throw DesignError("design_from_canonical_moments: sequence does not end in a boundary value 0 or 1");
    const auto& iv = p.interval;
    const double a = iv.lo;
    const double len = iv.length();

    std::vector<double> zeta(static_cast<std::size_t>(2 * m + 2), 0.0);
    for (int i = 1; i <= std::min(p.size(), 2 * m + 1); ++i)
        zeta[static_cast<std::size_t>(i)] = p.zeta(i);
    for (double z : zeta)
        if (z < 0.0)
            throw DesignError("design_from_canonical_moments: negative zeta product");

    std::vector<double> diag(static_cast<std::size_t>(m));
    std::vector<double> off(static_cast<std::size_t>(std::max(m - 1, 0)));
    for (int i = 0; i < m; ++i)
    {
        diag[static_cast<std::size_t>(i)] = a + len * (zeta[static_cast<std::size_t>(2 * i)] + zeta[static_cast<std::size_t>(2 * i + 1)]);
        if (i > 0)
            off[static_cast<std::size_t>(i - 1)] = len * len * zeta[static_cast<std::size_t>(2 * i - 1)] * zeta[static_cast<std::size_t>(2 * i)];
    }
    auto roots = jacobi_matrix_eigenvalues(diag, off);

    // W_{i+1} = (x - diag_i) W_i - off_i W_{i-1}; P_m and P'_m by forward recursion,
    // the associated polynomial from W_1 = 1, W_0 = 0.
    std::vector<double> weights(roots.size());
    for (std::size_t r = 0; r < roots.size(); ++r)
    {
        // eigenvalues of an endpoint come back a few ulps off
        double x = std::clamp(roots[r], iv.lo, iv.hi);
        if (x - iv.lo <= 1e-12 * len)
            x = iv.lo;
        else if (iv.hi - x <= 1e-12 * len)
            x = iv.hi;
        roots[r] = x;
        double w_prev = 0.0, w_cur = 1.0;   // W_{-1}, W_0
        double d_prev = 0.0, d_cur = 0.0;   // derivatives
        for (int i = 0; i < m; ++i)
        {
            const double beta = i > 0 ? off[static_cast<std::size_t>(i - 1)] : 0.0;
            const double t = x - diag[static_cast<std::size_t>(i)];
            const double w_next = t * w_cur - beta * w_prev;
            const double d_next = w_cur + t * d_cur - beta * d_prev;
            w_prev = w_cur;
            w_cur = w_next;
            d_prev = d_cur;
            d_cur = d_next;
        }
        double a_prev = 0.0, a_cur = 1.0;   // shifted: W_0 = 0, W_1 = 1
        for (int i = 1; i < m; ++i)
        {
            const double beta = off[static_cast<std::size_t>(i - 1)];
            const double a_next = (x - diag[static_cast<std::size_t>(i)]) * a_cur - beta * a_prev;
            a_prev = a_cur;
            a_cur = a_next;
        }
        weights[r] = a_cur / d_cur;
    }
    double total = 0.0;
    for (double w : weights)
        total += w;
    for (auto& w : weights)
        w /= total;
    return make_design(roots, weights, iv);
}

double hankel_det(const Design& d, int n)
{
    if (n < 0)
        throw std::invalid_argument("hankel_det: n must be >= 0");
    // det(c_{i+j}) = det(V^T W V) for the Vandermonde matrix V of the support. It is
    // invariant under translation and scales by s^{n(n+1)} under x -> s x, so work in
    // y = (x - mid) / half on [-1, 1] and take squared diagonal entries of R from a QR of
    // W^{1/2} V, avoiding the squared conditioning of the assembled moment matrix.
    const auto& iv = d.interval();
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * iv.length();
    const auto rows = static_cast<Eigen::Index>(d.size());
    const auto cols = static_cast<Eigen::Index>(n + 1);
    if (rows < cols)
        return 0.0;
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const double y = (d.points()[static_cast<std::size_t>(i)] - mid) / half;
        double v = std::sqrt(d.weights()[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < cols; ++j, v *= y)
            a(i, j) = v;
    }
    const Eigen::MatrixXd r = Eigen::HouseholderQR<Eigen::MatrixXd>(a).matrixQR();
    double det = std::pow(half, n * (n + 1));
    for (Eigen::Index j = 0; j < cols; ++j)
        det *= r(j, j) * r(j, j);
    return det;
}

double hankel_det_from_canonical(const CanonicalMomentSeq& p, int n)
{
    const double len = p.interval.length();
    double value = std::pow(len, n * (n + 1));
    for (int i = 1; i <= n; ++i)
    {
        const double f = p.q(2 * i - 2) * p.p(2 * i - 1) * p.q(2 * i - 1) * p.p(2 * i);
        value *= std::pow(f, n - i + 1);
    }
    return value;
}

SupportIdentities support_identities(const Design& d)
{
    const auto& iv = d.interval();
    const int n = static_cast<int>(d.size()) - 1;
    const auto p = canonical_moments(d, 2 * n + 1);

    SupportIdentities s;
    s.prod_left = 1.0;
    s.prod_right = 1.0;
    for (double x : d.points())
    {
        s.prod_left *= x - iv.lo;
        s.prod_right *= iv.hi - x;
        s.sum_shifted += x - iv.lo;
    }
    const double len = iv.length();
    s.prod_left_cm = std::pow(len, n + 1) * p.p(2 * n + 1);
    for (int i = 1; i <= n; ++i)
        s.prod_left_cm *= p.p(2 * i - 1) * p.q(2 * i);
    s.prod_right_cm = std::pow(len, n + 1);
    for (int i = 1; i <= 2 * n + 1; ++i)
        s.prod_right_cm *= p.q(i);
    for (int i = 1; i <= 2 * n + 1; ++i)
        s.sum_shifted_cm += p.q(i - 1) * p.p(i);
    s.sum_shifted_cm *= len;
    return s;
}

nlohmann::json to_json(const Design& d)
{
    return {{"interval", {d.interval().lo, d.interval().hi}}, {"points", d.points()}, {"weights", d.weights()}};
}

Design design_from_json(const nlohmann::json& j)
{
    try
    {
        const auto iv = j.at("interval").get<std::vector<double>>();
        if (iv.size() != 2)
            throw DesignError("design JSON: interval must have two entries");
        const auto pts = j.at("points").get<std::vector<double>>();
        const auto wts = j.at("weights").get<std::vector<double>>();
        return make_design(pts, wts, Interval{iv[0], iv[1]});
    }
    catch (const nlohmann::json::exception& e)
    {
        throw DesignError(std::string("design JSON: ") + e.what());
    }
}

} // namespace noninfo
