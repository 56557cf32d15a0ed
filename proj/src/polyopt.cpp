#include "noninfo/polyopt.hpp"
#include "noninfo/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace noninfo
{

namespace
{

constexpr double kInteriorEps = 1e-10;
constexpr int kMaxNewtonSteps = 200;
constexpr double kResidualTol = 1e-12;

using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;

double inf_norm(const std::vector<double>& r)
{
    double m = 0.0;
    for (double v : r)
    {
        if (!std::isfinite(v))
            return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

double project(double v) { return std::clamp(v, kInteriorEps, 1.0 - kInteriorEps); }

// Damped Newton with a central-difference Jacobian and projection onto the open cube.
std::vector<double> damped_newton(const ResidualFn& f, std::vector<double> x, const char* what)
{
    const auto n = static_cast<Eigen::Index>(x.size());
    auto r = f(x);
    double norm = inf_norm(r);
    for (int step = 0; step < kMaxNewtonSteps && norm >= kResidualTol; ++step)
    {
        Eigen::MatrixXd jac(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            const auto jj = static_cast<std::size_t>(j);
            const double h = 1e-7 * std::min(x[jj], 1.0 - x[jj]);
            auto xp = x, xm = x;
            xp[jj] += h;
            xm[jj] -= h;
            const auto rp = f(xp);
            const auto rm = f(xm);
            for (Eigen::Index i = 0; i < n; ++i)
                jac(i, j) = (rp[static_cast<std::size_t>(i)] - rm[static_cast<std::size_t>(i)]) / (2.0 * h);
        }
        Eigen::VectorXd rhs(n);
        for (Eigen::Index i = 0; i < n; ++i)
            rhs(i) = -r[static_cast<std::size_t>(i)];
        const Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(rhs);

        double lambda = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half, lambda *= 0.5)
        {
            std::vector<double> trial(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                trial[i] = project(x[i] + lambda * dx(static_cast<Eigen::Index>(i)));
            auto rt = f(trial);
            const double nt = inf_norm(rt);
            if (std::isfinite(nt) && nt < norm)
            {
                x = std::move(trial);
                r = std::move(rt);
                norm = nt;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            break;
    }
    if (!(norm < kResidualTol))
        throw ConvergenceError(std::string(what) + ": Newton iteration did not converge", norm);
    return x;
}

// p_i with p_{2n} = 1 appended to the free values p_1..p_{2n-1}
struct FreeSeq
{
    std::span<const double> v;
    double q0;

    double p(int i) const { return i == static_cast<int>(v.size()) + 1 ? 1.0 : v[static_cast<std::size_t>(i - 1)]; }
    double q(int i) const { return i == 0 ? q0 : 1.0 - p(i); }
};

CanonicalMomentSeq terminal_seq(const std::vector<double>& free, Interval iv)
{
    CanonicalMomentSeq seq;
    seq.interval = iv;
    seq.values = free;
    seq.values.push_back(1.0);
    seq.terminal = true;
    return seq;
}

Design equal_weights(const Design& d)
{
    return make_uniform_design(d.points(), d.interval());
}

} // namespace

std::vector<double> laguerre_roots(int n, double alpha, double scale)
{
    if (n < 1)
        throw std::invalid_argument("laguerre_roots: n must be >= 1");
    if (!(scale > 0.0))
        throw std::invalid_argument("laguerre_roots: scale must be positive");
    const auto rec = laguerre_recurrence(n, alpha);
    auto roots = jacobi_matrix_eigenvalues(rec.alpha, std::span<const double>(rec.beta).subspan(1));
    for (auto& r : roots)
        r /= scale;
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> jacobi_roots(int degree, double g1, double g2)
{
    if (degree < 1)
        throw std::invalid_argument("jacobi_roots: degree must be >= 1");
    if (!(g1 > -1.0 && g2 > -1.0))
        throw std::invalid_argument("jacobi_roots: parameters must exceed -1");
    const auto rec = jacobi_recurrence(degree, g1, g2);
    auto roots = jacobi_matrix_eigenvalues(rec.alpha, std::span<const double>(rec.beta).subspan(1));
    std::sort(roots.begin(), roots.end());
    return roots;
}

CanonicalMomentSeq jacobi_canonical_moments(int n, double g1, double g2)
{
    if (n < 0)
        throw std::invalid_argument("jacobi_canonical_moments: n must be >= 0");
    CanonicalMomentSeq seq;
    seq.interval = {-1.0, 1.0};
    for (int i = 1; i <= n + 1; ++i)
    {
        const double r = n + 1 - i;
        seq.values.push_back((g2 + r + 1.0) / (g1 + g2 + 2.0 * r + 2.0));
        seq.values.push_back(r / (g1 + g2 + 2.0 * r + 1.0));
    }
    seq.terminal = true;
    return seq;
}

std::vector<double> jeffreys_system_residual(int n, std::span<const double> p)
{
    if (n < 1 || static_cast<int>(p.size()) != 2 * n - 1)
        throw std::invalid_argument("jeffreys_system_residual: expected 2n-1 canonical moments");
    const FreeSeq s{p, 1.0};
    double sum = 0.0;
    for (int j = 1; j <= 2 * n; ++j)
        sum += s.q(j - 1) * s.p(j);

    std::vector<double> r;
    for (int i = 1; i <= n; ++i)
    {
        const double c = 0.5 * (n - i + 1) + (i == 1 ? 0.5 : 0.0);
        r.push_back(c * (1.0 / s.p(2 * i - 1) - 1.0 / s.q(2 * i - 1)) + (s.p(2 * i) - s.q(2 * i - 2)) / sum);
    }
    for (int i = 1; i <= n - 1; ++i)
    {
        const double c = 0.5 * (n - i + 1) + (i == 1 ? 0.5 : 0.0);
        r.push_back(c / s.p(2 * i) - 0.5 * (n - i) / s.q(2 * i) + (s.p(2 * i + 1) - s.q(2 * i - 1)) / sum);
    }
    return r;
}

CanonicalMomentSeq solve_jeffreys_system(int n)
{
    if (n < 1)
        throw std::invalid_argument("solve_jeffreys_system: n must be >= 1");
    std::vector<double> x;
    for (int i = 1; i <= n; ++i)
    {
        x.push_back(0.5);
        if (i < n)
            x.push_back((n - i + 1.0) / (2.0 * (n - i) + 3.0));
    }
    auto f = [n](std::span<const double> p) { return jeffreys_system_residual(n, p); };
    return terminal_seq(damped_newton(f, x, "solve_jeffreys_system"), {0.0, 1.0});
}

Design jeffreys_design_exp(int n, double b)
{
    if (!(b > 0.0))
        throw std::invalid_argument("jeffreys_design_exp: b must be positive");
    auto seq = solve_jeffreys_system(n);
    seq.interval = {0.0, b};
    return design_from_canonical_moments(seq);
}

std::vector<double> bb_exp_system_residual(int n, double b_gamma, std::span<const double> p, double q0)
{
    if (n < 1 || static_cast<int>(p.size()) != 2 * n - 1)
        throw std::invalid_argument("bb_exp_system_residual: expected 2n-1 canonical moments");
    const FreeSeq s{p, q0};
    std::vector<double> r;
    for (int i = 1; i <= n; ++i)
    {
        const double c = n - i + 1;
        r.push_back(c / s.p(2 * i - 1) - c / s.q(2 * i - 1) - b_gamma * s.q(2 * i - 2) + b_gamma * s.p(2 * i));
    }
    for (int i = 1; i <= n - 1; ++i)
        r.push_back((n - i + 1.0) / s.p(2 * i) - (n - i) / s.q(2 * i) - b_gamma * s.q(2 * i - 1) +
                    b_gamma * s.p(2 * i + 1));
    return r;
}

CanonicalMomentSeq solve_bb_exp_system(int n, double b_gamma, double q0)
{
    if (n < 1)
        throw std::invalid_argument("solve_bb_exp_system: n must be >= 1");
    if (!(b_gamma >= 0.0))
        throw std::invalid_argument("solve_bb_exp_system: b*gamma must be nonnegative");
    // exact solution at b*gamma = 0
    std::vector<double> x;
    for (int i = 1; i <= n; ++i)
    {
        x.push_back(0.5);
        if (i < n)
            x.push_back((n - i + 1.0) / (2.0 * (n - i) + 1.0));
    }
    constexpr int kSteps = 16;
    for (int s = 1; s <= kSteps; ++s)
    {
        const double t = b_gamma * s / kSteps;
        auto f = [n, t, q0](std::span<const double> p) { return bb_exp_system_residual(n, t, p, q0); };
        x = damped_newton(f, x, "solve_bb_exp_system");
    }
    return terminal_seq(x, {0.0, 1.0});
}

double laguerre_threshold(int n) { return laguerre_roots(n, 1.0, 1.0).back(); }

Design bb_design_exp(int n, double b, double gamma)
{
    if (n < 1 || !(b > 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("bb_design_exp: need n >= 1, b > 0, gamma > 0");
    const Interval iv{0.0, b};
    if (b * gamma >= laguerre_threshold(n))
    {
        std::vector<double> pts{0.0};
        for (double r : laguerre_roots(n, 1.0, gamma))
            pts.push_back(std::min(r, b));
        return make_uniform_design(pts, iv);
    }
    auto seq = solve_bb_exp_system(n, b * gamma);
    seq.interval = iv;
    return equal_weights(design_from_canonical_moments(seq));
}

Design bb_design_jacobi(int n, double g1, double g2, double epsilon)
{
    if (n < 1)
        throw std::invalid_argument("bb_design_jacobi: n must be >= 1");
    if (!(g1 > 0.0 && g2 > 0.0))
        throw std::invalid_argument("bb_design_jacobi: g1 and g2 must be positive");
    const Interval iv{-1.0 + epsilon, 1.0 - epsilon};
    auto pts = jacobi_roots(n + 1, g1, g2);
    for (auto& x : pts)
        x = std::clamp(x, iv.lo, iv.hi);
    return make_uniform_design(pts, iv);
}

} // namespace noninfo
