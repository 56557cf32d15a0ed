#include "noninfo/orthopoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace noninfo
{

namespace
{

Eigen::MatrixXd jacobi_matrix(std::span<const double> diag, std::span<const double> offdiag_sq)
{
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        J(i, i) = diag[static_cast<std::size_t>(i)];
        if (i > 0)
        {
            const double off = std::sqrt(std::max(0.0, offdiag_sq[static_cast<std::size_t>(i - 1)]));
            J(i, i - 1) = off;
            J(i - 1, i) = off;
        }
    }
    return J;
}

} // namespace

std::vector<double> jacobi_matrix_eigenvalues(std::span<const double> diag, std::span<const double> offdiag_sq)
{
    if (diag.empty())
        return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi_matrix(diag, offdiag_sq), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

GaussRule gauss_from_recurrence(const Recurrence& rec, int n)
{
    if (n < 1 || static_cast<int>(rec.alpha.size()) < n || static_cast<int>(rec.beta.size()) < n)
        throw std::invalid_argument("gauss_from_recurrence: not enough recurrence coefficients");
    const std::span<const double> diag(rec.alpha.data(), static_cast<std::size_t>(n));
    const std::span<const double> off(rec.beta.data() + 1, static_cast<std::size_t>(n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi_matrix(diag, off));
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = rec.beta[0] * v0 * v0;
    }
    return rule;
}

GaussRule gauss_legendre(int n, double lo, double hi)
{
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    GaussRule ref;
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(n);
        if (it == cache.end())
            it = cache.emplace(n, gauss_from_recurrence(jacobi_recurrence(n, 0.0, 0.0), n)).first;
        ref = it->second;
    }
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i)
    {
        ref.nodes[i] = mid + half * ref.nodes[i];
        ref.weights[i] *= half;
    }
    return ref;
}

Recurrence discrete_recurrence(std::span<const double> x,
                               std::span<const double> w,
                               int max_terms,
                               double rel_tol,
                               double scale)
{
    const std::size_t m = x.size();
    Recurrence rec;
    double mass = 0.0;
    for (double wi : w)
        mass += wi;
    rec.beta.push_back(mass);

    // Orthonormal Lanczos vectors in the weighted inner product <f,g> = sum w f g,
    // stored as u = sqrt(w) * q so the Euclidean product applies.
    std::vector<std::vector<double>> basis;
    std::vector<double> u(m);
    for (std::size_t j = 0; j < m; ++j)
        u[j] = std::sqrt(w[j] / mass);
    basis.push_back(u);

    const double tol = rel_tol * scale * scale;
    for (int k = 0; k < max_terms; ++k)
    {
        const auto& q = basis.back();
        double a = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            a += x[j] * q[j] * q[j];
        rec.alpha.push_back(a);

        std::vector<double> r(m);
        for (std::size_t j = 0; j < m; ++j)
            r[j] = (x[j] - a) * q[j];
        // two passes of full reorthogonalization
        for (int pass = 0; pass < 2; ++pass)
        {
            for (const auto& v : basis)
            {
                double dot = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                    dot += r[j] * v[j];
                for (std::size_t j = 0; j < m; ++j)
                    r[j] -= dot * v[j];
            }
        }
        double b2 = 0.0;
        for (double rj : r)
            b2 += rj * rj;
        if (k + 1 >= max_terms)
            break;
        if (b2 < tol || basis.size() >= m)
        {
            rec.beta.push_back(0.0);
            break;
        }
        rec.beta.push_back(b2);
        const double nb = std::sqrt(b2);
        for (auto& rj : r)
            rj /= nb;
        basis.push_back(std::move(r));
    }
    return rec;
}

Recurrence laguerre_recurrence(int n, double alpha)
{
    Recurrence rec;
    rec.beta.push_back(std::tgamma(alpha + 1.0));
    for (int k = 0; k < n; ++k)
    {
        rec.alpha.push_back(2.0 * k + alpha + 1.0);
        if (k > 0)
            rec.beta.push_back(k * (k + alpha));
    }
    return rec;
}

Recurrence jacobi_recurrence(int n, double a, double b)
{
    Recurrence rec;
    const double ab = a + b;
    rec.beta.push_back(std::pow(2.0, ab + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(ab + 2.0));
    for (int k = 0; k < n; ++k)
    {
        const double s = 2.0 * k + ab;
        if (k == 0)
            rec.alpha.push_back((b - a) / (ab + 2.0));
        else
            rec.alpha.push_back((b * b - a * a) / (s * (s + 2.0)));
        if (k > 0)
        {
            double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
            double den = s * s * (s + 1.0) * (s - 1.0);
            if (k == 1)
            {
                // s - 1 = ab + 1; the general formula is fine unless ab + 1 == 0
                num = 4.0 * (1.0 + a) * (1.0 + b);
                den = (ab + 2.0) * (ab + 2.0) * (ab + 3.0);
            }
            rec.beta.push_back(num / den);
        }
    }
    return rec;
}

double laguerre_value(int n, double alpha, double t)
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - t;
    for (int k = 1; k < n; ++k)
    {
        const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double jacobi_value(int n, double a, double b, double x)
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int k = 2; k <= n; ++k)
    {
        const double s = 2.0 * k + a + b;
        const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        const double next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace noninfo
