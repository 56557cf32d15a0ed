#include "noninfo/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace noninfo
{

namespace
{

// tr(A B) for symmetric A, B
double trace_product(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

struct Factored
{
    Matrix inv;
    Matrix inv22;
    double log_det = kNegInf;
    double log_det22 = kNegInf;
};

Factored factor_node(const ModelSpec& m, const Design& d, const std::vector<double>& theta, bool nested)
{
    Matrix mm;
    detail::design_info(m, d, theta, mm);
    Factored f;
    if (auto sf = SpdFactor::compute(mm))
    {
        f.inv = sf->inverse();
        f.log_det = sf->log_det();
    }
    if (nested)
    {
        const int k2 = m.k2();
        if (k2 == 0)
        {
            f.inv22.resize(0, 0);
            f.log_det22 = 0.0;
        }
        else if (auto sf = SpdFactor::compute(mm.bottomRightCorner(k2, k2)))
        {
            f.inv22 = sf->inverse();
            f.log_det22 = sf->log_det();
        }
    }
    return f;
}

std::vector<double> normalized_exp(const std::vector<double>& logs)
{
    double mx = kNegInf;
    for (double v : logs)
        mx = std::max(mx, v);
    std::vector<double> w(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i)
        w[i] = std::exp(logs[i] - mx);
    const double s = pairwise_sum(w);
    for (auto& v : w)
        v /= s;
    return w;
}

} // namespace

Sensitivity::Sensitivity(const Criterion& crit, const Design& d)
    : model_(crit.model()), kind_(crit.kind()), design_(d)
{
    const bool nested = kind_ == CriterionKind::BergerBernardo;
    bound_ = nested ? model_.k1() : model_.k();

    if (!nested)
    {
        const auto& nodes = crit.nodes();
        const auto n = static_cast<std::ptrdiff_t>(nodes.size());
        std::vector<Factored> fac(nodes.size());
#pragma omp parallel for schedule(static) if (crit.exec() == Exec::Parallel && n > 32)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            fac[static_cast<std::size_t>(i)] = factor_node(model_, d, nodes.theta[static_cast<std::size_t>(i)], false);

        std::vector<double> logw(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            if (fac[i].log_det == kNegInf)
                throw SingularDesignError("sensitivity: information matrix singular at a quadrature node");
            logw[i] = kind_ == CriterionKind::Jeffreys ? std::log(nodes.weight[i]) + 0.5 * fac[i].log_det
                                                       : std::log(crit.prior_weights()[i]);
        }
        // prior weights already sum to one up to rounding; renormalize for the exact identity
        const auto w = normalized_exp(logw);
        nodes_.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            nodes_[i] = Node{nodes.theta[i], std::move(fac[i].inv), Matrix(), w[i], 0.0};
        groups_.push_back(Group{0, nodes_.size(), 1.0, 0.0});
        return;
    }

    const auto& outer = crit.outer_nodes();
    const auto& inner = crit.inner_nodes();
    std::vector<std::size_t> offset(outer.size() + 1, 0);
    for (std::size_t i = 0; i < outer.size(); ++i)
        offset[i + 1] = offset[i] + inner[i].size();
    const std::size_t total = offset.back();
    std::vector<Factored> fac(total);
    const auto nt = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static) if (crit.exec() == Exec::Parallel && nt > 32)
    for (std::ptrdiff_t f = 0; f < nt; ++f)
    {
        const auto ff = static_cast<std::size_t>(f);
        const auto i = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), ff) - offset.begin() - 1);
        fac[ff] = factor_node(model_, d, inner[i].theta[ff - offset[i]], true);
    }

    std::vector<double> outer_log(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i)
    {
        Group g;
        g.begin = nodes_.size();
        std::vector<double> log_c;
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < inner[i].size(); ++j)
        {
            const auto& fj = fac[offset[i] + j];
            if (fj.log_det == kNegInf || fj.log_det22 == kNegInf)
                throw SingularDesignError("sensitivity: information matrix singular at a quadrature node");
            log_c.push_back(std::log(inner[i].weight[j]) + 0.5 * fj.log_det22);
            idx.push_back(j);
        }
        const auto c = normalized_exp(log_c);
        std::vector<double> terms(idx.size());
        for (std::size_t t = 0; t < idx.size(); ++t)
        {
            auto& fj = fac[offset[i] + idx[t]];
            const double ratio = 0.5 * (fj.log_det - fj.log_det22);
            terms[t] = c[t] * ratio;
            nodes_.push_back(Node{inner[i].theta[idx[t]], std::move(fj.inv), std::move(fj.inv22), c[t], ratio});
        }
        g.end = nodes_.size();
        g.mean_ratio = pairwise_sum(terms);
        outer_log[i] = std::log(outer.weight[i]) + g.mean_ratio;
        groups_.push_back(g);
    }
    const auto p1 = normalized_exp(outer_log);
    for (std::size_t i = 0; i < groups_.size(); ++i)
        groups_[i].weight = p1[i];
}

double Sensitivity::operator()(double x) const
{
    const int k = model_.k();
    const int k2 = model_.k2();
    Matrix ix(k, k);
    std::vector<double> group_terms(groups_.size());
    for (std::size_t g = 0; g < groups_.size(); ++g)
    {
        const auto& grp = groups_[g];
        if (kind_ != CriterionKind::BergerBernardo)
        {
            std::vector<double> terms(grp.end - grp.begin);
            for (std::size_t i = grp.begin; i < grp.end; ++i)
            {
                ix.setZero();
                detail::accumulate_info(model_, x, nodes_[i].theta, 1.0, ix);
                terms[i - grp.begin] = nodes_[i].weight * trace_product(nodes_[i].inv, ix);
            }
            group_terms[g] = grp.weight * pairwise_sum(terms);
            continue;
        }
        const std::size_t len = grp.end - grp.begin;
        std::vector<double> cov(len), mean22(len), rest(len);
        for (std::size_t i = grp.begin; i < grp.end; ++i)
        {
            const auto& nd = nodes_[i];
            ix.setZero();
            detail::accumulate_info(model_, x, nd.theta, 1.0, ix);
            const double t = trace_product(nd.inv, ix);
            const double t22 = k2 > 0 ? trace_product(nd.inv22, ix.bottomRightCorner(k2, k2)) : 0.0;
            cov[i - grp.begin] = nd.weight * nd.ratio * t22;
            mean22[i - grp.begin] = nd.weight * t22;
            rest[i - grp.begin] = nd.weight * (t - t22);
        }
        group_terms[g] =
            grp.weight * (pairwise_sum(cov) - grp.mean_ratio * pairwise_sum(mean22) + pairwise_sum(rest));
    }
    return pairwise_sum(group_terms);
}

double sensitivity_D(const Design& d,
                     double x,
                     const ModelSpec& m,
                     const ParamBox& box,
                     CriterionKind prior,
                     const QuadratureRule& q)
{
    if (prior != CriterionKind::BayesDUniform && prior != CriterionKind::BayesDFunctionalUniform)
        throw std::invalid_argument("sensitivity_D: prior must be uniform or functional-uniform");
    return Sensitivity(Criterion(m, prior, box, q), d)(x);
}

double sensitivity_J(const Design& d, double x, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Sensitivity(Criterion(m, CriterionKind::Jeffreys, box, q), d)(x);
}

double sensitivity_BB(const Design& d, double x, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Sensitivity(Criterion(m, CriterionKind::BergerBernardo, box, q), d)(x);
}

SensitivityReport verify_design(const Design& d, const Criterion& crit, int grid_size, double tol)
{
    if (grid_size < 2 || grid_size < 2 * static_cast<int>(d.size()))
        throw std::invalid_argument("verify_design: grid must have at least 2m points");
    const Sensitivity sens(crit, d);
    const auto& sp = crit.model().design_space();

    SensitivityReport r;
    r.criterion = crit.kind();
    r.bound = sens.bound();
    r.tol = tol;
    r.grid.reserve(static_cast<std::size_t>(grid_size) + d.size());
    for (int i = 0; i < grid_size; ++i)
        r.grid.push_back(sp.lo + sp.length() * i / (grid_size - 1));
    for (double x : d.points())
        r.grid.push_back(std::clamp(x, sp.lo, sp.hi));
    std::sort(r.grid.begin(), r.grid.end());
    r.grid.erase(std::unique(r.grid.begin(), r.grid.end()), r.grid.end());

    const auto n = static_cast<std::ptrdiff_t>(r.grid.size());
    r.values.resize(r.grid.size());
#pragma omp parallel for schedule(static) if (crit.exec() == Exec::Parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        r.values[static_cast<std::size_t>(i)] = sens(r.grid[static_cast<std::size_t>(i)]);

    double mx = kNegInf;
    for (double v : r.values)
        mx = std::max(mx, v);
    r.max_violation = std::max(0.0, mx - r.bound);

    std::vector<double> avg;
    bool support_ok = true;
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        const double v = sens(std::clamp(d.points()[i], sp.lo, sp.hi));
        r.support_values.push_back(v);
        r.support_residuals.push_back(std::abs(v - r.bound));
        support_ok = support_ok && r.support_residuals.back() <= tol;
        avg.push_back(d.weights()[i] * v);
    }
    r.weighted_average = pairwise_sum(avg);
    r.pass = r.max_violation <= tol && support_ok;
    return r;
}

SensitivityReport verify_design(const Design& d,
                                CriterionKind kind,
                                const ModelSpec& m,
                                const ParamBox& box,
                                int grid_size,
                                double tol,
                                const QuadratureRule& q)
{
    return verify_design(d, Criterion(m, kind, box, q), grid_size, tol);
}

void write_sensitivity_csv(const SensitivityReport& r, std::ostream& os)
{
    os << "x,sensitivity,bound\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < r.grid.size(); ++i)
        os << r.grid[i] << ',' << r.values[i] << ',' << r.bound << '\n';
}

void write_sensitivity_csv(const SensitivityReport& r, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_sensitivity_csv(r, f);
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

std::vector<std::size_t> continuity_breaks(const SensitivityReport& r)
{
    const std::size_t n = r.grid.size();
    std::vector<std::size_t> out;
    if (n < 3)
        return out;
    std::vector<double> slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        slope[i] = std::abs(r.values[i + 1] - r.values[i]) / (r.grid[i + 1] - r.grid[i]);
    std::vector<double> sorted = slope;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        double local = median;
        if (i > 0)
            local = std::max(local, slope[i - 1]);
        if (i + 2 < n)
            local = std::max(local, slope[i + 1]);
        if (slope[i] > 10.0 * local && slope[i] > 1e-12)
            out.push_back(i);
    }
    return out;
}

} // namespace noninfo
