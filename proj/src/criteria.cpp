#include "noninfo/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noninfo
{

std::string_view to_string(CriterionKind kind)
{
    switch (kind)
    {
    case CriterionKind::BayesDUniform:
        return "bayes_d_uniform";
    case CriterionKind::BayesDFunctionalUniform:
        return "bayes_d_functional_uniform";
    case CriterionKind::Jeffreys:
        return "jeffreys";
    case CriterionKind::BergerBernardo:
        return "berger_bernardo";
    }
    return "unknown";
}

CriterionKind criterion_kind_from_string(std::string_view name)
{
    for (auto k : {CriterionKind::BayesDUniform, CriterionKind::BayesDFunctionalUniform, CriterionKind::Jeffreys,
                   CriterionKind::BergerBernardo})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

namespace
{

constexpr double kMaxSkippedFraction = 0.01;

// log-sum-exp with a fixed summation order
double log_sum_exp(const std::vector<double>& a)
{
    double mx = kNegInf;
    for (double v : a)
        mx = std::max(mx, v);
    if (mx == kNegInf)
        return kNegInf;
    std::vector<double> e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        e[i] = std::exp(a[i] - mx);
    return mx + std::log(pairwise_sum(e));
}

double log_or_neginf(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

void check_design_space(const ModelSpec& m, const Design& d)
{
    const auto& sp = m.design_space();
    const double slack = 1e-12 * sp.length();
    for (double x : d.points())
        if (x < sp.lo - slack || x > sp.hi + slack)
            throw std::invalid_argument("design point outside the model's design space");
}

struct NodeLogDets
{
    double full = kNegInf;  // log|M|
    double nuis = kNegInf;  // log|M_22|
};

NodeLogDets node_log_dets(const ModelSpec& m, const Design& d, const std::vector<double>& theta, bool want_nuis)
{
    Matrix mm;
    detail::design_info(m, d, theta, mm);
    NodeLogDets r;
    if (auto ld = spd_log_det(mm))
        r.full = *ld;
    if (want_nuis)
    {
        const int k2 = m.k2();
        if (auto ld = spd_log_det(mm.bottomRightCorner(k2, k2)))
            r.nuis = *ld;
    }
    return r;
}

// Box in which only coordinates that do not enter the information at all are
// inert; used for the stand-alone densities so they are true densities.
ParamBox information_box(const ModelSpec& m, const ParamBox& box)
{
    std::vector<ParamCoord> coords = box.coords();
    for (auto& c : coords)
        c.inert = false;
    switch (m.kind())
    {
    case ModelKind::HeteroPolyExp:
    case ModelKind::HeteroPolyJacobi:
    case ModelKind::HomoscedasticPoly:
        for (int j = 0; j < m.k1(); ++j)
            coords[static_cast<std::size_t>(j)].inert = true;
        break;
    case ModelKind::Emax:
        coords[0].inert = true;
        break;
    case ModelKind::Compartment:
        break;
    }
    return ParamBox(std::move(coords));
}

double inert_width_product(const ParamBox& box, std::size_t begin, std::size_t end)
{
    double v = 1.0;
    for (std::size_t j = begin; j < end; ++j)
        if (box[j].inert)
            v *= box[j].width();
    return v;
}

} // namespace

FunctionalUniformPrior::FunctionalUniformPrior(const ModelSpec& m, const ParamBox& box, const QuadratureRule& rule)
    : model_(m), rule_(rule)
{
    box.validate(m);
    inert_volume_ = box.inert_volume();
    mid_ = box.midpoint();
    inert_.clear();
    for (const auto& c : box.coords())
        inert_.push_back(c.inert);
    const auto nodes = tensor_nodes(box, rule, 0, box.size(), mid_);
    std::vector<double> raw(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        raw[i] = unnormalized(nodes.theta[i]);
    std::vector<double> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        terms[i] = nodes.weight[i] * raw[i];
    normalizer_ = pairwise_sum(terms);
    if (!(normalizer_ > 0.0))
        throw std::runtime_error("functional-uniform prior: information degenerate on the whole box");
    node_density_.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        node_density_[i] = raw[i] / normalizer_;
}

double FunctionalUniformPrior::unnormalized(const std::vector<double>& theta) const
{
    const Matrix mu = info_matrix_uniform(model_, theta, rule_.design_nodes);
    const auto ld = spd_log_det(mu);
    return ld ? std::exp(0.5 * *ld) : 0.0;
}

double FunctionalUniformPrior::density(const std::vector<double>& theta) const
{
    std::vector<double> t = theta;
    for (std::size_t j = 0; j < t.size() && j < inert_.size(); ++j)
        if (inert_[j])
            t[j] = mid_[j];
    return unnormalized(t) / (normalizer_ * inert_volume_);
}

Criterion::Criterion(ModelSpec model, CriterionKind kind, ParamBox box, QuadratureRule rule, Exec exec)
    : model_(std::move(model)), kind_(kind), box_(std::move(box)), rule_(rule), exec_(exec)
{
    box_.validate(model_);
    if (rule_.nodes_per_coord < 1 || rule_.design_nodes < 1)
        throw std::invalid_argument("quadrature rule needs positive node counts");
    const auto k = box_.size();
    const auto k1 = static_cast<std::size_t>(model_.k1());
    const auto mid = box_.midpoint();
    log_inert_volume_ = std::log(box_.inert_volume());

    switch (kind_)
    {
    case CriterionKind::BayesDUniform:
    case CriterionKind::BayesDFunctionalUniform:
    case CriterionKind::Jeffreys: {
        nodes_ = tensor_nodes(box_, rule_, 0, k, mid);
        prior_weights_.resize(nodes_.size());
        if (kind_ == CriterionKind::BayesDFunctionalUniform)
        {
            const FunctionalUniformPrior fu(model_, box_, rule_);
            for (std::size_t i = 0; i < nodes_.size(); ++i)
                prior_weights_[i] = nodes_.weight[i] * fu.node_density()[i];
        }
        else
        {
            const double vol = box_.active_volume(0, k);
            for (std::size_t i = 0; i < nodes_.size(); ++i)
                prior_weights_[i] = nodes_.weight[i] / vol;
        }
        break;
    }
    case CriterionKind::BergerBernardo: {
        outer_ = tensor_nodes(box_, rule_, 0, k1, mid);
        inner_.reserve(outer_.size());
        for (const auto& t1 : outer_.theta)
            inner_.push_back(tensor_nodes(box_, rule_, k1, k, t1));
        log_inert_volume_interest_ = std::log(inert_width_product(box_, 0, k1));
        break;
    }
    }
}

double Criterion::value(const Design& d) const
{
    const double obj = objective(d);
    if (kind_ == CriterionKind::BayesDUniform || kind_ == CriterionKind::BayesDFunctionalUniform)
        return obj;
    return obj == kNegInf ? 0.0 : std::exp(obj);
}

double Criterion::objective(const Design& d) const
{
    check_design_space(model_, d);
    switch (kind_)
    {
    case CriterionKind::BayesDUniform:
    case CriterionKind::BayesDFunctionalUniform:
        return bayes_d(d);
    case CriterionKind::Jeffreys:
        return log_jeffreys(d);
    case CriterionKind::BergerBernardo:
        return log_berger_bernardo(d);
    }
    return kNegInf;
}

double Criterion::bayes_d(const Design& d) const
{
    const auto n = static_cast<std::ptrdiff_t>(nodes_.size());
    std::vector<double> terms(nodes_.size());
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel && n > 32)
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        const auto ii = static_cast<std::size_t>(i);
        const double ld = node_log_dets(model_, d, nodes_.theta[ii], false).full;
        // zero prior mass does not rescue a singular node
        terms[ii] = ld == kNegInf ? kNegInf : prior_weights_[ii] * ld;
    }
    for (double t : terms)
        if (t == kNegInf)
            return kNegInf;
    return pairwise_sum(terms);
}

double Criterion::log_jeffreys(const Design& d) const
{
    const auto n = static_cast<std::ptrdiff_t>(nodes_.size());
    std::vector<double> a(nodes_.size());
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel && n > 32)
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        const auto ii = static_cast<std::size_t>(i);
        const double ld = node_log_dets(model_, d, nodes_.theta[ii], false).full;
        a[ii] = std::log(nodes_.weight[ii]) + 0.5 * ld;
    }
    const double lse = log_sum_exp(a);
    return lse == kNegInf ? kNegInf : log_inert_volume_ + lse;
}

double Criterion::log_berger_bernardo(const Design& d) const
{
    // flatten (outer, inner) pairs so one parallel loop covers all nodes
    std::vector<std::size_t> offset(outer_.size() + 1, 0);
    for (std::size_t i = 0; i < outer_.size(); ++i)
        offset[i + 1] = offset[i] + inner_[i].size();
    const std::size_t total = offset.back();
    std::vector<NodeLogDets> ld(total);
    const auto nt = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static) if (exec_ == Exec::Parallel && nt > 32)
    for (std::ptrdiff_t f = 0; f < nt; ++f)
    {
        const auto ff = static_cast<std::size_t>(f);
        const auto i = static_cast<std::size_t>(std::upper_bound(offset.begin(), offset.end(), ff) - offset.begin() - 1);
        ld[ff] = node_log_dets(model_, d, inner_[i].theta[ff - offset[i]], true);
    }

    std::size_t skipped = 0;
    std::vector<double> outer_terms(outer_.size());
    for (std::size_t i = 0; i < outer_.size(); ++i)
    {
        const auto& in = inner_[i];
        std::vector<double> log_c, ratio;
        log_c.reserve(in.size());
        ratio.reserve(in.size());
        for (std::size_t j = 0; j < in.size(); ++j)
        {
            const auto& r = ld[offset[i] + j];
            if (r.full == kNegInf || r.nuis == kNegInf)
            {
                ++skipped;
                continue;
            }
            log_c.push_back(std::log(in.weight[j]) + 0.5 * r.nuis);
            ratio.push_back(0.5 * (r.full - r.nuis));
        }
        if (log_c.empty())
        {
            outer_terms[i] = kNegInf;
            continue;
        }
        const double norm = log_sum_exp(log_c);
        std::vector<double> terms(log_c.size());
        for (std::size_t j = 0; j < log_c.size(); ++j)
            terms[j] = std::exp(log_c[j] - norm) * ratio[j];
        outer_terms[i] = std::log(outer_.weight[i]) + pairwise_sum(terms);
    }
    if (static_cast<double>(skipped) > kMaxSkippedFraction * static_cast<double>(total))
        return kNegInf;
    const double lse = log_sum_exp(outer_terms);
    return lse == kNegInf ? kNegInf : log_inert_volume_interest_ + lse;
}

double phi_D(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Criterion(m, CriterionKind::BayesDUniform, box, q).value(d);
}

double phi_D_functional_uniform(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Criterion(m, CriterionKind::BayesDFunctionalUniform, box, q).value(d);
}

double phi_J(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Criterion(m, CriterionKind::Jeffreys, box, q).value(d);
}

double phi_BB(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q)
{
    return Criterion(m, CriterionKind::BergerBernardo, box, q).value(d);
}

double functional_uniform_density(const std::vector<double>& theta,
                                  const ModelSpec& m,
                                  const ParamBox& box,
                                  const QuadratureRule& q)
{
    m.check_theta(theta);
    return FunctionalUniformPrior(m, information_box(m, box), q).density(theta);
}

namespace
{

// int |M_22|^{1/2} over the nuisance block at the interest values of theta,
// including the widths of nuisance coordinates that do not enter M_22.
double nuisance_normalizer(const std::vector<double>& theta,
                           const Design& d,
                           const ModelSpec& m,
                           const ParamBox& ibox,
                           const QuadratureRule& q)
{
    const auto k1 = static_cast<std::size_t>(m.k1());
    const auto nodes = tensor_nodes(ibox, q, k1, ibox.size(), theta);
    std::vector<double> terms(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
        const double l22 = node_log_dets(m, d, nodes.theta[j], true).nuis;
        terms[j] = l22 == kNegInf ? 0.0 : nodes.weight[j] * std::exp(0.5 * l22);
    }
    return pairwise_sum(terms) * inert_width_product(ibox, k1, ibox.size());
}

// exp of the conditional expectation of log(|M|^{1/2}/|M_22|^{1/2}) at theta_1;
// counts skipped inner nodes.
double inner_exponent(const std::vector<double>& theta1,
                      const Design& d,
                      const ModelSpec& m,
                      const ParamBox& ibox,
                      const QuadratureRule& q,
                      std::size_t& skipped,
                      std::size_t& total)
{
    const auto k1 = static_cast<std::size_t>(m.k1());
    const auto nodes = tensor_nodes(ibox, q, k1, ibox.size(), theta1);
    std::vector<double> log_c, ratio;
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
        ++total;
        const auto r = node_log_dets(m, d, nodes.theta[j], true);
        if (r.full == kNegInf || r.nuis == kNegInf)
        {
            ++skipped;
            continue;
        }
        log_c.push_back(std::log(nodes.weight[j]) + 0.5 * r.nuis);
        ratio.push_back(0.5 * (r.full - r.nuis));
    }
    if (log_c.empty())
        return kNegInf;
    const double norm = log_sum_exp(log_c);
    std::vector<double> terms(log_c.size());
    for (std::size_t j = 0; j < log_c.size(); ++j)
        terms[j] = std::exp(log_c[j] - norm) * ratio[j];
    return pairwise_sum(terms);
}

} // namespace

double bb_conditional_density(const std::vector<double>& theta,
                              const Design& d,
                              const ModelSpec& m,
                              const ParamBox& box,
                              const QuadratureRule& q)
{
    m.check_theta(theta);
    box.validate(m);
    if (m.k2() == 0)
        return 1.0;
    const ParamBox ibox = information_box(m, box);
    const double den = nuisance_normalizer(theta, d, m, ibox, q);
    if (!(den > 0.0))
        throw std::runtime_error("bb_conditional_density: zero normalizer");
    const double l22 = node_log_dets(m, d, theta, true).nuis;
    return l22 == kNegInf ? 0.0 : std::exp(0.5 * l22) / den;
}

double bb_marginal_density(const std::vector<double>& theta,
                           const Design& d,
                           const ModelSpec& m,
                           const ParamBox& box,
                           const QuadratureRule& q)
{
    m.check_theta(theta);
    box.validate(m);
    const ParamBox ibox = information_box(m, box);
    const auto k1 = static_cast<std::size_t>(m.k1());

    std::size_t skipped = 0, total = 0;
    const auto outer = tensor_nodes(ibox, q, 0, k1, ibox.midpoint());
    std::vector<double> a(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i)
        a[i] = std::log(outer.weight[i]) + inner_exponent(outer.theta[i], d, m, ibox, q, skipped, total);
    const double at = inner_exponent(theta, d, m, ibox, q, skipped, total);
    if (static_cast<double>(skipped) > kMaxSkippedFraction * static_cast<double>(total))
        throw std::runtime_error("bb_marginal_density: more than 1% of inner nodes are singular");
    const double log_norm = log_sum_exp(a) + std::log(inert_width_product(ibox, 0, k1));
    if (at == kNegInf || log_norm == kNegInf)
        return 0.0;
    return std::exp(at - log_norm);
}

double log_phi_J_halfline(const Design& d, const ModelSpec& m)
{
    if (m.kind() != ModelKind::HeteroPolyExp)
        throw std::invalid_argument("log_phi_J_halfline: only defined for hetero_poly_exp");
    const int n = m.degree();
    if (static_cast<int>(d.size()) != n + 1)
        return kNegInf;
    const double b = m.design_space().hi;
    const auto p = canonical_moments(d, 2 * n + 1);
    double v = 0.5 * n * (n + 1) * std::log(b);
    for (int j = 1; j <= n; ++j)
    {
        const double f = p.q(2 * j - 2) * p.p(2 * j - 1) * p.q(2 * j - 1) * p.p(2 * j);
        v += 0.5 * (n - j + 1) * log_or_neginf(f);
    }
    v += 0.5 * log_or_neginf(p.p(1) * p.p(2) * p.q(1));
    double s = 0.0;
    for (int j = 1; j <= 2 * n + 1; ++j)
        s += p.q(j - 1) * p.p(j);
    v -= log_or_neginf(s);
    return std::isfinite(v) ? v : kNegInf;
}

} // namespace noninfo
