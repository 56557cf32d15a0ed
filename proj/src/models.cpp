#include "noninfo/models.hpp"
#include "noninfo/orthopoly.hpp"

#include <cmath>
#include <sstream>

namespace noninfo
{

std::string_view to_string(ModelKind kind)
{
    switch (kind)
    {
    case ModelKind::HeteroPolyExp:
        return "hetero_poly_exp";
    case ModelKind::HeteroPolyJacobi:
        return "hetero_poly_jacobi";
    case ModelKind::Emax:
        return "emax";
    case ModelKind::Compartment:
        return "compartment";
    case ModelKind::HomoscedasticPoly:
        return "homoscedastic_poly";
    }
    return "unknown";
}

ModelKind model_kind_from_string(std::string_view name)
{
    for (auto k : {ModelKind::HeteroPolyExp, ModelKind::HeteroPolyJacobi, ModelKind::Emax, ModelKind::Compartment,
                   ModelKind::HomoscedasticPoly})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

ModelSpec ModelSpec::hetero_poly_exp(int degree, double b)
{
    if (degree < 1)
        throw std::invalid_argument("hetero_poly_exp: degree must be >= 1");
    if (!(b > 0.0))
        throw std::invalid_argument("hetero_poly_exp: b must be positive");
    return {ModelKind::HeteroPolyExp, degree, degree + 1, 2, Interval{0.0, b}};
}

ModelSpec ModelSpec::hetero_poly_jacobi(int degree, double epsilon)
{
    if (degree < 1)
        throw std::invalid_argument("hetero_poly_jacobi: degree must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("hetero_poly_jacobi: epsilon must lie in (0, 0.5)");
    ModelSpec m{ModelKind::HeteroPolyJacobi, degree, degree + 1, 2, Interval{-1.0 + epsilon, 1.0 - epsilon}};
    m.epsilon_ = epsilon;
    return m;
}

ModelSpec ModelSpec::emax(Interval space)
{
    if (!(space.lo < space.hi) || space.lo < 0.0)
        throw std::invalid_argument("emax: design space must be a nonnegative interval");
    return {ModelKind::Emax, 0, 3, 1, space};
}

ModelSpec ModelSpec::compartment(Interval space)
{
    if (!(space.lo < space.hi) || space.lo < 0.0)
        throw std::invalid_argument("compartment: design space must be a nonnegative interval");
    return {ModelKind::Compartment, 0, 3, 1, space};
}

ModelSpec ModelSpec::homoscedastic_poly(int degree, Interval space)
{
    if (degree < 0)
        throw std::invalid_argument("homoscedastic_poly: degree must be >= 0");
    if (!(space.lo < space.hi))
        throw std::invalid_argument("homoscedastic_poly: invalid design space");
    return {ModelKind::HomoscedasticPoly, degree, degree + 1, 0, space};
}

std::vector<bool> ModelSpec::default_inert() const
{
    std::vector<bool> inert(static_cast<std::size_t>(k()), true);
    switch (kind_)
    {
    case ModelKind::HeteroPolyExp:
        // only theta_{n+2} shapes the criteria
        inert[static_cast<std::size_t>(degree_ + 2)] = false;
        break;
    case ModelKind::HeteroPolyJacobi:
        inert[static_cast<std::size_t>(degree_ + 1)] = false;
        inert[static_cast<std::size_t>(degree_ + 2)] = false;
        break;
    case ModelKind::Emax:
        // theta_1 enters the gradient as a diagonal scale
        inert[2] = false;
        break;
    case ModelKind::Compartment:
        // theta_0 enters the gradient as a diagonal scale
        inert[1] = false;
        inert[2] = false;
        break;
    case ModelKind::HomoscedasticPoly:
        break;
    }
    return inert;
}

void ModelSpec::check_theta(std::span<const double> theta) const
{
    if (static_cast<int>(theta.size()) != k())
    {
        std::ostringstream os;
        os << to_string(kind_) << ": expected " << k() << " parameters, got " << theta.size();
        throw ParameterError(os.str());
    }
    auto require = [&](bool ok, const char* what) {
        if (!ok)
            throw ParameterError(std::string(to_string(kind_)) + ": " + what);
    };
    for (double t : theta)
        require(std::isfinite(t), "non-finite parameter");
    const auto n = static_cast<std::size_t>(degree_);
    switch (kind_)
    {
    case ModelKind::HeteroPolyExp:
        require(theta[n + 1] > 0.0, "theta_{n+1} must be positive");
        require(theta[n + 2] >= 0.0, "theta_{n+2} must be nonnegative");
        break;
    case ModelKind::HeteroPolyJacobi:
        require(theta[n + 1] > 0.0, "theta_{n+1} must be positive");
        require(theta[n + 2] > 0.0, "theta_{n+2} must be positive");
        break;
    case ModelKind::Emax:
        require(theta[2] > 0.0, "theta_2 must be positive");
        require(theta[3] > 0.0, "theta_3 must be positive");
        break;
    case ModelKind::Compartment:
        require(theta[1] > 0.0, "theta_1 must be positive");
        require(theta[2] > 0.0, "theta_2 must be positive");
        require(theta[3] > 0.0, "theta_3 must be positive");
        break;
    case ModelKind::HomoscedasticPoly:
        break;
    }
}

Vector ModelSpec::mean_gradient(double x, std::span<const double> theta) const
{
    Vector g(k1_);
    switch (kind_)
    {
    case ModelKind::HeteroPolyExp:
    case ModelKind::HeteroPolyJacobi:
    case ModelKind::HomoscedasticPoly: {
        double xp = 1.0;
        for (int j = 0; j <= degree_; ++j)
        {
            g(j) = xp;
            xp *= x;
        }
        break;
    }
    case ModelKind::Emax: {
        const double s = x + theta[2];
        g << 1.0, x / s, -theta[1] * x / (s * s);
        break;
    }
    case ModelKind::Compartment: {
        const double e1 = std::exp(-theta[1] * x);
        const double e2 = std::exp(-theta[2] * x);
        g << e1 - e2, -theta[0] * x * e1, theta[0] * x * e2;
        break;
    }
    }
    return g;
}

namespace detail
{

void accumulate_info(const ModelSpec& m, double x, std::span<const double> theta, double weight, Matrix& acc)
{
    const int k1 = m.k1();
    const auto n = static_cast<std::size_t>(m.degree());
    const Vector g = m.mean_gradient(x, theta);
    switch (m.kind())
    {
    case ModelKind::HeteroPolyExp: {
        const double t1 = theta[n + 1];
        const double inv_var = std::exp(-theta[n + 2] * x) / t1;
        acc.topLeftCorner(k1, k1).noalias() += (weight * inv_var) * g * g.transpose();
        const double c = weight / (2.0 * t1 * t1);
        acc(k1, k1) += c;
        acc(k1, k1 + 1) += c * t1 * x;
        acc(k1 + 1, k1) += c * t1 * x;
        acc(k1 + 1, k1 + 1) += c * t1 * t1 * x * x;
        break;
    }
    case ModelKind::HeteroPolyJacobi: {
        const double lm = std::log1p(-x);
        const double lp = std::log1p(x);
        const double inv_var = std::exp((theta[n + 1] + 1.0) * lm + (theta[n + 2] + 1.0) * lp);
        acc.topLeftCorner(k1, k1).noalias() += (weight * inv_var) * g * g.transpose();
        // derivative of log sigma^2 is -(log(1-x), log(1+x)); I_22 = 1/2 grad grad^T
        const double c = 0.5 * weight;
        acc(k1, k1) += c * lm * lm;
        acc(k1, k1 + 1) += c * lm * lp;
        acc(k1 + 1, k1) += c * lm * lp;
        acc(k1 + 1, k1 + 1) += c * lp * lp;
        break;
    }
    case ModelKind::Emax:
    case ModelKind::Compartment: {
        const double var = theta[3];
        acc.topLeftCorner(3, 3).noalias() += (weight / var) * g * g.transpose();
        acc(3, 3) += weight / (2.0 * var * var);
        break;
    }
    case ModelKind::HomoscedasticPoly:
        acc.noalias() += weight * g * g.transpose();
        break;
    }
}

void design_info(const ModelSpec& m, const Design& d, std::span<const double> theta, Matrix& out)
{
    out.setZero(m.k(), m.k());
    for (std::size_t i = 0; i < d.size(); ++i)
        accumulate_info(m, d.points()[i], theta, d.weights()[i], out);
}

} // namespace detail

namespace
{

void check_point(const ModelSpec& m, double x)
{
    if (m.kind() == ModelKind::HeteroPolyJacobi)
    {
        if (!(x > -1.0 && x < 1.0))
            throw ParameterError("hetero_poly_jacobi: x must lie in (-1, 1)");
    }
    else if (!std::isfinite(x))
    {
        throw ParameterError("non-finite design point");
    }
}

} // namespace

Matrix fisher_info_point(const ModelSpec& m, double x, std::span<const double> theta)
{
    m.check_theta(theta);
    check_point(m, x);
    Matrix acc = Matrix::Zero(m.k(), m.k());
    detail::accumulate_info(m, x, theta, 1.0, acc);
    return acc;
}

Matrix info_matrix(const ModelSpec& m, const Design& d, std::span<const double> theta)
{
    m.check_theta(theta);
    Matrix acc = Matrix::Zero(m.k(), m.k());
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        check_point(m, d.points()[i]);
        detail::accumulate_info(m, d.points()[i], theta, d.weights()[i], acc);
    }
    return acc;
}

Matrix info_matrix_uniform(const ModelSpec& m, std::span<const double> theta, int x_nodes)
{
    m.check_theta(theta);
    if (x_nodes < 1)
        throw std::invalid_argument("info_matrix_uniform: x_nodes must be positive");
    // composite rule: panels of at most 16 nodes keep sharp exponentials resolved
    constexpr int kPanelNodes = 16;
    const int panels = (x_nodes + kPanelNodes - 1) / kPanelNodes;
    const int per_panel = (x_nodes + panels - 1) / panels;
    const auto& sp = m.design_space();
    const double h = sp.length() / panels;
    Matrix acc = Matrix::Zero(m.k(), m.k());
    for (int p = 0; p < panels; ++p)
    {
        const auto rule = gauss_legendre(per_panel, sp.lo + p * h, sp.lo + (p + 1) * h);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            detail::accumulate_info(m, rule.nodes[i], theta, rule.weights[i] / sp.length(), acc);
    }
    return acc;
}

} // namespace noninfo
