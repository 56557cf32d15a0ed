#include "noninfo/quadrature.hpp"
#include "noninfo/orthopoly.hpp"

#include <sstream>

namespace noninfo
{

ParamBox ParamBox::for_model(const ModelSpec& m, const std::vector<std::pair<double, double>>& bounds)
{
    if (static_cast<int>(bounds.size()) != m.k())
        throw ParameterError("parameter box: expected " + std::to_string(m.k()) + " coordinates");
    const auto inert = m.default_inert();
    std::vector<ParamCoord> coords;
    for (std::size_t j = 0; j < bounds.size(); ++j)
        coords.push_back({"theta" + std::to_string(j), bounds[j].first, bounds[j].second, inert[j]});
    ParamBox box(std::move(coords));
    box.validate(m);
    return box;
}

std::vector<double> ParamBox::midpoint() const
{
    std::vector<double> mid;
    for (const auto& c : coords_)
        mid.push_back(c.mid());
    return mid;
}

double ParamBox::inert_volume() const
{
    double v = 1.0;
    for (const auto& c : coords_)
        if (c.inert)
            v *= c.width();
    return v;
}

double ParamBox::active_volume(std::size_t begin, std::size_t end) const
{
    double v = 1.0;
    for (std::size_t j = begin; j < end && j < coords_.size(); ++j)
        if (!coords_[j].inert)
            v *= coords_[j].width();
    return v;
}

void ParamBox::validate(const ModelSpec& m) const
{
    if (static_cast<int>(coords_.size()) != m.k())
    {
        std::ostringstream os;
        os << "parameter box has " << coords_.size() << " coordinates, model " << to_string(m.kind()) << " needs "
           << m.k();
        throw ParameterError(os.str());
    }
    for (const auto& c : coords_)
        if (!(c.lo < c.hi))
            throw ParameterError("parameter box: coordinate " + c.name + " needs lo < hi");

    // Positivity: the corners of the box must be admissible, with open lower bounds
    // allowed where the model only needs strict positivity of interior values.
    const auto n = static_cast<std::size_t>(m.degree());
    auto need_positive = [&](std::size_t j) {
        if (!(coords_[j].lo > 0.0))
            throw ParameterError("parameter box: " + coords_[j].name + " must have a positive lower bound");
    };
    auto need_nonnegative = [&](std::size_t j) {
        if (coords_[j].lo < 0.0)
            throw ParameterError("parameter box: " + coords_[j].name + " must have a nonnegative lower bound");
    };
    switch (m.kind())
    {
    case ModelKind::HeteroPolyExp:
        need_positive(n + 1);
        need_nonnegative(n + 2);
        break;
    case ModelKind::HeteroPolyJacobi:
        need_nonnegative(n + 1);
        need_nonnegative(n + 2);
        break;
    case ModelKind::Emax:
        need_nonnegative(1);
        need_positive(2);
        need_positive(3);
        break;
    case ModelKind::Compartment:
        need_positive(0);
        need_positive(1);
        need_positive(2);
        need_positive(3);
        break;
    case ModelKind::HomoscedasticPoly:
        break;
    }
    // inert coordinates are evaluated at the midpoint, which must be admissible
    m.check_theta(midpoint());
}

ThetaNodes tensor_nodes(const ParamBox& box,
                        const QuadratureRule& rule,
                        std::size_t begin,
                        std::size_t end,
                        const std::vector<double>& base)
{
    std::vector<std::size_t> dims;
    std::vector<GaussRule> rules;
    for (std::size_t j = begin; j < end && j < box.size(); ++j)
    {
        if (box[j].inert)
            continue;
        dims.push_back(j);
        rules.push_back(gauss_legendre(rule.nodes_per_coord, box[j].lo, box[j].hi));
    }
    ThetaNodes out;
    std::vector<std::size_t> idx(dims.size(), 0);
    while (true)
    {
        std::vector<double> theta = base;
        double w = 1.0;
        for (std::size_t d = 0; d < dims.size(); ++d)
        {
            theta[dims[d]] = rules[d].nodes[idx[d]];
            w *= rules[d].weights[idx[d]];
        }
        out.theta.push_back(std::move(theta));
        out.weight.push_back(w);
        // odometer increment, last dimension fastest
        std::size_t d = dims.size();
        while (d > 0)
        {
            --d;
            if (++idx[d] < rules[d].nodes.size())
                break;
            idx[d] = 0;
            if (d == 0)
                return out;
        }
        if (dims.empty())
            return out;
    }
}

} // namespace noninfo
