#ifndef NONINFO_QUADRATURE_HPP
#define NONINFO_QUADRATURE_HPP

#include "noninfo/models.hpp"

#include <string>
#include <vector>

namespace noninfo
{

struct ParamCoord
{
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    bool inert = false;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool operator==(const ParamCoord&) const = default;
};

/**
 * Compact parameter box. Inert coordinates are held at their midpoint: their
 * effect on the criteria is a design-independent factor, so only the active
 * coordinates are integrated.
 */
class ParamBox
{
public:
    ParamBox() = default;
    explicit ParamBox(std::vector<ParamCoord> coords) : coords_(std::move(coords)) {}

    /// Box with the model's default inert flags applied.
    static ParamBox for_model(const ModelSpec& m, const std::vector<std::pair<double, double>>& bounds);

    const std::vector<ParamCoord>& coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    const ParamCoord& operator[](std::size_t i) const { return coords_.at(i); }

    std::vector<double> midpoint() const;
    /// Product of the widths of the inert coordinates (1 if none).
    double inert_volume() const;
    /// Product of the widths of the active coordinates in [begin, end).
    double active_volume(std::size_t begin, std::size_t end) const;

    /// Throws ParameterError if the box does not fit the model.
    void validate(const ModelSpec& m) const;

    bool operator==(const ParamBox&) const = default;

private:
    std::vector<ParamCoord> coords_;
};

/// Tensor-product Gauss-Legendre rule over the active coordinates of a box.
struct QuadratureRule
{
    int nodes_per_coord = 20;
    /// Nodes of the x-quadrature used for the uniform measure on the design space.
    int design_nodes = 64;

    bool operator==(const QuadratureRule&) const = default;
};

/// Flattened tensor grid: each node carries a full parameter vector.
struct ThetaNodes
{
    std::vector<std::vector<double>> theta;
    std::vector<double> weight;

    std::size_t size() const { return weight.size(); }
};

/**
 * Tensor grid over the active coordinates with index in [begin, end); all other
 * coordinates are copied from base.
 */
ThetaNodes tensor_nodes(const ParamBox& box,
                        const QuadratureRule& rule,
                        std::size_t begin,
                        std::size_t end,
                        const std::vector<double>& base);

} // namespace noninfo

#endif // NONINFO_QUADRATURE_HPP
