#ifndef NONINFO_EQUIVALENCE_HPP
#define NONINFO_EQUIVALENCE_HPP

#include "noninfo/criteria.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace noninfo
{

/// Thrown when a candidate design has singular information at a quadrature node.
class SingularDesignError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/**
 * Sensitivity function d(xi, delta_x) of a design under a criterion, with the
 * node-wise inverses precomputed so that evaluation at many x is cheap.
 *
 * Bayes-D and Jeffreys: prior-weighted (resp. |M|^{1/2}-weighted) average of
 * tr(M^{-1} I(x)), bound k. Berger-Bernardo: the three-term expression with the
 * reference-prior weights, bound k1.
 */
class Sensitivity
{
public:
    Sensitivity(const Criterion& crit, const Design& d);

    double operator()(double x) const;
    double bound() const { return bound_; }
    const Design& design() const { return design_; }

private:
    struct Node
    {
        std::vector<double> theta;
        Matrix inv;      // M^{-1}
        Matrix inv22;    // M_22^{-1} (nested criterion only)
        double weight = 0.0;  // joint weight p(theta) dtheta
        double ratio = 0.0;   // log(|M|^{1/2} / |M_22|^{1/2})
    };
    struct Group
    {
        std::size_t begin = 0, end = 0;
        double weight = 0.0;  // outer weight p(theta_1) dtheta_1
        double mean_ratio = 0.0;
    };

    ModelSpec model_;
    CriterionKind kind_;
    Design design_;
    double bound_ = 0.0;
    std::vector<Node> nodes_;
    std::vector<Group> groups_;
};

double sensitivity_D(const Design& d,
                     double x,
                     const ModelSpec& m,
                     const ParamBox& box,
                     CriterionKind prior = CriterionKind::BayesDUniform,
                     const QuadratureRule& q = {});
double sensitivity_J(const Design& d, double x, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});
double sensitivity_BB(const Design& d, double x, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});

inline constexpr int kDefaultGrid = 500;
inline constexpr double kDefaultVerifyTol = 2e-3;

struct SensitivityReport
{
    CriterionKind criterion = CriterionKind::BayesDUniform;
    std::vector<double> grid;
    std::vector<double> values;
    double bound = 0.0;
    double max_violation = 0.0;
    std::vector<double> support_values;
    std::vector<double> support_residuals;
    /// sum_i w_i d(x_i); equals the bound for any nonsingular design
    double weighted_average = 0.0;
    double tol = kDefaultVerifyTol;
    bool pass = false;
};

/// Evaluates the sensitivity on grid_size equispaced points plus the support.
SensitivityReport verify_design(const Design& d,
                                const Criterion& crit,
                                int grid_size = kDefaultGrid,
                                double tol = kDefaultVerifyTol);

SensitivityReport verify_design(const Design& d,
                                CriterionKind kind,
                                const ModelSpec& m,
                                const ParamBox& box,
                                int grid_size = kDefaultGrid,
                                double tol = kDefaultVerifyTol,
                                const QuadratureRule& q = {});

/// CSV with header x,sensitivity,bound and 17 significant digits.
void write_sensitivity_csv(const SensitivityReport& r, std::ostream& os);
void write_sensitivity_csv(const SensitivityReport& r, const std::string& path);

/**
 * Smoke test for quadrature instability: flags an adjacent-grid slope more than
 * ten times the larger of its neighbouring slopes. Returns the offending grid
 * indices (empty when the curve looks continuous).
 */
std::vector<std::size_t> continuity_breaks(const SensitivityReport& r);

} // namespace noninfo

#endif // NONINFO_EQUIVALENCE_HPP
