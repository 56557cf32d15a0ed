#ifndef NONINFO_CRITERIA_HPP
#define NONINFO_CRITERIA_HPP

#include "noninfo/design.hpp"
#include "noninfo/models.hpp"
#include "noninfo/parallel.hpp"
#include "noninfo/quadrature.hpp"

#include <limits>
#include <memory>
#include <string_view>
#include <vector>

namespace noninfo
{

enum class CriterionKind
{
    BayesDUniform,
    BayesDFunctionalUniform,
    Jeffreys,
    BergerBernardo,
};

std::string_view to_string(CriterionKind kind);
CriterionKind criterion_kind_from_string(std::string_view name);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/**
 * Normalized functional-uniform density over the active coordinates of a box:
 * |M(nu, theta)|^{1/2} with nu the uniform measure on the design space, divided by
 * its integral. Precomputed on the tensor grid once per (model, box, rule).
 */
class FunctionalUniformPrior
{
public:
    FunctionalUniformPrior(const ModelSpec& m, const ParamBox& box, const QuadratureRule& rule);

    /// Density at an arbitrary parameter value (0 where |M(nu, theta)| vanishes).
    /// Inert coordinates are read at the box midpoint.
    double density(const std::vector<double>& theta) const;
    /// Density at the tensor nodes, in tensor_nodes order.
    const std::vector<double>& node_density() const { return node_density_; }

private:
    double unnormalized(const std::vector<double>& theta) const;

    ModelSpec model_;
    QuadratureRule rule_;
    std::vector<double> mid_;
    std::vector<bool> inert_;
    double inert_volume_ = 1.0;
    double normalizer_ = 0.0;
    std::vector<double> node_density_;
};

/**
 * A design criterion bound to a model, a parameter box and a quadrature rule.
 *
 * value() follows the criterion's own scale: Phi_D is an expected log-determinant,
 * Phi_J and Phi_BB are integrals on the linear scale. objective() is the quantity
 * the optimizer maximizes (Phi_D, log Phi_J, log Phi_BB); it is kNegInf on designs
 * with singular information.
 *
 * Dropped constants: Phi_D integrates log|M| against the normalized prior on the
 * active coordinates with inert coordinates at their midpoint; Phi_J and Phi_BB
 * carry the inert volume as a factor. Inert coordinates change |M| only by a
 * design-independent factor, so the argmax is unaffected.
 */
class Criterion
{
public:
    Criterion(ModelSpec model, CriterionKind kind, ParamBox box, QuadratureRule rule = {}, Exec exec = Exec::Parallel);

    const ModelSpec& model() const { return model_; }
    CriterionKind kind() const { return kind_; }
    const ParamBox& box() const { return box_; }
    const QuadratureRule& rule() const { return rule_; }
    Exec exec() const { return exec_; }

    double value(const Design& d) const;
    double objective(const Design& d) const;

    /// Flattened nodes over all active coordinates (prior-based criteria).
    const ThetaNodes& nodes() const { return nodes_; }
    /// Normalized prior weights at nodes() for the Bayes-D criteria.
    const std::vector<double>& prior_weights() const { return prior_weights_; }

    /// Outer (interest) and inner (nuisance) grids for the nested criterion.
    const ThetaNodes& outer_nodes() const { return outer_; }
    const std::vector<ThetaNodes>& inner_nodes() const { return inner_; }

private:
    double bayes_d(const Design& d) const;
    double log_jeffreys(const Design& d) const;
    double log_berger_bernardo(const Design& d) const;

    ModelSpec model_;
    CriterionKind kind_;
    ParamBox box_;
    QuadratureRule rule_;
    Exec exec_;
    ThetaNodes nodes_;
    std::vector<double> prior_weights_;
    ThetaNodes outer_;
    std::vector<ThetaNodes> inner_;
    double log_inert_volume_ = 0.0;
    double log_inert_volume_interest_ = 0.0;
};

/// Bayes-D with the uniform prior on the active coordinates.
double phi_D(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});
/// Bayes-D with the functional-uniform prior.
double phi_D_functional_uniform(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});
double phi_J(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});
double phi_BB(const Design& d, const ModelSpec& m, const ParamBox& box, const QuadratureRule& q = {});

double functional_uniform_density(const std::vector<double>& theta,
                                  const ModelSpec& m,
                                  const ParamBox& box,
                                  const QuadratureRule& q = {});

/**
 * Conditional reference density of the nuisance block given the interest block,
 * |M_22|^{1/2} / int |M_22|^{1/2} d theta_2, at the full parameter vector theta.
 * The integral runs over the active nuisance coordinates of the box; inert
 * nuisance coordinates count as uniform.
 */
double bb_conditional_density(const std::vector<double>& theta,
                              const Design& d,
                              const ModelSpec& m,
                              const ParamBox& box,
                              const QuadratureRule& q = {});

/**
 * Marginal reference density of the interest block at theta (nuisance entries of
 * theta are ignored). Inner log-ratios at singular nodes are skipped and counted;
 * more than 1% skipped throws std::runtime_error.
 */
double bb_marginal_density(const std::vector<double>& theta,
                           const Design& d,
                           const ModelSpec& m,
                           const ParamBox& box,
                           const QuadratureRule& q = {});

/**
 * log of int_0^inf |M(xi, theta)|^{1/2} d theta_{n+2} for the exponential-variance
 * polynomial model at theta_{n+1} = 1, evaluated in canonical moments:
 *   n(n+1)/2 log b + sum_j (n-j+1)/2 log(q_{2j-2} p_{2j-1} q_{2j-1} p_{2j})
 *     + 1/2 log(p_1 p_2 q_1) - log(sum_{j<=2n+1} q_{j-1} p_j).
 * Only defined for (n+1)-point designs; kNegInf otherwise.
 */
double log_phi_J_halfline(const Design& d, const ModelSpec& m);

} // namespace noninfo

#endif // NONINFO_CRITERIA_HPP
