#ifndef NONINFO_MODELS_HPP
#define NONINFO_MODELS_HPP

#include "noninfo/design.hpp"
#include "noninfo/linalg.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace noninfo
{

enum class ModelKind
{
    HeteroPolyExp,     // polynomial mean, variance theta_{n+1} exp(theta_{n+2} x) on [0, b]
    HeteroPolyJacobi,  // polynomial mean, variance (1-x)^{-theta_{n+1}-1} (1+x)^{-theta_{n+2}-1} on (-1, 1)
    Emax,              // theta_0 + theta_1 x / (x + theta_2), variance theta_3
    Compartment,       // theta_0 (exp(-theta_1 x) - exp(-theta_2 x)), variance theta_3
    HomoscedasticPoly, // polynomial mean, unit variance; information does not depend on theta
};

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

class ParameterError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * A regression model with normal errors together with its design space and the
 * (interest, nuisance) split of the parameter vector. Parameters are ordered
 * theta_0, ..., theta_{k-1}; the first k1 form the block of interest.
 */
class ModelSpec
{
public:
    static ModelSpec hetero_poly_exp(int degree, double b);
    static ModelSpec hetero_poly_jacobi(int degree, double epsilon = 1e-6);
    static ModelSpec emax(Interval space = {0.0, 4.0});
    static ModelSpec compartment(Interval space = {0.0, 20.0});
    static ModelSpec homoscedastic_poly(int degree, Interval space = {-1.0, 1.0});

    ModelKind kind() const { return kind_; }
    int degree() const { return degree_; }
    int k() const { return k1_ + k2_; }
    int k1() const { return k1_; }
    int k2() const { return k2_; }
    const Interval& design_space() const { return space_; }
    /// Clipping distance from +-1 for the Jacobi variance model.
    double epsilon() const { return epsilon_; }

    /**
     * Coordinates whose effect on |M| is a xi-independent factor (or which do not
     * enter at all); criteria hold them at a representative value.
     */
    std::vector<bool> default_inert() const;

    /// Throws ParameterError if theta is outside the admissible domain.
    void check_theta(std::span<const double> theta) const;

    /// Gradient of the mean function (length k1).
    Vector mean_gradient(double x, std::span<const double> theta) const;

private:
    ModelSpec(ModelKind kind, int degree, int k1, int k2, Interval space)
        : kind_(kind), degree_(degree), k1_(k1), k2_(k2), space_(space)
    {
    }

    ModelKind kind_;
    int degree_ = 0;
    int k1_ = 0;
    int k2_ = 0;
    Interval space_;
    double epsilon_ = 0.0;
};

/// Fisher information at a single point: k x k, block diagonal in (k1, k2).
Matrix fisher_info_point(const ModelSpec& m, double x, std::span<const double> theta);

/// M(xi, theta) = sum_i w_i I(x_i, theta).
Matrix info_matrix(const ModelSpec& m, const Design& d, std::span<const double> theta);

namespace detail
{
/// acc += weight * I(x, theta); no validation of x or theta.
void accumulate_info(const ModelSpec& m, double x, std::span<const double> theta, double weight, Matrix& acc);
/// Sum over the design's support; no validation.
void design_info(const ModelSpec& m, const Design& d, std::span<const double> theta, Matrix& out);
} // namespace detail

/// Information under the uniform measure on the design space, by composite
/// Gauss-Legendre quadrature with roughly x_nodes nodes in equal panels.
Matrix info_matrix_uniform(const ModelSpec& m, std::span<const double> theta, int x_nodes);

} // namespace noninfo

#endif // NONINFO_MODELS_HPP
