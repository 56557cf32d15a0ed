#ifndef NONINFO_POLYOPT_HPP
#define NONINFO_POLYOPT_HPP

#include "noninfo/design.hpp"
#include "noninfo/quadrature.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace noninfo
{

/// Newton failure; carries the infinity norm of the last residual.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Mean of a prior coordinate under the uniform distribution on its interval.
inline double gamma_stat(const ParamCoord& c) { return 0.5 * (c.lo + c.hi); }

/// Roots of L_n^{(alpha)}(scale * x), ascending (the Laguerre roots divided by scale).
std::vector<double> laguerre_roots(int n, double alpha, double scale);

/// Roots of P_degree^{(g1, g2)} in (-1, 1), ascending.
std::vector<double> jacobi_roots(int degree, double g1, double g2);

/**
 * Canonical moments on [-1, 1] of the equal-weight design at the roots of
 * P_{n+1}^{(g1, g2)}:
 *   p_{2i-1} = (g2 + n + 2 - i) / (g1 + g2 + 2(n + 2 - i)),
 *   p_{2i}   = (n + 1 - i) / (g1 + g2 + 2(n + 1 - i) + 1),  i = 1..n+1.
 * These maximize the reduced Berger-Bernardo criterion in p_1..p_{2n+1}; the last
 * value is the terminal 0.
 */
CanonicalMomentSeq jacobi_canonical_moments(int n, double g1, double g2);

/**
 * Stationarity equations of the Jeffreys criterion for the exponential-variance
 * polynomial model in the free canonical moments p_1..p_{2n-1} (with p_{2n} = 1).
 * Returns 2n-1 residuals.
 */
std::vector<double> jeffreys_system_residual(int n, std::span<const double> p);

/// Solves the Jeffreys system; the result lives on [0, 1] and ends in the terminal 1.
CanonicalMomentSeq solve_jeffreys_system(int n);

/// Jeffreys-optimal (n+1)-point design on [0, b] from the system above.
Design jeffreys_design_exp(int n, double b);

/**
 * Stationarity equations for the Berger-Bernardo criterion below the Laguerre
 * threshold, in p_1..p_{2n-1} with p_{2n} = 1; q0 enters the i = 1 equation.
 */
std::vector<double> bb_exp_system_residual(int n, double b_gamma, std::span<const double> p, double q0 = 1.0);

/// Solves the system above by continuation in b*gamma from 0. Result on [0, 1].
CanonicalMomentSeq solve_bb_exp_system(int n, double b_gamma, double q0 = 1.0);

/// Largest root of L_n^{(1)}.
double laguerre_threshold(int n);

/// Berger-Bernardo optimal (n+1)-point design for the exponential-variance model on [0, b].
Design bb_design_exp(int n, double b, double gamma);

/// Equal weights at the roots of P_{n+1}^{(g1, g2)}, on the clipped Jacobi design space.
Design bb_design_jacobi(int n, double g1, double g2, double epsilon = 1e-6);

} // namespace noninfo

#endif // NONINFO_POLYOPT_HPP
