#ifndef NONINFO_ORTHOPOLY_HPP
#define NONINFO_ORTHOPOLY_HPP

#include <span>
#include <vector>

namespace noninfo
{

/// Monic three-term recurrence pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}.
/// beta[0] is the total mass of the measure.
struct Recurrence
{
    std::vector<double> alpha;
    std::vector<double> beta;
};

/// Nodes (ascending) and weights of a Gauss rule.
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/**
 * Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix built from the
 * first n recurrence coefficients. Weights are beta_0 times the squared first
 * eigenvector components.
 */
GaussRule gauss_from_recurrence(const Recurrence& rec, int n);

/// Eigenvalues only, ascending.
std::vector<double> jacobi_matrix_eigenvalues(std::span<const double> diag, std::span<const double> offdiag_sq);

/// n-point Gauss-Legendre rule mapped to [lo, hi]. Cached per n.
GaussRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

/**
 * Recurrence coefficients of a discrete measure sum_j w_j delta_{x_j} via Lanczos
 * with full reorthogonalization. Stops once the residual squared norm falls below
 * rel_tol * scale^2 (scale = spread of the points), so at most size() terms.
 */
Recurrence discrete_recurrence(std::span<const double> x,
                               std::span<const double> w,
                               int max_terms,
                               double rel_tol,
                               double scale);

/// Monic Laguerre L^{(alpha)} recurrence: alpha_k = 2k+alpha+1, beta_k = k(k+alpha).
Recurrence laguerre_recurrence(int n, double alpha);

/// Monic Jacobi P^{(a,b)} recurrence on [-1, 1].
Recurrence jacobi_recurrence(int n, double a, double b);

/// Classical (non-monic) Laguerre polynomial L_n^{(alpha)}(t).
double laguerre_value(int n, double alpha, double t);

/// Classical (non-monic) Jacobi polynomial P_n^{(a,b)}(x).
double jacobi_value(int n, double a, double b, double x);

} // namespace noninfo

#endif // NONINFO_ORTHOPOLY_HPP
