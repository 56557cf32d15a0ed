#ifndef NONINFO_LINALG_HPP
#define NONINFO_LINALG_HPP

#include <Eigen/Dense>

#include <optional>

namespace noninfo
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative pivot threshold below which a PSD matrix is treated as singular.
inline constexpr double kSingularPivotRel = 1e-13;

/**
 * Cholesky factor of a symmetric positive-definite matrix after diagonal
 * equilibration, so the singularity test is scale-free. Empty when the matrix is
 * singular to working precision (or has a nonpositive diagonal entry).
 */
class SpdFactor
{
public:
    static std::optional<SpdFactor> compute(const Matrix& m);

    double log_det() const { return log_det_; }
    /// tr(M^{-1} A) for symmetric A.
    double trace_solve(const Matrix& a) const;
    /// v^T M^{-1} v
    double quad_form(const Vector& v) const;
    Matrix inverse() const;

private:
    Vector scale_;    // D^{-1/2}
    Eigen::LLT<Matrix> llt_;
    double log_det_ = 0.0;
};

/// log|M| for a symmetric PSD matrix, or empty when singular. 0x0 gives 0.
std::optional<double> spd_log_det(const Matrix& m);

} // namespace noninfo

#endif // NONINFO_LINALG_HPP
