#include "noninfo/linalg.hpp"

#include <cmath>

namespace noninfo
{

std::optional<SpdFactor> SpdFactor::compute(const Matrix& m)
{
    SpdFactor f;
    const auto n = m.rows();
    f.scale_.resize(n);
    double log_diag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double d = m(i, i);
        if (!(d > 0.0) || !std::isfinite(d))
            return std::nullopt;
        f.scale_(i) = 1.0 / std::sqrt(d);
        log_diag += std::log(d);
    }
    const Matrix c = f.scale_.asDiagonal() * m * f.scale_.asDiagonal();
    f.llt_.compute(c);
    if (f.llt_.info() != Eigen::Success)
        return std::nullopt;
    const auto& l = f.llt_.matrixLLT();
    double log_c = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double piv = l(i, i) * l(i, i);
        if (!(piv > kSingularPivotRel))
            return std::nullopt;
        log_c += std::log(piv);
    }
    f.log_det_ = log_diag + log_c;
    return f;
}

double SpdFactor::trace_solve(const Matrix& a) const
{
    // tr(M^{-1} A) = tr(C^{-1} D^{-1/2} A D^{-1/2})
    const Matrix b = scale_.asDiagonal() * a * scale_.asDiagonal();
    return llt_.solve(b).trace();
}

double SpdFactor::quad_form(const Vector& v) const
{
    const Vector u = scale_.asDiagonal() * v;
    return u.dot(llt_.solve(u));
}

Matrix SpdFactor::inverse() const
{
    const auto n = scale_.size();
    const Matrix ci = llt_.solve(Matrix::Identity(n, n));
    return scale_.asDiagonal() * ci * scale_.asDiagonal();
}

std::optional<double> spd_log_det(const Matrix& m)
{
    if (m.rows() == 0)
        return 0.0;
    auto f = SpdFactor::compute(m);
    if (!f)
        return std::nullopt;
    return f->log_det();
}

} // namespace noninfo
