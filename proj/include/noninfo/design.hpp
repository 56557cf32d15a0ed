#ifndef NONINFO_DESIGN_HPP
#define NONINFO_DESIGN_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace noninfo
{

/// Closed interval [lo, hi] with lo < hi.
struct Interval
{
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool operator==(const Interval&) const = default;
};

class DesignError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Approximate design: a probability measure with finite support on an interval.
 *
 * Support points are strictly increasing and lie in the interval; weights are
 * strictly positive and sum to one. Instances are only produced by make_design,
 * which validates and normalizes the input.
 */
class Design
{
public:
    const Interval& interval() const { return interval_; }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }

    bool operator==(const Design&) const = default;

private:
    friend Design make_design(std::span<const double>, std::span<const double>, Interval, double);

    Interval interval_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// Points closer than merge_rel * (b - a) are merged and their weights summed.
inline constexpr double kDefaultMergeRel = 1e-10;

/**
 * Builds a validated design. Points are sorted, coincident points merged and the
 * weights renormalized to remove rounding (the sum must already be 1 within 1e-9).
 *
 * Throws DesignError on length mismatch, empty input, invalid interval, a point
 * outside the interval, a nonpositive weight or a weight sum off by more than 1e-9.
 */
Design make_design(std::span<const double> points,
                   std::span<const double> weights,
                   Interval interval,
                   double merge_rel = kDefaultMergeRel);

/// Equal weights at the given points.
Design make_uniform_design(std::span<const double> points, Interval interval);

/// Ordinary moments c_1..c_n of a design.
struct MomentVector
{
    std::vector<double> values;

    int order() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
};

MomentVector moments(const Design& d, int n);

/**
 * Canonical moments p_1, p_2, ... of a measure on [a, b].
 *
 * When the last stored value is 0 or 1 and `terminal` is set, higher canonical
 * moments are undefined.
 */
struct CanonicalMomentSeq
{
    Interval interval;
    std::vector<double> values;
    bool terminal = false;

    int size() const { return static_cast<int>(values.size()); }
    /// p_i for i >= 1; past a terminal value returns 0 (the boundary substitution).
    double p(int i) const;
    /// q_i = 1 - p_i with q_0 = 1; past a terminal value returns 1 - p(i).
    double q(int i) const { return i == 0 ? 1.0 : 1.0 - p(i); }
    /// zeta_0 = 0, zeta_1 = p_1, zeta_i = q_{i-1} p_i.
    double zeta(int i) const;
};

/// Values within this distance of 0 or 1 are treated as terminal boundary values.
inline constexpr double kCanonicalBoundaryTol = 1e-10;

/**
 * Canonical moments up to order n, computed from the three-term recurrence of the
 * discrete measure (Lanczos with full reorthogonalization). The sequence stops
 * early at the first boundary value.
 */
CanonicalMomentSeq canonical_moments(const Design& d, int n);

/**
 * Inverse map: the design whose canonical moments are the given terminal sequence.
 * Support = eigenvalues of the Jacobi matrix of the recursion; weights from the
 * ratio of the associated polynomial to the derivative of the orthogonal polynomial.
 */
Design design_from_canonical_moments(const CanonicalMomentSeq& p);

/// det (c_{i+j})_{i,j=0..n} (c_0 = 1) computed from the support and weights, without canonical moments.
double hankel_det(const Design& d, int n);

/// (b-a)^{n(n+1)} prod_{i=1}^n (q_{2i-2} p_{2i-1} q_{2i-1} p_{2i})^{n-i+1}.
double hankel_det_from_canonical(const CanonicalMomentSeq& p, int n);

struct SupportIdentities
{
    double prod_left = 0.0;       // prod (x_i - a)
    double prod_right = 0.0;      // prod (b - x_i)
    double sum_shifted = 0.0;     // sum (x_i - a)
    double prod_left_cm = 0.0;    // canonical-moment counterparts
    double prod_right_cm = 0.0;
    double sum_shifted_cm = 0.0;
};

/// Direct and canonical-moment forms of the support-point identities (n + 1 = size()).
SupportIdentities support_identities(const Design& d);

nlohmann::json to_json(const Design& d);
Design design_from_json(const nlohmann::json& j);

} // namespace noninfo

#endif // NONINFO_DESIGN_HPP
