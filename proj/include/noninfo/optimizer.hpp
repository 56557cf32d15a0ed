#ifndef NONINFO_OPTIMIZER_HPP
#define NONINFO_OPTIMIZER_HPP

#include "noninfo/criteria.hpp"
#include "noninfo/equivalence.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace noninfo
{

class OptimizerError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class OptimizerMethod
{
    NelderMead,       // simplex search on transformed coordinates
    CoordinatePolish, // simplex search followed by cyclic one-dimensional refinement
};

std::string_view to_string(OptimizerMethod m);
OptimizerMethod optimizer_method_from_string(std::string_view name);

struct OptimizerOptions
{
    int m = 3;
    int restarts = 24;
    std::uint64_t seed = 7;
    int max_iters = 4000;
    double ftol = 1e-10;
    /// Relative to the design-space length.
    double point_merge_tol = 1e-6;
    OptimizerMethod method = OptimizerMethod::NelderMead;
    Exec exec = Exec::Parallel;

    bool operator==(const OptimizerOptions&) const = default;
};

struct OptimizeResult
{
    Design design;
    double value = kNegInf;
    /// Final objective of each restart, in restart order.
    std::vector<double> restart_values;
    /// Running maximum over restarts.
    std::vector<double> best_so_far;
};

using Objective = std::function<double(const Design&)>;

/// Multistart maximization of an arbitrary objective over m-point designs on iv.
OptimizeResult optimize_design(const Objective& f, Interval iv, const OptimizerOptions& opts);

/// Maximizes crit.objective over m-point designs on the model's design space.
OptimizeResult optimize_design(const Criterion& crit, const OptimizerOptions& opts);

struct VerifiedDesign
{
    OptimizeResult result;
    SensitivityReport report;
    bool escalated = false;
};

/// optimize_design followed by verify_design; one escalation to m + 1 on failure.
VerifiedDesign optimize_and_verify(const Criterion& crit,
                                   const OptimizerOptions& opts,
                                   double tol = kDefaultVerifyTol,
                                   int grid_size = kDefaultGrid);

} // namespace noninfo

#endif // NONINFO_OPTIMIZER_HPP
