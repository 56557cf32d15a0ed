#ifndef NONINFO_PARALLEL_HPP
#define NONINFO_PARALLEL_HPP

#include <span>

namespace noninfo
{

/// Execution policy for the node/grid/restart loops. Serial is the reference path;
/// both produce bit-identical results because reductions never depend on thread order.
enum class Exec
{
    Serial,
    Parallel,
};

/// Reads NONINFO_THREADS and caps the OpenMP thread count accordingly. Returns the cap in effect.
int configure_threads_from_env();

/// Current OpenMP thread cap.
int max_threads();

/// Pairwise summation in index order; independent of how the terms were produced.
double pairwise_sum(std::span<const double> terms);

} // namespace noninfo

#endif // NONINFO_PARALLEL_HPP
