#include "noninfo/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace noninfo
{

int configure_threads_from_env()
{
    if (const char* env = std::getenv("NONINFO_THREADS"))
    {
        try
        {
            const int n = std::stoi(env);
            if (n > 0)
                omp_set_num_threads(n);
        }
        catch (const std::exception&)
        {
            // ignore malformed values
        }
    }
    return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

double pairwise_sum(std::span<const double> terms)
{
    const std::size_t n = terms.size();
    if (n == 0)
        return 0.0;
    if (n <= 8)
    {
        double s = 0.0;
        for (double t : terms)
            s += t;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

} // namespace noninfo
