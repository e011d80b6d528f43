// SPDX-License-Identifier: Apache-2.0

#include "qtr/parallel.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qtr {

int configure_threads_from_env()
{
    const char *value = std::getenv(kThreadsEnv);
#ifdef _OPENMP
    if (value != nullptr && *value != '\0') {
        const int threads = std::stoi(value);
        if (threads < 1)
            throw std::invalid_argument(std::string(kThreadsEnv) + " must be a positive integer");
        omp_set_num_threads(threads);
    }
    return omp_get_max_threads();
#else
    (void)value;
    return 1;
#endif
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
#ifdef _OPENMP
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i)
        body(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < count; ++i)
        body(i);
#endif
}

} // namespace qtr
