#include "superpca/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace superpca {

namespace {

int env_thread_cap() {
    const char* raw = std::getenv("SUPERPCA_THREADS");
    if (!raw) return 0;
    const long n = std::strtol(raw, nullptr, 10);
    return n > 0 ? static_cast<int>(n) : 0;
}

}  // namespace

int worker_thread_count() {
    const int cap = env_thread_cap();
    if (cap > 0) return cap;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void apply_thread_cap() {
#ifdef _OPENMP
    const int cap = env_thread_cap();
    if (cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace superpca
