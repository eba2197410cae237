#include "smectic/parallel.hpp"

#include <cstdlib>
#include <omp.h>

namespace smectic {

void init_threads() {
    static bool done = false;
    if (done) return;
    done = true;
    if (const char* cap = std::getenv("SMECTIC_THREADS")) {
        int n = std::atoi(cap);
        if (n > 0) omp_set_num_threads(n);
    }
}

int max_threads() {
    init_threads();
    return omp_get_max_threads();
}

} // namespace smectic
