// SPDX-License-Identifier: Apache-2.0

#include "mdr/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mdr {

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace mdr
