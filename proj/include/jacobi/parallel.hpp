#pragma once

#include <cstdlib>

#include <omp.h>

namespace jacobi::parallel {

// Thread cap for batch sweeps: JACOBI_INVERSE_THREADS when set to a positive
// integer, the OpenMP default otherwise.
inline int sweep_threads() {
  if (const char* env = std::getenv("JACOBI_INVERSE_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) return requested;
  }
  return omp_get_max_threads();
}

}  // namespace jacobi::parallel
