#include "spancalc/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef SPANCALC_HAVE_OPENMP
#include <omp.h>
#endif

namespace spancalc {

int thread_count() {
  if (const char* env = std::getenv("SPANCALC_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef SPANCALC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void par_for(long n, const std::function<void(long)>& body) {
#ifdef SPANCALC_HAVE_OPENMP
  int threads = thread_count();
  if (threads > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  serial_for(n, body);
}

void serial_for(long n, const std::function<void(long)>& body) {
  for (long i = 0; i < n; ++i) body(i);
}

}  // namespace spancalc
