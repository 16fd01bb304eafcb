// Deterministic parallel-for used by the exhaustive sweeps. Results must not
// depend on the schedule, so bodies write only to their own index slot.
#pragma once

#include <functional>

namespace spancalc {

// Honors SPANCALC_THREADS when set, otherwise the OpenMP default (1 when
// built without OpenMP).
int thread_count();

void par_for(long n, const std::function<void(long)>& body);

// Serial reference with identical semantics, kept for the benchmark and for
// pinning down schedule-dependence bugs.
void serial_for(long n, const std::function<void(long)>& body);

}  // namespace spancalc
