#pragma once

namespace adl {

// Worker count for OpenMP kernels: an explicit request wins, else the
// ADL_JOBS environment variable, else the OpenMP default.  Always >= 1.
int resolve_jobs(int requested);

}  // namespace adl
