#pragma once

namespace bagcheck {

/// Worker count for parallel kernels: the OpenMP default, capped by the
/// BAGCHECK_THREADS environment variable when it holds a positive integer.
int worker_count();

}  // namespace bagcheck
