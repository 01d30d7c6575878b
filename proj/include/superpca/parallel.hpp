#pragma once

namespace superpca {

// Worker count the parallel kernels will use: SUPERPCA_THREADS when set to a
// positive value, otherwise the OpenMP default (0/unset = auto).
int worker_thread_count();

// Applies the SUPERPCA_THREADS cap process-wide. Called once by the CLI tools.
void apply_thread_cap();

}  // namespace superpca
