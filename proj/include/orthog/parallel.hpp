#ifndef ORTHOG_PARALLEL_HPP
#define ORTHOG_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orthog {

// Minimum element-work before a loop is worth distributing across threads.
inline constexpr long kParallelCutoff = 16 * 1024;

// Reductions are summed over a fixed number of contiguous blocks, each block
// serially, then combined in block order. The result is bit-identical for any
// thread count or schedule.
inline constexpr int kReductionBlocks = 64;

template <class Term>
double blocked_sum(long n, Term&& term) {
    if (n <= 0) return 0.0;
    double partial[kReductionBlocks];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n > 8192)
#endif
    for (int b = 0; b < kReductionBlocks; ++b) {
        const long lo = n * b / kReductionBlocks;
        const long hi = n * (b + 1) / kReductionBlocks;
        double s = 0.0;
        for (long i = lo; i < hi; ++i) s += term(i);
        partial[b] = s;
    }
    double total = 0.0;
    for (int b = 0; b < kReductionBlocks; ++b) total += partial[b];
    return total;
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace orthog

#endif
