#pragma once

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace bandvar {

/// Selects between the OpenMP kernel and the plain serial loop it mirrors.
/// Both paths run the same per-item code and write disjoint output slots, so
/// their results are bit-identical.
enum class Execution { serial, parallel };

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_max_threads(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Restores the previous OpenMP thread cap on scope exit.
class ThreadCountScope {
public:
    explicit ThreadCountScope(int n) : previous_(max_threads()) { set_max_threads(n); }
    ~ThreadCountScope() { set_max_threads(previous_); }
    ThreadCountScope(const ThreadCountScope&) = delete;
    ThreadCountScope& operator=(const ThreadCountScope&) = delete;

private:
    int previous_;
};

}  // namespace bandvar
