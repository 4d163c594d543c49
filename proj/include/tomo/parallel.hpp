#pragma once

#include <exception>

namespace tomo::detail {

// Runs body(i) for i in [0, n) under OpenMP. Exceptions must not escape a
// parallel region, so the first one thrown is captured and rethrown on the
// calling thread once the loop has drained.
template <typename F>
void parallel_for(int n, F&& body) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(tomo_parallel_for_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace tomo::detail
