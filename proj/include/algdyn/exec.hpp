#pragma once

#include <cstddef>
#include <functional>

namespace algdyn {

// Worker-pool configuration handed down from the front end.  Work is split
// into fixed chunks whose results the caller merges in chunk order, so the
// outcome never depends on the thread count.
struct ExecContext {
    int threads = 1;
};

// Calls body(i) for every i in [0, n), spread over ctx.threads workers.
// If calls throw, the exception from the lowest index is rethrown after all workers stop.
void parallel_for(const ExecContext& ctx, std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace algdyn
