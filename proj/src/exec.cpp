#include "algdyn/exec.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace algdyn {

void parallel_for(const ExecContext& ctx, std::size_t n, const std::function<void(std::size_t)>& body)
{
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, ctx.threads)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::size_t fail_at = n;
    std::exception_ptr err;
    std::mutex m;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard<std::mutex> lock(m);
                if (i > fail_at) return;
            }
            try {
                body(i);
            } catch (...) {
                // keep the lowest failing index so the reported error is reproducible
                std::lock_guard<std::mutex> lock(m);
                if (i < fail_at) {
                    fail_at = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace algdyn
