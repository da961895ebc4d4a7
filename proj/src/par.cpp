#include "nlslab/par.hpp"

#include <atomic>
#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlslab {
namespace {

std::atomic<int> g_threads{0};

int hardware_default() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace

void set_num_threads(int n) { g_threads.store(n > 0 ? n : 0); }

int num_threads() {
    int n = g_threads.load();
    return n > 0 ? n : hardware_default();
}

void parallel_for(int n, const std::function<void(int)>& body) {
    if (n <= 0) return;
    int nt = std::min(num_threads(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w) {
        // contiguous block [lo, hi) per worker
        int lo = static_cast<int>(static_cast<long long>(n) * w / nt);
        int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / nt);
        pool.emplace_back([&, lo, hi] {
            try {
                for (int i = lo; i < hi; ++i) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace nlslab
