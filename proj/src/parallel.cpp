#include "tomokit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tomokit {

static int env_threads() {
    static const int cached = [] {
        const char* v = std::getenv("TOMOKIT_THREADS");
        if (!v) return 1;
        int t = std::atoi(v);
        return t < 1 ? 1 : t;
    }();
    return cached;
}

int thread_budget(int n) {
    int t = env_threads();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw > 0 && t > static_cast<int>(hw)) t = static_cast<int>(hw);
    return t < n ? t : (n > 0 ? n : 1);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int t = thread_budget(n);
    if (t <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tomokit
