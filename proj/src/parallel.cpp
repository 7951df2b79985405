#include "cv2design/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cv2design {

int max_threads() {
    if (const char* env = std::getenv("CV2DESIGN_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void parallel_blocks(std::int64_t n, std::int64_t block_size,
                     const std::function<void(std::int64_t, std::int64_t,
                                              std::int64_t)>& fn) {
    if (n <= 0) return;
    if (block_size <= 0) block_size = 1;
    const std::int64_t n_blocks = (n + block_size - 1) / block_size;
    const int workers =
        int(std::min<std::int64_t>(max_threads(), n_blocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        }
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers - 1));
    for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

}  // namespace cv2design
