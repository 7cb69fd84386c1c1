#ifndef QSV_PARALLEL_HPP
#define QSV_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qsv {

// Worker cap from QSV_THREADS; 0 or unset means hardware concurrency.
inline unsigned worker_threads() {
    if (const char* env = std::getenv("QSV_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(chunk_index, begin, end) over a contiguous partition of [0, n).
// Chunk boundaries depend only on n and the worker count, and callers merge
// per-chunk results in chunk order, so results do not depend on scheduling.
template <class Fn>
void parallel_chunks(std::int64_t n, Fn&& fn) {
    if (n <= 0) return;
    const std::int64_t workers =
        std::min<std::int64_t>(static_cast<std::int64_t>(worker_threads()), n);
    if (workers <= 1) {
        fn(0, std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t base = n / workers;
    const std::int64_t extra = n % workers;
    std::int64_t begin = 0;
    for (std::int64_t c = 0; c < workers; ++c) {
        const std::int64_t len = base + (c < extra ? 1 : 0);
        const std::int64_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace qsv

#endif
