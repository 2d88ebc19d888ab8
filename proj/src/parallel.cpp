#include "randbound/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace randbound {

int worker_count() {
    if (const char* env = std::getenv("RANDBOUND_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void parallel_chunks(int64_t n, int64_t chunkSize,
                     const std::function<void(int64_t, int64_t, double*)>& chunk,
                     int lanes, const std::function<void(const double*)>& combine) {
    if (n <= 0) return;
    if (chunkSize < 1) chunkSize = 1;
    const int64_t numChunks = (n + chunkSize - 1) / chunkSize;
    std::vector<double> results(static_cast<size_t>(numChunks) * lanes, 0.0);

    const int workers = static_cast<int>(std::min<int64_t>(worker_count(), numChunks));
    if (workers <= 1) {
        for (int64_t c = 0; c < numChunks; ++c) {
            const int64_t b = c * chunkSize;
            chunk(b, std::min(n, b + chunkSize), results.data() + c * lanes);
        }
    } else {
        std::atomic<int64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const int64_t c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= numChunks) break;
                const int64_t b = c * chunkSize;
                chunk(b, std::min(n, b + chunkSize), results.data() + c * lanes);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (int64_t c = 0; c < numChunks; ++c) combine(results.data() + c * lanes);
}

double parallel_sum(int64_t n, int64_t chunkSize, const std::function<double(int64_t)>& f) {
    double total = 0.0;
    parallel_chunks(
        n, chunkSize,
        [&f](int64_t b, int64_t e, double* out) {
            double s = 0.0;
            for (int64_t i = b; i < e; ++i) s += f(i);
            out[0] = s;
        },
        1, [&total](const double* r) { total += r[0]; });
    return total;
}

SumPair parallel_sum_pair(int64_t n, int64_t chunkSize,
                          const std::function<double(int64_t)>& f) {
    SumPair total;
    parallel_chunks(
        n, chunkSize,
        [&f](int64_t b, int64_t e, double* out) {
            double s = 0.0, s2 = 0.0;
            for (int64_t i = b; i < e; ++i) {
                const double v = f(i);
                s += v;
                s2 += v * v;
            }
            out[0] = s;
            out[1] = s2;
        },
        2,
        [&total](const double* r) {
            total.sum += r[0];
            total.sumSq += r[1];
        });
    return total;
}

} // namespace randbound
