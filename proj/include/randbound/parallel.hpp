#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace randbound {

/// Worker count: RANDBOUND_THREADS when set (>=1), else all hardware threads.
int worker_count();

/// Splits [0, n) into fixed-size chunks, evaluates `chunk(begin, end, out)` on
/// workers, and hands the per-chunk results to `combine` in chunk order.
/// The chunk layout depends only on (n, chunkSize), so results are identical
/// for every worker count.
void parallel_chunks(int64_t n, int64_t chunkSize,
                     const std::function<void(int64_t, int64_t, double*)>& chunk,
                     int lanes, const std::function<void(const double*)>& combine);

/// Deterministic parallel sum of f over [0, n): per-chunk serial sums reduced
/// in chunk order.
double parallel_sum(int64_t n, int64_t chunkSize, const std::function<double(int64_t)>& f);

/// Deterministic parallel (sum f, sum f^2) for mean/variance accumulation.
struct SumPair {
    double sum = 0.0;
    double sumSq = 0.0;
};
SumPair parallel_sum_pair(int64_t n, int64_t chunkSize,
                          const std::function<double(int64_t)>& f);

} // namespace randbound
