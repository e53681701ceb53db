#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace equilab::rng {

// Monte Carlo streams are chunked: chunk i always derives its own engine from
// (seed, i) and always draws the same variates in the same order. Workers
// claim whole chunks, so results are bit-identical for any thread count.
inline constexpr std::size_t kChunkSize = 4096;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (chunk + 1);
    return std::mt19937_64(mix64(mix64(s)));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined draw order of uniform_real_distribution.
inline double canonical(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Runs fn(chunk_index, begin, end) over [0, count) split into kChunkSize
// pieces. fn must write only to slots in [begin, end). Exceptions from
// workers are rethrown on the calling thread.
inline void for_each_chunk(std::size_t count, int threads,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t n_chunks = (count + kChunkSize - 1) / kChunkSize;
    auto run = [&](std::size_t c) {
        const std::size_t begin = c * kChunkSize;
        const std::size_t end = begin + kChunkSize < count ? begin + kChunkSize : count;
        fn(c, begin, end);
    };
    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks || failed.load()) return;
            try {
                run(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_workers = threads < static_cast<int>(n_chunks)
                              ? threads
                              : static_cast<int>(n_chunks);
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace equilab::rng
