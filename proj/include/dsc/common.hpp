#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dsc {

/// Error raised when numerical preconditions fail (degenerate frames,
/// umbilic points, chart violations, inadmissible parameters, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

/// Deterministic uniform draw in [-1, 1). mt19937_64 output is pinned by the
/// standard, and the bit mapping below avoids the implementation-defined
/// behavior of std::uniform_real_distribution, so streams are reproducible
/// across platforms.
inline double uniform_pm1(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * u - 1.0;
}

/// Run fn(i) for i in [0, n), possibly on several threads. Results must be
/// written to per-index slots; the caller reduces in index order afterwards.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nthreads = std::min<std::size_t>(hw == 0 ? 1 : hw, 8);
    if (nthreads <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace dsc
