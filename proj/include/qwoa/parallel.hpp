// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file parallel.hpp
 * Static-partition loops and block reductions.
 *
 * Work is split into fixed-size blocks independent of the thread count, and
 * reductions sum per-block partials in block order, so every result is
 * bit-identical for any number of threads.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qwoa {

namespace detail {
inline std::atomic<unsigned> &thread_setting() {
    static std::atomic<unsigned> count{0}; // 0 = hardware concurrency
    return count;
}
} // namespace detail

inline void set_thread_count(unsigned n) { detail::thread_setting() = n; }

inline unsigned thread_count() {
    unsigned n = detail::thread_setting();
    if (n == 0) {
        n = std::max(1U, std::thread::hardware_concurrency());
    }
    return n;
}

inline constexpr std::size_t kBlockSize = 1U << 14;

/// Calls fn(begin, end) over contiguous blocks of [0, n).
template <class Fn> void parallel_blocks(std::size_t n, Fn &&fn) {
    const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), blocks));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            fn(b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            fn(b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned i = 1; i < threads; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &th : pool) {
        th.join();
    }
}

/// Sum of fn(begin, end) partials over fixed blocks, accumulated in order.
template <class T, class Fn> T block_reduce(std::size_t n, Fn &&fn) {
    const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<T> partial(blocks, T{});
    parallel_blocks(n, [&](std::size_t begin, std::size_t end) {
        partial[begin / kBlockSize] = fn(begin, end);
    });
    T total{};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

} // namespace qwoa
