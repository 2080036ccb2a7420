#include "ramf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ramf {

namespace {

std::atomic<int> g_override{0};
constexpr std::size_t kChunk = 4096;

cplx pairwise(std::vector<cplx>& v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return v[0];
}

}  // namespace

int thread_count() {
    int o = g_override.load();
    if (o > 0) return o;
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("RAMF_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1) hw = std::min(hw, cap);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

void set_thread_count(int n) { g_override.store(n); }

cplx parallel_sum_chunked(std::size_t n, const std::function<cplx(std::size_t, std::size_t)>& chunk_sum) {
    std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<cplx> part(chunks, 0.0);
    auto work = [&](std::size_t c) { part[c] = chunk_sum(c * kChunk, std::min(n, (c + 1) * kChunk)); };
    int T = std::min<int>(thread_count(), static_cast<int>(chunks));
    if (T <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) work(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t)
            pool.emplace_back([&] {
                for (std::size_t c; (c = next.fetch_add(1)) < chunks;) work(c);
            });
        for (auto& th : pool) th.join();
    }
    return pairwise(part);
}

cplx parallel_sum(std::size_t n, const std::function<cplx(std::size_t)>& f) {
    return parallel_sum_chunked(n, [&](std::size_t b, std::size_t e) {
        cplx s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += f(i);
        return s;
    });
}

}  // namespace ramf
