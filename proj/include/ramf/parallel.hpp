#pragma once

#include <cstddef>
#include <functional>

#include "ramf/common.hpp"

namespace ramf {

// Worker count: min(RAMF_THREADS, hardware), overridable for tests.
int thread_count();
void set_thread_count(int n);

// Sum of f(i) for i in [0, n). Chunk boundaries are fixed and chunk totals are
// combined pairwise, so the result does not depend on the worker count.
cplx parallel_sum(std::size_t n, const std::function<cplx(std::size_t)>& f);

// Sum of f over the chunk [begin, end), accumulated by the caller.
cplx parallel_sum_chunked(std::size_t n, const std::function<cplx(std::size_t, std::size_t)>& chunk_sum);

}  // namespace ramf
