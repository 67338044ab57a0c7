#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace levylp {

// Worker cap for intra-verb parallelism (--threads).  Results never depend
// on the cap: work is split into blocks whose boundaries depend only on the
// problem size, each block writes to its own slot, and reductions walk the
// slots in index order.
void set_max_threads(int n);
int max_threads();

// Runs fn(block_index, begin, end) over [0, n) split into blocks of
// block_size (last block short).  Blocks are claimed dynamically by worker
// threads; fn must only write to state owned by its block index.
void parallel_blocks(std::size_t n, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Deterministic pairwise (cascade) summation.
double pairwise_sum(std::span<const double> v);

}  // namespace levylp
