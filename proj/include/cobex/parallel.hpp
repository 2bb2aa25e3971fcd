#pragma once
// Minimal block-parallel helper. Work is split into indexed blocks;
// callers merge block results in index order, so outcomes never depend
// on scheduling or worker count.

#include <thread>
#include <vector>

namespace cobex {

template <class F>
void parallel_blocks(int workers, int nblocks, F&& run_block) {
  if (workers <= 1 || nblocks <= 1) {
    for (int b = 0; b < nblocks; ++b) run_block(b);
    return;
  }
  std::vector<std::thread> pool;
  int nthreads = std::min(workers, nblocks);
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([&, t]() {
      for (int b = t; b < nblocks; b += nthreads) run_block(b);
    });
  for (auto& th : pool) th.join();
}

}  // namespace cobex
