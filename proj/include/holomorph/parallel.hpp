#ifndef HOLOMORPH_PARALLEL_HPP_
#define HOLOMORPH_PARALLEL_HPP_

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace holomorph {

// Worker count: HOLOMORPH_THREADS if set, otherwise all cores. Results of
// the partitioned scans are merged deterministically, so the thread count
// never changes any output.
inline int default_thread_count() {
  if (const char* env = std::getenv("HOLOMORPH_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, count) into `threads` contiguous chunks and runs
// body(worker, begin, end) on each. Chunk boundaries depend only on count
// and threads, keeping per-worker output stable.
template <class Body>
void run_chunked(long count, int threads, Body&& body) {
  if (threads < 1) threads = 1;
  if (threads == 1 || count <= 1) {
    body(0, 0L, count);
    return;
  }
  if (static_cast<long>(threads) > count) threads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  long base = count / threads, extra = count % threads;
  long begin = 0;
  for (int w = 0; w < threads; ++w) {
    long len = base + (w < extra ? 1 : 0);
    long end = begin + len;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace holomorph

#endif  // HOLOMORPH_PARALLEL_HPP_
