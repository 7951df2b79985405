#pragma once

// Minimal deterministic work-sharing: the item range is cut into fixed-size
// blocks, worker threads grab blocks, and the caller combines per-block
// results in block order.  Results are therefore bit-identical for any
// thread count.  CV2DESIGN_THREADS caps the pool (default: hardware).

#include <cstdint>
#include <functional>

namespace cv2design {

int max_threads();

// Invokes fn(block_index, begin, end) for consecutive blocks covering
// [0, n).  fn must only write state owned by its block.
void parallel_blocks(std::int64_t n, std::int64_t block_size,
                     const std::function<void(std::int64_t, std::int64_t,
                                              std::int64_t)>& fn);

}  // namespace cv2design
