#pragma once

// Deterministic Monte-Carlo matrix mean: samples are grouped into fixed
// blocks, block partials are accumulated in sample order, and the partials
// are combined by a pairwise tree in block order.  The result is therefore
// independent of the number of worker threads.

#include <cstdint>
#include <vector>

#include "cv2design/opalg.hpp"
#include "cv2design/parallel.hpp"

namespace cv2design {

// add_sample(sample_index, accumulator) must add one sample into the
// accumulator (a zero matrix of shape rows x cols at block start).
template <typename AddSample>
ComplexMatrix mc_matrix_mean(Eigen::Index rows, Eigen::Index cols,
                             std::int64_t n_samples, AddSample&& add_sample,
                             std::int64_t block_size = 1024) {
    if (n_samples < 1) {
        throw ParameterError("mc_matrix_mean: need at least one sample");
    }
    const std::int64_t n_blocks = (n_samples + block_size - 1) / block_size;
    std::vector<ComplexMatrix> partial;
    partial.resize(size_t(n_blocks));
    parallel_blocks(n_samples, block_size,
                    [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
                        ComplexMatrix acc = ComplexMatrix::Zero(rows, cols);
                        for (std::int64_t s = lo; s < hi; ++s) {
                            add_sample(s, acc);
                        }
                        partial[size_t(b)] = std::move(acc);
                    });
    // pairwise tree over the block partials, fixed order
    for (std::int64_t stride = 1; stride < n_blocks; stride *= 2) {
        for (std::int64_t b = 0; b + stride < n_blocks; b += 2 * stride) {
            partial[size_t(b)] += partial[size_t(b + stride)];
        }
    }
    return partial[0] / double(n_samples);
}

}  // namespace cv2design
