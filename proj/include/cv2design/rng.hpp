#pragma once

// Counter-based random generator.  Each (seed, stream) pair yields an
// independent deterministic sequence, so per-sample streams make Monte-Carlo
// averages identical no matter how the samples are scheduled across threads.

#include <cstdint>

namespace cv2design {

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        key_ = mix(seed ^ 0xa0761d6478bd642fULL) +
               0x8ebc6af09c88c6e3ULL * mix(stream ^ 0xe7037ed1a0b428dbULL);
        key_ = mix(key_);
    }

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix(key_ + counter_);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() {
        return double(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    // uniform in [0, hi)
    double next_uniform(double hi) { return next_double() * hi; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace cv2design
