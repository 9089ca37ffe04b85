#pragma once

#include <complex>
#include <cstdint>

namespace entwit {

// Splittable counter-style generator built on the SplitMix64 finalizer.
// A (seed, stream) pair fully determines the sequence, which is what makes
// per-sample substreams cheap: dataset generation keys one Rng per record
// index, so results do not depend on how records are distributed across
// worker threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0 so log() in Box-Muller is safe.
    double uniform01();

    // Standard normal via Box-Muller, caching the spare draw.
    double standard_normal();

    // (x + iy)/sqrt(2) with x, y standard normal; unit second moment.
    std::complex<double> standard_complex_normal();

    // Integer in [0, n), rejection-sampled so all values are equally likely.
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace entwit
