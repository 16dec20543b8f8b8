#pragma once

#include <cstdint>
#include <random>

namespace bivcox {

// Seedable stream-indexed generator. The (seed, stream) pair fully determines
// the output sequence; mt19937_64 single-value seeding is pinned by the
// standard, so sequences are identical across platforms. Parallel replications
// each take their own stream and never share one.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next();

    // uniform on [0, 1), 53-bit resolution
    double uniform01();
    // uniform on the open interval (0, 1); safe to pass to log()
    double uniform_open();
    // standard exponential, rate 1
    double exponential();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    static constexpr const char* algorithm = "mt19937_64/splitmix64";

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

// splitmix64 mixing step, used to decorrelate stream seeds
std::uint64_t splitmix64(std::uint64_t x);

} // namespace bivcox
