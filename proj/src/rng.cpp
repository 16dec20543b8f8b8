#include "bivcox/rng.hpp"

#include <cmath>

namespace bivcox {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    engine_.seed(s);
}

std::uint64_t Rng::next() {
    return engine_();
}

double Rng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::exponential() {
    // strictly positive: the open-interval uniform never reaches 0 or 1
    return -std::log(uniform_open());
}

} // namespace bivcox
