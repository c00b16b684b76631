#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace rmtlab {

// Seeded random stream. The engine is mt19937_64 (19937-bit state); each
// (seed, stream) pair is expanded through SplitMix64 and std::seed_seq, so
// substreams for different replicate indices are independently seeded.
// Uniform, normal and gamma variates are produced by code in this library
// rather than <random> distributions, which keeps streams bit-identical
// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    // Substream derived from this stream's (seed, stream) identity.
    Rng substream(std::uint64_t index) const;

    std::uint64_t bits() { return engine_(); }
    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    // Index uniform on {0, ..., k-1}.
    std::uint64_t below(std::uint64_t k);

    // Standard normal, Marsaglia polar method.
    double normal();
    // Complex normal with independent parts of variance 1/2.
    std::complex<double> complex_normal();
    // Gamma(shape, 1), Marsaglia-Tsang squeeze.
    double gamma(double shape);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace rmtlab
