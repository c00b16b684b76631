#include "rmtlab/rng.hpp"

#include <cmath>

#include "rmtlab/errors.hpp"

namespace rmtlab {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL * (stream + 1));
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        std::uint64_t v = splitmix64(s);
        words[2 * i] = static_cast<std::uint32_t>(v);
        words[2 * i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words, words + 8);
    return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(make_engine(seed, stream)), seed_(seed), stream_(stream) {}

Rng Rng::substream(std::uint64_t index) const {
    std::uint64_t s = stream_ * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL;
    s ^= index;
    return Rng(seed_, splitmix64(s));
}

double Rng::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t k) {
    require(k > 0, "Rng::below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % k;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::complex<double> Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

double Rng::gamma(double shape) {
    require(shape > 0.0, "Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost to shape + 1, then scale by U^(1/shape).
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace rmtlab
