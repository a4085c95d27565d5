#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace risec {

/// Deterministic 64-bit generator with named substreams.
///
/// Core generator is SplitMix64. Substreams are derived as
///   state0 = mix64(mix64(seed ^ fnv1a64(label)) ^ index)
/// where mix64 is the SplitMix64 finalizer applied after adding the odd
/// constant 0x9E3779B97F4A7C15, and fnv1a64 uses offset basis
/// 14695981039346656037 and prime 1099511628211. Every random quantity in
/// the library is drawn from a substream keyed by a purpose label and a
/// chunk or instance index, so results do not depend on evaluation order
/// or worker count.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix64(std::uint64_t v);
    static std::uint64_t fnv1a64(std::string_view bytes);
    static Rng substream(std::uint64_t seed, std::string_view label, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller on the uniform stream.
    double gaussian();

    /// Exponential with the given mean (mean > 0).
    double exponential(double mean);

    /// Circularly symmetric complex normal with unit total variance.
    std::complex<double> complex_gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace risec
