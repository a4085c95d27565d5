#include "risec/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risec {

std::uint64_t Rng::mix64(std::uint64_t v) {
    std::uint64_t z = v + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Rng Rng::substream(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    return Rng(mix64(mix64(seed ^ fnv1a64(label)) ^ index));
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 1 - uniform() lies in (0, 1], keeping the log argument positive.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

double Rng::exponential(double mean) {
    if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be positive");
    return -mean * std::log(1.0 - uniform());
}

std::complex<double> Rng::complex_gaussian() {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return {gaussian() * inv_sqrt2, gaussian() * inv_sqrt2};
}

} // namespace risec
