#pragma once

#include <cstdint>
#include <vector>

#include "algwatch/gf2n.hpp"
#include "algwatch/random.hpp"

namespace algwatch {

inline unsigned hamming_distance(Word a, Word b) noexcept { return static_cast<unsigned>(__builtin_popcount(a ^ b)); }

/// Memoryless binary symmetric channel over n-bit payloads.
class BinarySymmetricChannel {
public:
    /// Throws RangeError unless 0 <= crossover <= 0.5.
    explicit BinarySymmetricChannel(double crossover);

    double crossover() const noexcept { return p_; }

    /// Error pattern with each of the low n bits set independently with probability p.
    Word sample_noise(unsigned n, RandomSource& rng) const;
    Word transmit(Word payload, unsigned n, RandomSource& rng) const { return payload ^ sample_noise(n, rng); }

private:
    double p_;
};

/// A Hamming radius chosen so that the ball around an observation holds at
/// least 1 - epsilon of the channel's probability mass.
struct Radius {
    unsigned r = 0;
    double epsilon = 0.0;
};

/// Smallest r with P(Binomial(n, p) <= r) >= 1 - eps. Throws RangeError unless 0 < eps < 1.
Radius radius_for_epsilon(unsigned n, double p, double eps);

/// Sum_{k<=r} C(n, k). Throws RangeError when r > n.
std::uint64_t ball_volume(unsigned n, unsigned r);

/// Words within distance r of center, ordered by (distance, value). Throws RangeError when r > n.
std::vector<Word> ball_enumerate(Word center, unsigned n, unsigned r);

/// ln P(received | sent) = k ln p + (n - k) ln(1 - p). Impossible observations
/// on a noiseless channel give -infinity.
double log_likelihood(const BinarySymmetricChannel& chan, Word sent, Word received, unsigned n);

}  // namespace algwatch
