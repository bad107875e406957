#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"
#include "algwatch/testing/oracles.hpp"

using namespace algwatch;

namespace {

double mean_flips(double p, unsigned n, int samples, std::uint64_t seed) {
    BinarySymmetricChannel chan(p);
    RandomSource rng(seed);
    double total = 0.0;
    for (int i = 0; i < samples; ++i) total += hamming_distance(0, chan.transmit(0, n, rng));
    return total / samples;
}

}  // namespace

TEST(Channel, CrossoverRange) {
    EXPECT_THROW(BinarySymmetricChannel(-0.1), RangeError);
    EXPECT_THROW(BinarySymmetricChannel(0.6), RangeError);
    EXPECT_NO_THROW(BinarySymmetricChannel(0.5));
}

TEST(Channel, NoiselessIsIdentity) {
    BinarySymmetricChannel chan(0.0);
    RandomSource rng(1);
    for (Word x = 0; x < 256; ++x) EXPECT_EQ(chan.transmit(x, 8, rng), x);
}

TEST(Channel, FlipCountsMatchCrossover) {
    const int samples = 10000;
    for (double p : {0.5, 0.1}) {
        const double sd = std::sqrt(8 * p * (1 - p) / samples);
        EXPECT_NEAR(mean_flips(p, 8, samples, 9), 8 * p, 3 * sd) << "p=" << p;
    }
}

TEST(Channel, NoiseStaysInsideTheField) {
    BinarySymmetricChannel chan(0.5);
    RandomSource rng(2);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(chan.sample_noise(5, rng), 32u);
}

TEST(Channel, RadiusExamples) {
    EXPECT_EQ(radius_for_epsilon(8, 0.1, 0.01).r, oracle::radius(8, 0.1, 0.01));
    EXPECT_EQ(radius_for_epsilon(8, 0.1, 0.01).r, 3u);
    EXPECT_EQ(radius_for_epsilon(8, 0.0, 0.01).r, 0u);
    EXPECT_EQ(radius_for_epsilon(8, 0.5, 1.0 / 512).r, 8u);
    EXPECT_EQ(radius_for_epsilon(8, 0.1, 0.01).epsilon, 0.01);
}

TEST(Channel, RadiusArguments) {
    EXPECT_THROW(radius_for_epsilon(8, 0.1, 0.0), RangeError);
    EXPECT_THROW(radius_for_epsilon(8, 0.1, 1.0), RangeError);
    EXPECT_THROW(radius_for_epsilon(8, 1.5, 0.1), RangeError);
}

TEST(Channel, RadiusMatchesExactOracle) {
    for (unsigned n : {2u, 5u, 9u, 16u})
        for (double p : {0.001, 0.03, 0.1, 0.25, 0.5})
            for (double eps : {1e-4, 0.01, 0.2}) EXPECT_EQ(radius_for_epsilon(n, p, eps).r, oracle::radius(n, p, eps));
}

TEST(Channel, RadiusIsMonotone) {
    for (unsigned n : {4u, 8u, 12u, 16u}) {
        const double ps[] = {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
        const double epss[] = {0.3, 0.1, 0.05, 0.01, 0.001, 1e-6};
        for (std::size_t i = 0; i + 1 < std::size(ps); ++i)
            for (double eps : epss)
                EXPECT_LE(radius_for_epsilon(n, ps[i], eps).r, radius_for_epsilon(n, ps[i + 1], eps).r);
        for (double p : ps)
            for (std::size_t j = 0; j + 1 < std::size(epss); ++j)
                EXPECT_LE(radius_for_epsilon(n, p, epss[j]).r, radius_for_epsilon(n, p, epss[j + 1]).r);
    }
}

TEST(Channel, BallVolume) {
    EXPECT_EQ(ball_volume(8, 2), 37u);
    EXPECT_EQ(ball_volume(8, 0), 1u);
    EXPECT_EQ(ball_volume(8, 8), 256u);
    EXPECT_EQ(ball_volume(16, 16), 65536u);
    EXPECT_THROW(ball_volume(8, 9), RangeError);
}

TEST(Channel, BallEnumerationOrder) {
    EXPECT_EQ(ball_enumerate(0b0000, 4, 1), (std::vector<Word>{0b0000, 0b0001, 0b0010, 0b0100, 0b1000}));
    EXPECT_EQ(ball_enumerate(0b1010, 4, 0), std::vector<Word>{0b1010});
    EXPECT_THROW(ball_enumerate(0, 4, 5), RangeError);
}

TEST(Channel, BallMembersAreDistinctAndWithinRadius) {
    for (unsigned n : {3u, 8u, 11u})
        for (unsigned r = 0; r <= n; ++r) {
            const Word center = (0x5A5Au) & ((Word{1} << n) - 1);
            const auto ball = ball_enumerate(center, n, r);
            ASSERT_EQ(ball.size(), ball_volume(n, r));
            ASSERT_EQ(std::set<Word>(ball.begin(), ball.end()).size(), ball.size());
            unsigned last = 0;
            for (Word w : ball) {
                const unsigned d = hamming_distance(w, center);
                ASSERT_LE(d, r);
                ASSERT_GE(d, last);
                last = d;
            }
        }
}

TEST(Channel, LogLikelihood) {
    const BinarySymmetricChannel chan(0.1);
    EXPECT_NEAR(log_likelihood(chan, 0b00000000, 0b00000011, 8), 2 * std::log(0.1) + 6 * std::log(0.9), 1e-12);
    EXPECT_NEAR(log_likelihood(chan, 0b00000000, 0b00000011, 8), -5.237333, 1e-6);
    EXPECT_EQ(log_likelihood(BinarySymmetricChannel(0.0), 1, 1, 8), 0.0);
    EXPECT_TRUE(std::isinf(log_likelihood(BinarySymmetricChannel(0.0), 1, 0, 8)));
}

TEST(Channel, BallMassEqualsBinomialCdf) {
    for (unsigned n : {4u, 8u, 10u})
        for (double p : {0.05, 0.1, 0.3}) {
            const BinarySymmetricChannel chan(p);
            for (unsigned r = 0; r <= n; ++r) {
                double mass = 0.0;
                for (Word w : ball_enumerate(0, n, r)) mass += std::exp(log_likelihood(chan, 0, w, n));
                EXPECT_NEAR(mass, oracle::binomial_cdf(n, p, r), 1e-12) << n << ' ' << p << ' ' << r;
            }
        }
}
