#include <gtest/gtest.h>

#include <cmath>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"
#include "algwatch/protocol.hpp"
#include "algwatch/testing/oracles.hpp"
#include "algwatch/watchdog.hpp"

using namespace algwatch;

namespace {

HashFunction make_hash(unsigned n, std::vector<Word> coeffs, unsigned h) {
    const auto& f = canonical_spec(n);
    std::vector<FieldElement> elems;
    for (Word c : coeffs) elems.emplace_back(f, c);
    return {std::move(elems), h};
}

// Watcher v1's view of one transmission with explicit noise words.
Observation view(const HashFunction& hf, Word x1, Word x2, Word a1, Word a2, Word error, Word peer_noise,
                 Word relay_noise, double p) {
    const auto& f = hf.field();
    const BinarySymmetricChannel c(p);
    const auto scn = make_scenario(hf, {f, x1}, {f, x2}, {f, a1}, {f, a2}, {c, c, c, c}, 0.01, true);
    const std::array<Packet, 2> src{source_packet(scn, 1), source_packet(scn, 2)};
    return observe_with_noise(1, scn, src, relay_packet_with_error(scn, error), peer_noise, relay_noise);
}

Observation random_view(RandomSource& rng, unsigned n, unsigned h, double p, bool corrupt) {
    const auto& f = canonical_spec(n);
    const auto hf = sample_hash(rng, 3, f, h);
    const BinarySymmetricChannel c(p);
    const Word mask = f.mask();
    auto pick = [&] { return static_cast<Word>(rng.below(f.order())); };
    auto nonzero = [&] { return static_cast<Word>(rng.between(1, mask)); };
    const Word x1 = pick(), x2 = pick(), a1 = nonzero(), a2 = nonzero();
    const Word e = corrupt ? nonzero() : 0;
    return view(hf, x1, x2, a1, a2, e, c.sample_noise(n, rng), c.sample_noise(n, rng), p);
}

}  // namespace

TEST(Watchdog, NoiselessCandidateSetIsTheTrueWord) {
    const auto hf = make_hash(8, {3, 5, 7, 11}, 3);
    const auto obs = view(hf, 0x12, 0x34, 3, 7, 0, 0, 0, 0.0);
    const auto peer = candidate_set(obs, CandidateSource::Peer);
    EXPECT_EQ(peer.radius, 0u);
    EXPECT_EQ(peer.members, std::vector<Word>{0x34});
}

TEST(Watchdog, CandidateMembersHashAndLieInTheBall) {
    RandomSource rng(21);
    for (int i = 0; i < 50; ++i) {
        const auto obs = random_view(rng, 10, 4, 0.1, false);
        for (auto which : {CandidateSource::Peer, CandidateSource::Relay}) {
            const auto cs = candidate_set(obs, which);
            const Word center = which == CandidateSource::Peer ? obs.noisy_peer : obs.noisy_relay;
            for (Word w : cs.members) {
                ASSERT_LE(hamming_distance(w, center), cs.radius);
                ASSERT_EQ(obs.hash.evaluate_word(w), cs.target.value);
            }
        }
    }
}

TEST(Watchdog, CandidateSetSizeTracksBallOverHashSpace) {
    // E|set| is about V(8, 3) / 2^4 = 93 / 16.
    RandomSource rng(22);
    double total = 0.0;
    const int draws = 100;
    for (int i = 0; i < draws; ++i)
        total += static_cast<double>(candidate_set(random_view(rng, 8, 4, 0.1, false), CandidateSource::Peer).members.size());
    const double mean = total / draws;
    const double expected = static_cast<double>(ball_volume(8, 3)) / 16.0;
    EXPECT_GT(mean, expected / 2);
    EXPECT_LT(mean, expected * 2);
}

TEST(Watchdog, ForcedRadiusIsClampedToWidth) {
    const auto hf = make_hash(6, {1, 2, 3, 4}, 2);
    const auto obs = view(hf, 1, 2, 3, 4, 0, 0, 0, 0.1);
    EXPECT_EQ(candidate_set(obs, CandidateSource::Relay, 40u).radius, 6u);
}

TEST(Watchdog, NoiselessHonestRelayPasses) {
    const auto hf = make_hash(4, {1, 2, 3, 4}, 2);
    const auto v = algebraic_check(view(hf, 0b0101, 0b0111, 1, 1, 0, 0, 0, 0.0));
    EXPECT_FALSE(v.flagged());
    EXPECT_EQ(v.surviving, 1u);
}

TEST(Watchdog, NoiselessCorruptionIsCaught) {
    const auto hf = make_hash(4, {1, 2, 3, 4}, 2);
    for (Word e = 1; e < 16; ++e) EXPECT_TRUE(algebraic_check(view(hf, 0b0101, 0b0111, 1, 1, e, 0, 0, 0.0)).flagged()) << e;
}

TEST(Watchdog, AlgebraicMatchesDomainScanExhaustively) {
    const auto hf = make_hash(4, {9, 4, 13, 6}, 2);
    for (Word x1 = 0; x1 < 16; ++x1)
        for (Word x2 = 0; x2 < 16; ++x2)
            for (Word e = 0; e < 16; ++e)
                for (unsigned r : {0u, 1u, 2u, 4u}) {
                    const auto obs = view(hf, x1, x2, 3, 11, e, 0, 0, 0.0);
                    ASSERT_EQ(!algebraic_check(obs, r).flagged(), oracle::algebraic_accepts(obs, r, r))
                        << x1 << ' ' << x2 << ' ' << e << ' ' << r;
                }
}

TEST(Watchdog, AlgebraicMatchesDomainScanUnderNoise) {
    RandomSource rng(23);
    for (int i = 0; i < 500; ++i) {
        const auto obs = random_view(rng, 7, 3, 0.15, i % 2 == 1);
        const unsigned r = radius_for_epsilon(7, 0.15, 0.01).r;
        ASSERT_EQ(!algebraic_check(obs).flagged(), oracle::algebraic_accepts(obs, r, r)) << i;
    }
}

TEST(Watchdog, TrellisLayers) {
    RandomSource rng(24);
    const auto obs = random_view(rng, 8, 3, 0.1, false);
    const auto t = build_trellis(obs);
    ASSERT_EQ(t.layer2.size(), t.layer3.size());
    const auto& f = obs.field();
    const Word offset = f.mul(obs.own_coeff.value(), obs.own_value.value());
    for (std::size_t i = 0; i < t.layer2.size(); ++i) {
        ASSERT_EQ(t.layer3[i], offset ^ f.mul(obs.peer_coeff.value(), t.layer2[i]));
        const bool from_start = obs.hash.evaluate_word(t.layer2[i]) == obs.peer_hash.value;
        const bool to_dest = obs.hash.evaluate_word(t.layer3[i]) == obs.relay_hash.value;
        ASSERT_TRUE(from_start || to_dest);
    }
    const auto pre = preimage_set(obs.hash, obs.peer_hash);
    EXPECT_EQ(t.entry.size(), pre.size());
    double total = 0.0;
    for (const auto& e : t.entry) total += e.weight;
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Watchdog, TrellisIsCapped) {
    RandomSource rng(25);
    EXPECT_THROW(build_trellis(random_view(rng, 13, 3, 0.1, false)), CostError);
}

TEST(Watchdog, NoiselessTrellisScores) {
    const auto hf = make_hash(6, {5, 1, 9, 2}, 3);
    EXPECT_DOUBLE_EQ(consistency_probability(build_trellis(view(hf, 11, 42, 3, 5, 0, 0, 0, 0.0))), 1.0);
    EXPECT_DOUBLE_EQ(consistency_probability(build_trellis(view(hf, 11, 42, 3, 5, 1, 0, 0, 0.0))), 0.0);
}

TEST(Watchdog, TrellisMatchesPathEnumeration) {
    RandomSource rng(26);
    for (int i = 0; i < 300; ++i) {
        const auto obs = random_view(rng, 4 + i % 5, 2, 0.1, i % 3 == 0);
        const double score = consistency_probability(build_trellis(obs));
        ASSERT_GE(score, 0.0);
        ASSERT_LE(score, 1.0);
        ASSERT_NEAR(score, oracle::path_sum(obs), 1e-12) << i;
    }
}

TEST(Watchdog, FullRadiusAlgebraicAgreesWithTrellisSupportUnderNoise) {
    // With 0 < p < 1 every word has positive likelihood, so a hash-consistent
    // path exists iff the full-radius check accepts.
    RandomSource rng(27);
    for (int i = 0; i < 500; ++i) {
        const auto obs = random_view(rng, 6, 3, 0.2, i % 2 == 0);
        const bool trellis_accepts = consistency_probability(build_trellis(obs)) > 0.0;
        ASSERT_EQ(!algebraic_check(obs, 6u).flagged(), trellis_accepts) << i;
    }
}

TEST(Watchdog, DecideThreshold) {
    EXPECT_FALSE(decide(0.3, 0.2).flagged());
    EXPECT_TRUE(decide(0.1, 0.2).flagged());
    EXPECT_FALSE(decide(0.2, 0.2).flagged());
    EXPECT_TRUE(decide(0.0).flagged());
    EXPECT_FALSE(decide(1e-10).flagged());
}

TEST(Watchdog, VerdictsAreDeterministic) {
    RandomSource a(28), b(28);
    for (int i = 0; i < 20; ++i) {
        const auto oa = random_view(a, 8, 3, 0.1, true), ob = random_view(b, 8, 3, 0.1, true);
        EXPECT_EQ(algebraic_check(oa).surviving, algebraic_check(ob).surviving);
        EXPECT_EQ(trellis_check(oa).consistency_score, trellis_check(ob).consistency_score);
    }
}

TEST(Watchdog, RaisingTheThresholdTradesMissesForFalseAlarms) {
    RandomSource rng(29);
    std::vector<double> honest, corrupt;
    for (int i = 0; i < 400; ++i) {
        honest.push_back(trellis_check(random_view(rng, 8, 3, 0.1, false)).consistency_score);
        corrupt.push_back(trellis_check(random_view(rng, 8, 3, 0.1, true)).consistency_score);
    }
    auto rate = [](const std::vector<double>& scores, double t) {
        int flagged = 0;
        for (double s : scores) flagged += decide(s, t).flagged();
        return flagged;
    };
    int last_fa = -1, last_det = -1;
    for (double t : {0.0, 1e-9, 1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0}) {
        const int fa = rate(honest, t), det = rate(corrupt, t);
        EXPECT_GE(fa, last_fa);
        EXPECT_GE(det, last_det);
        last_fa = fa;
        last_det = det;
    }
}
