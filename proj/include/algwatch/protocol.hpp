#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "algwatch/channel.hpp"
#include "algwatch/gf2n.hpp"
#include "algwatch/hashing.hpp"
#include "algwatch/observation.hpp"
#include "algwatch/random.hpp"

namespace algwatch {

/// Coded packet [coefficients, neighbour hashes, own hash, payload]. The
/// first three fields are header data that always arrive intact.
struct Packet {
    std::vector<FieldElement> coeffs;
    std::vector<HashValue> neighbor_hashes;
    HashValue own_hash;
    FieldElement payload;

    friend bool operator==(const Packet&, const Packet&) = default;
};

inline constexpr std::uint8_t kPacketVersion = 1;

/// Wire layout: [u8 version][u8 n][u8 h][u8 count][count coeffs][count
/// neighbour hashes][own hash][payload]. Each value is little-endian and
/// padded to whole bytes (ceil(n/8) or ceil(h/8) bytes). Throws RangeError
/// for internally inconsistent packets.
std::vector<std::uint8_t> encode_packet(const Packet& pkt);

/// Throws DecodeError (with byte offset) on malformed or truncated frames and
/// UnsupportedVersionError when the version byte is not 1.
Packet decode_packet(std::span<const std::uint8_t> bytes);

struct InterferenceChannels {
    BinarySymmetricChannel p12{0.0};
    BinarySymmetricChannel p21{0.0};
    BinarySymmetricChannel p31{0.0};
    BinarySymmetricChannel p32{0.0};
};

/// Two sources v1, v2 sending to v4 through the coding relay v3. The
/// intended links v1->v3, v2->v3 and v3->v4 are error-free.
struct Scenario {
    HashFunction hash;
    FieldElement x1;
    FieldElement x2;
    FieldElement alpha1;
    FieldElement alpha2;
    InterferenceChannels channels;
    double epsilon = 0.01;

    const FieldSpec& field() const noexcept { return x1.spec(); }
    FieldElement honest_relay_value() const { return alpha1 * x1 + alpha2 * x2; }
};

/// Validates field consistency; zero coefficients are rejected unless
/// allow_zero_coeffs is set.
Scenario make_scenario(HashFunction hash, FieldElement x1, FieldElement x2, FieldElement alpha1,
                       FieldElement alpha2, InterferenceChannels channels, double epsilon,
                       bool allow_zero_coeffs = false);

namespace adversary {
struct Honest {
    friend bool operator==(const Honest&, const Honest&) = default;
};
struct RandomNonzeroError {
    friend bool operator==(const RandomNonzeroError&, const RandomNonzeroError&) = default;
};
struct FixedError {
    Word error = 0;
    friend bool operator==(const FixedError&, const FixedError&) = default;
};
/// Uniform over nonzero errors of Hamming weight at most max_weight.
struct WeightBoundedError {
    unsigned max_weight = 1;
    friend bool operator==(const WeightBoundedError&, const WeightBoundedError&) = default;
};
/// Brute-force search for the error most likely to survive both watchers.
struct ExhaustiveBest {
    friend bool operator==(const ExhaustiveBest&, const ExhaustiveBest&) = default;
};
}  // namespace adversary

using AdversaryStrategy = std::variant<adversary::Honest, adversary::RandomNonzeroError, adversary::FixedError,
                                       adversary::WeightBoundedError, adversary::ExhaustiveBest>;

inline constexpr unsigned kMaxExhaustiveWidth = 12;

std::string strategy_name(const AdversaryStrategy& s);
bool is_malicious(const AdversaryStrategy& s);
/// Throws RangeError for fixed_error(0), weight bound 0 or a bound above n.
void validate_strategy(const AdversaryStrategy& s, unsigned n);

/// The error word the relay adds to its honest payload (0 for honest).
/// Throws CostError for ExhaustiveBest above kMaxExhaustiveWidth.
Word choose_error(const Scenario& scn, const AdversaryStrategy& strategy, RandomSource& rng);

Packet source_packet(const Scenario& scn, unsigned source);

/// The relay's packet. A corrupted relay keeps its own hash consistent with
/// the corrupted payload; corrupted coefficients are equivalent to a payload
/// error and are not modelled separately.
Packet relay_output(const Scenario& scn, const AdversaryStrategy& strategy, RandomSource& rng);
Packet relay_packet_with_error(const Scenario& scn, Word error);

/// What `watcher` (1 or 2) learns. Noise words are XORed onto the overheard
/// peer and relay payloads; headers pass through untouched.
Observation observe_with_noise(unsigned watcher, const Scenario& scn, const std::array<Packet, 2>& sources,
                               const Packet& relay, Word peer_noise, Word relay_noise);

/// As observe_with_noise, drawing peer noise then relay noise from the
/// watcher's interference channels. Throws RangeError unless watcher is 1 or 2.
Observation observe(unsigned watcher, const Scenario& scn, const std::array<Packet, 2>& sources,
                    const Packet& relay, RandomSource& rng);

}  // namespace algwatch
