#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "algwatch/gf2n.hpp"
#include "algwatch/hashing.hpp"
#include "algwatch/observation.hpp"

namespace algwatch {

enum class Hypothesis {
    WellBehaving,  // H0
    Malicious,     // H1
};

struct Verdict {
    Hypothesis decision = Hypothesis::WellBehaving;
    double consistency_score = 0.0;
    std::size_t peer_candidates = 0;
    std::size_t relay_candidates = 0;
    std::size_t surviving = 0;

    bool flagged() const noexcept { return decision == Hypothesis::Malicious; }
};

enum class CandidateSource { Peer, Relay };

/// Words within `radius` of a noisy observation that also hash to the
/// overheard header hash.
struct CandidateSet {
    std::vector<Word> members;  // ordered by (distance, value)
    unsigned radius = 0;
    HashValue target;
};

/// Radius defaults to radius_for_epsilon on the corresponding overheard edge;
/// `forced_radius` overrides it (clamped to n).
CandidateSet candidate_set(const Observation& obs, CandidateSource which,
                           std::optional<unsigned> forced_radius = std::nullopt);

/// Ball-intersection check: map every peer candidate x through
/// own_coeff*own_value + peer_coeff*x and flag the relay iff none of the
/// images is a relay candidate. Score is the surviving fraction of relay
/// candidates.
Verdict algebraic_check(const Observation& obs, std::optional<unsigned> forced_radius = std::nullopt);

inline constexpr unsigned kMaxTrellisWidth = 12;

struct TrellisEdge {
    std::size_t vertex = 0;  // index into layer2 (entry) or layer3 (exit)
    double weight = 0.0;
};

/// Four-layer inference graph seen from one watcher. Layers 1 and 4 are
/// represented only by the observed start and destination vertices; the
/// middle layers hold the words reachable from the start or co-reachable
/// from the destination. layer3[i] is the image of layer2[i] under the
/// coding map, so the middle edges are implicit.
struct Trellis {
    Word start_payload = 0;
    HashValue start_hash;
    Word dest_payload = 0;
    HashValue dest_hash;
    Word offset = 0;      // own_coeff * own_value
    Word multiplier = 0;  // peer_coeff
    std::vector<Word> layer2;
    std::vector<Word> layer3;
    std::vector<TrellisEdge> entry;  // start -> layer2, normalized channel likelihoods
    std::vector<TrellisEdge> exit;   // layer3 -> destination
};

/// Throws CostError when n > kMaxTrellisWidth.
Trellis build_trellis(const Observation& obs);

/// Sum over start -> destination paths of the product of edge weights, in [0, 1].
double consistency_probability(const Trellis& trellis);

inline constexpr double kDefaultThreshold = std::numeric_limits<double>::epsilon();

/// H0 iff score >= threshold.
Verdict decide(double score, double threshold = kDefaultThreshold);

/// build_trellis + consistency_probability + decide, with trellis sizes as diagnostics.
Verdict trellis_check(const Observation& obs, double threshold = kDefaultThreshold);

}  // namespace algwatch
