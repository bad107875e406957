#include "algwatch/watchdog.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"

namespace algwatch {

CandidateSet candidate_set(const Observation& obs, CandidateSource which, std::optional<unsigned> forced_radius) {
    const unsigned n = obs.n();
    const bool peer = which == CandidateSource::Peer;
    const Word center = peer ? obs.noisy_peer : obs.noisy_relay;
    const HashValue target = peer ? obs.peer_hash : obs.relay_hash;
    const unsigned r = forced_radius
                           ? std::min(*forced_radius, n)
                           : radius_for_epsilon(n, peer ? obs.peer_crossover : obs.relay_crossover, obs.epsilon).r;

    CandidateSet out{{}, r, target};
    if (target.width != obs.hash.output_width()) return out;
    for (Word x : ball_enumerate(center, n, r))
        if (obs.hash.evaluate_word(x) == target.value) out.members.push_back(x);
    return out;
}

Verdict algebraic_check(const Observation& obs, std::optional<unsigned> forced_radius) {
    const FieldSpec& f = obs.field();
    const CandidateSet peer = candidate_set(obs, CandidateSource::Peer, forced_radius);
    const CandidateSet relay = candidate_set(obs, CandidateSource::Relay, forced_radius);

    const Word offset = f.mul(obs.own_coeff.value(), obs.own_value.value());
    std::vector<Word> images;
    images.reserve(peer.members.size());
    for (Word x : peer.members) images.push_back(offset ^ f.mul(obs.peer_coeff.value(), x));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());

    std::vector<Word> relay_sorted = relay.members;
    std::sort(relay_sorted.begin(), relay_sorted.end());
    std::vector<Word> common;
    std::set_intersection(images.begin(), images.end(), relay_sorted.begin(), relay_sorted.end(),
                          std::back_inserter(common));

    Verdict v;
    v.peer_candidates = peer.members.size();
    v.relay_candidates = relay.members.size();
    v.surviving = common.size();
    v.decision = common.empty() ? Hypothesis::Malicious : Hypothesis::WellBehaving;
    v.consistency_score =
        relay.members.empty() ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(relay.members.size());
    return v;
}

Trellis build_trellis(const Observation& obs) {
    const unsigned n = obs.n();
    if (n > kMaxTrellisWidth)
        throw CostError("trellis materialization limited to n <= " + std::to_string(kMaxTrellisWidth));
    const FieldSpec& f = obs.field();
    const BinarySymmetricChannel peer_chan(obs.peer_crossover);
    const BinarySymmetricChannel relay_chan(obs.relay_crossover);

    Trellis t;
    t.start_payload = obs.noisy_peer;
    t.start_hash = obs.peer_hash;
    t.dest_payload = obs.noisy_relay;
    t.dest_hash = obs.relay_hash;
    t.offset = f.mul(obs.own_coeff.value(), obs.own_value.value());
    t.multiplier = obs.peer_coeff.value();

    const bool start_ok = obs.peer_hash.width == obs.hash.output_width();
    const bool dest_ok = obs.relay_hash.width == obs.hash.output_width();
    std::vector<double> entry_log;
    for (Word v = 0; v < f.order(); ++v) {
        const Word w = t.offset ^ f.mul(t.multiplier, v);
        const bool from_start = start_ok && obs.hash.evaluate_word(v) == obs.peer_hash.value;
        const bool to_dest = dest_ok && obs.hash.evaluate_word(w) == obs.relay_hash.value;
        if (!from_start && !to_dest) continue;
        const std::size_t idx = t.layer2.size();
        t.layer2.push_back(v);
        t.layer3.push_back(w);
        if (from_start) {
            t.entry.push_back({idx, 0.0});
            entry_log.push_back(log_likelihood(peer_chan, v, obs.noisy_peer, n));
        }
        // Edges leaving a layer-3 vertex reach every [x, h(w)] in layer 4 and
        // their likelihoods already sum to one.
        if (to_dest) t.exit.push_back({idx, std::exp(log_likelihood(relay_chan, w, obs.noisy_relay, n))});
    }

    // Normalize the start vertex's outgoing weights. If every edge is
    // impossible under the channel model they all stay zero.
    if (!entry_log.empty()) {
        const double peak = *std::max_element(entry_log.begin(), entry_log.end());
        if (std::isfinite(peak)) {
            double total = 0.0;
            for (std::size_t i = 0; i < entry_log.size(); ++i) {
                t.entry[i].weight = std::exp(entry_log[i] - peak);
                total += t.entry[i].weight;
            }
            for (auto& e : t.entry) e.weight /= total;
        }
    }
    return t;
}

double consistency_probability(const Trellis& trellis) {
    std::vector<double> exit_weight(trellis.layer3.size(), 0.0);
    for (const auto& e : trellis.exit) exit_weight[e.vertex] = e.weight;
    double total = 0.0;
    for (const auto& e : trellis.entry) total += e.weight * exit_weight[e.vertex];
    return std::clamp(total, 0.0, 1.0);
}

Verdict decide(double score, double threshold) {
    Verdict v;
    v.consistency_score = score;
    v.decision = score >= threshold ? Hypothesis::WellBehaving : Hypothesis::Malicious;
    return v;
}

Verdict trellis_check(const Observation& obs, double threshold) {
    const Trellis t = build_trellis(obs);
    Verdict v = decide(consistency_probability(t), threshold);
    v.peer_candidates = t.entry.size();
    v.relay_candidates = t.exit.size();
    std::vector<bool> has_exit(t.layer3.size(), false);
    for (const auto& e : t.exit) has_exit[e.vertex] = e.weight > 0.0;
    for (const auto& e : t.entry)
        if (e.weight > 0.0 && has_exit[e.vertex]) ++v.surviving;
    return v;
}

}  // namespace algwatch
