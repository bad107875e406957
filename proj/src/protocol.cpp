#include "algwatch/protocol.hpp"

#include <bit>
#include <cmath>

#include "algwatch/errors.hpp"

namespace algwatch {

namespace {

unsigned bytes_for(unsigned bits) { return (bits + 7) / 8; }

void put_le(std::vector<std::uint8_t>& out, Word value, unsigned nbytes) {
    for (unsigned i = 0; i < nbytes; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

class FrameReader {
public:
    explicit FrameReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8(const char* what) {
        need(1, what);
        return bytes_[pos_++];
    }

    Word value(unsigned bits, const char* what) {
        const unsigned nbytes = bytes_for(bits);
        need(nbytes, what);
        const std::size_t start = pos_;
        Word v = 0;
        for (unsigned i = 0; i < nbytes; ++i) v |= Word{bytes_[pos_++]} << (8 * i);
        if (bits < 32 && (v >> bits) != 0)
            throw DecodeError(std::string(what) + " exceeds " + std::to_string(bits) + " bits", start);
        return v;
    }

    std::size_t pos() const noexcept { return pos_; }
    std::size_t size() const noexcept { return bytes_.size(); }

private:
    void need(std::size_t k, const char* what) const {
        if (bytes_.size() - pos_ < k) throw DecodeError(std::string("truncated frame reading ") + what, bytes_.size());
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

// P(dist(c, (c ^ e) ^ noise) <= r) for an error of weight w: the channel must
// undo enough of e's bits without adding too many new ones.
double honest_word_survives(unsigned n, unsigned w, double p, unsigned r) {
    auto pmf = [p](unsigned m, unsigned k) {
        double c = 1.0;
        for (unsigned i = 1; i <= k; ++i) c = c * (m - k + i) / i;
        return c * std::pow(p, k) * std::pow(1.0 - p, m - k);
    };
    double total = 0.0;
    for (unsigned undone = 0; undone <= w; ++undone)
        for (unsigned added = 0; added <= n - w; ++added)
            if (w - undone + added <= r) total += pmf(w, undone) * pmf(n - w, added);
    return total;
}

Word exhaustive_best_error(const Scenario& scn) {
    const FieldSpec& f = scn.field();
    const unsigned n = f.n();
    const Word honest = scn.honest_relay_value().value();
    const Word honest_hash = scn.hash.evaluate_word(honest);
    const unsigned r31 = radius_for_epsilon(n, scn.channels.p31.crossover(), scn.epsilon).r;
    const unsigned r32 = radius_for_epsilon(n, scn.channels.p32.crossover(), scn.epsilon).r;

    std::vector<double> by_weight(n + 1);
    for (unsigned w = 0; w <= n; ++w)
        by_weight[w] = honest_word_survives(n, w, scn.channels.p31.crossover(), r31) *
                       honest_word_survives(n, w, scn.channels.p32.crossover(), r32);

    // Prefer errors that keep the relay hash unchanged: then the honest
    // codeword remains a valid candidate at both watchers.
    Word best = 1;
    double best_score = -1.0;
    bool best_keeps_hash = false;
    for (Word e = 1; e < f.order(); ++e) {
        const bool keeps_hash = scn.hash.evaluate_word(honest ^ e) == honest_hash;
        const double score = by_weight[std::popcount(e)];
        if ((keeps_hash && !best_keeps_hash) || (keeps_hash == best_keeps_hash && score > best_score)) {
            best = e;
            best_score = score;
            best_keeps_hash = keeps_hash;
        }
    }
    return best;
}

Word weight_bounded_error(unsigned n, unsigned max_weight, RandomSource& rng) {
    // Pick the weight in proportion to the shell size, then a uniform subset.
    std::uint64_t total = ball_volume(n, max_weight) - 1;
    std::uint64_t pick = rng.below(total);
    unsigned k = 1;
    for (;; ++k) {
        const std::uint64_t shell = ball_volume(n, k) - ball_volume(n, k - 1);
        if (pick < shell) break;
        pick -= shell;
    }
    std::vector<unsigned> bits(n);
    for (unsigned i = 0; i < n; ++i) bits[i] = i;
    Word e = 0;
    for (unsigned i = 0; i < k; ++i) {
        const auto j = static_cast<unsigned>(rng.between(i, n - 1));
        std::swap(bits[i], bits[j]);
        e |= Word{1} << bits[i];
    }
    return e;
}

}  // namespace

std::vector<std::uint8_t> encode_packet(const Packet& pkt) {
    const FieldSpec& f = pkt.payload.spec();
    const unsigned h = pkt.own_hash.width;
    if (pkt.coeffs.size() != pkt.neighbor_hashes.size())
        throw RangeError("packet has " + std::to_string(pkt.coeffs.size()) + " coefficients but " +
                         std::to_string(pkt.neighbor_hashes.size()) + " neighbour hashes");
    if (pkt.coeffs.size() > 255) throw RangeError("packet coefficient count exceeds 255");
    if (h > f.n()) throw RangeError("hash wider than field");
    for (const auto& c : pkt.coeffs)
        if (&c.spec() != &f) throw SpecMismatchError("packet coefficient from a different field");
    for (const auto& hv : pkt.neighbor_hashes)
        if (hv.width != h) throw RangeError("neighbour hash width differs from own hash width");

    const unsigned nb = bytes_for(f.n());
    const unsigned hb = bytes_for(h);
    std::vector<std::uint8_t> out;
    out.reserve(4 + pkt.coeffs.size() * (nb + hb) + hb + nb);
    out.push_back(kPacketVersion);
    out.push_back(static_cast<std::uint8_t>(f.n()));
    out.push_back(static_cast<std::uint8_t>(h));
    out.push_back(static_cast<std::uint8_t>(pkt.coeffs.size()));
    for (const auto& c : pkt.coeffs) put_le(out, c.value(), nb);
    for (const auto& hv : pkt.neighbor_hashes) put_le(out, hv.value, hb);
    put_le(out, pkt.own_hash.value, hb);
    put_le(out, pkt.payload.value(), nb);
    return out;
}

Packet decode_packet(std::span<const std::uint8_t> bytes) {
    FrameReader in(bytes);
    const unsigned version = in.u8("version");
    if (version != kPacketVersion) throw UnsupportedVersionError(version);
    const unsigned n = in.u8("field width");
    if (n < kMinFieldWidth || n > kMaxFieldWidth) throw DecodeError("unsupported field width " + std::to_string(n), 1);
    const unsigned h = in.u8("hash width");
    if (h > n) throw DecodeError("hash width " + std::to_string(h) + " exceeds field width", 2);
    const unsigned count = in.u8("coefficient count");
    const FieldSpec& f = canonical_spec(n);

    std::vector<FieldElement> coeffs;
    coeffs.reserve(count);
    for (unsigned i = 0; i < count; ++i) coeffs.emplace_back(f, in.value(n, "coefficient"));
    std::vector<HashValue> hashes;
    hashes.reserve(count);
    for (unsigned i = 0; i < count; ++i) hashes.push_back({in.value(h, "neighbour hash"), h});
    const HashValue own{in.value(h, "own hash"), h};
    const FieldElement payload(f, in.value(n, "payload"));
    if (in.pos() != in.size()) throw DecodeError("trailing bytes after payload", in.pos());
    return {std::move(coeffs), std::move(hashes), own, payload};
}

Scenario make_scenario(HashFunction hash, FieldElement x1, FieldElement x2, FieldElement alpha1, FieldElement alpha2,
                       InterferenceChannels channels, double epsilon, bool allow_zero_coeffs) {
    const FieldSpec& f = hash.field();
    for (const FieldElement* e : {&x1, &x2, &alpha1, &alpha2})
        if (&e->spec() != &f) throw SpecMismatchError("scenario values span more than one field");
    if (!allow_zero_coeffs && (alpha1.is_zero() || alpha2.is_zero()))
        throw RangeError("zero coding coefficient (enable allow_zero_coeffs to permit)");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw RangeError("epsilon must lie in (0, 1)");
    return {std::move(hash), x1, x2, alpha1, alpha2, channels, epsilon};
}

std::string strategy_name(const AdversaryStrategy& s) {
    struct Namer {
        std::string operator()(const adversary::Honest&) const { return "honest"; }
        std::string operator()(const adversary::RandomNonzeroError&) const { return "random_nonzero_error"; }
        std::string operator()(const adversary::FixedError&) const { return "fixed_error"; }
        std::string operator()(const adversary::WeightBoundedError&) const { return "weight_bounded_error"; }
        std::string operator()(const adversary::ExhaustiveBest&) const { return "exhaustive_best"; }
    };
    return std::visit(Namer{}, s);
}

bool is_malicious(const AdversaryStrategy& s) { return !std::holds_alternative<adversary::Honest>(s); }

void validate_strategy(const AdversaryStrategy& s, unsigned n) {
    if (const auto* fixed = std::get_if<adversary::FixedError>(&s)) {
        if (fixed->error == 0) throw RangeError("fixed_error(0) is not a misbehaving relay");
        if (fixed->error >> n) throw RangeError("fixed error does not fit in the field width");
    }
    if (const auto* wb = std::get_if<adversary::WeightBoundedError>(&s))
        if (wb->max_weight == 0 || wb->max_weight > n) throw RangeError("weight bound must lie in [1, n]");
    if (std::holds_alternative<adversary::ExhaustiveBest>(s) && n > kMaxExhaustiveWidth)
        throw CostError("exhaustive_best searches 2^n errors per trial; n must be <= 12");
}

Word choose_error(const Scenario& scn, const AdversaryStrategy& strategy, RandomSource& rng) {
    const unsigned n = scn.field().n();
    validate_strategy(strategy, n);
    if (std::holds_alternative<adversary::Honest>(strategy)) return 0;
    if (std::holds_alternative<adversary::RandomNonzeroError>(strategy))
        return static_cast<Word>(rng.between(1, scn.field().mask()));
    if (const auto* fixed = std::get_if<adversary::FixedError>(&strategy)) return fixed->error;
    if (const auto* wb = std::get_if<adversary::WeightBoundedError>(&strategy))
        return weight_bounded_error(n, wb->max_weight, rng);
    return exhaustive_best_error(scn);
}

Packet source_packet(const Scenario& scn, unsigned source) {
    if (source != 1 && source != 2) throw RangeError("source must be 1 or 2");
    const FieldElement& x = source == 1 ? scn.x1 : scn.x2;
    return {{}, {}, evaluate(scn.hash, x), x};
}

Packet relay_packet_with_error(const Scenario& scn, Word error) {
    const FieldElement payload(scn.field(), scn.honest_relay_value().value() ^ error);
    return {{scn.alpha1, scn.alpha2},
            {evaluate(scn.hash, scn.x1), evaluate(scn.hash, scn.x2)},
            evaluate(scn.hash, payload),
            payload};
}

Packet relay_output(const Scenario& scn, const AdversaryStrategy& strategy, RandomSource& rng) {
    return relay_packet_with_error(scn, choose_error(scn, strategy, rng));
}

Observation observe_with_noise(unsigned watcher, const Scenario& scn, const std::array<Packet, 2>& sources,
                               const Packet& relay, Word peer_noise, Word relay_noise) {
    if (watcher != 1 && watcher != 2) throw RangeError("watcher must be node 1 or 2");
    if (relay.coeffs.size() != 2) throw RangeError("relay packet must carry two coefficients");
    const unsigned own = watcher - 1;
    const unsigned peer = 1 - own;
    const auto& ch = scn.channels;
    const Packet& peer_pkt = sources[peer];
    const Word mask = scn.field().mask();
    return Observation{
        .hash = scn.hash,
        .own_value = sources[own].payload,
        .own_coeff = relay.coeffs[own],
        .peer_coeff = relay.coeffs[peer],
        .peer_hash = peer_pkt.own_hash,
        .relay_hash = relay.own_hash,
        .noisy_peer = (peer_pkt.payload.value() ^ peer_noise) & mask,
        .noisy_relay = (relay.payload.value() ^ relay_noise) & mask,
        .peer_crossover = (watcher == 1 ? ch.p21 : ch.p12).crossover(),
        .relay_crossover = (watcher == 1 ? ch.p31 : ch.p32).crossover(),
        .epsilon = scn.epsilon,
    };
}

Observation observe(unsigned watcher, const Scenario& scn, const std::array<Packet, 2>& sources,
                    const Packet& relay, RandomSource& rng) {
    if (watcher != 1 && watcher != 2) throw RangeError("watcher must be node 1 or 2");
    const unsigned n = scn.field().n();
    const auto& ch = scn.channels;
    const Word peer_noise = (watcher == 1 ? ch.p21 : ch.p12).sample_noise(n, rng);
    const Word relay_noise = (watcher == 1 ? ch.p31 : ch.p32).sample_noise(n, rng);
    return observe_with_noise(watcher, scn, sources, relay, peer_noise, relay_noise);
}

}  // namespace algwatch
