#pragma once

#include "algwatch/gf2n.hpp"
#include "algwatch/hashing.hpp"

namespace algwatch {

/// Everything a watching source gathers about one relay transmission: its own
/// message and coding coefficient, the reliably received headers, and the two
/// payloads it overheard through its interference channels.
struct Observation {
    HashFunction hash;
    FieldElement own_value;
    FieldElement own_coeff;
    FieldElement peer_coeff;
    HashValue peer_hash;
    HashValue relay_hash;
    Word noisy_peer = 0;
    Word noisy_relay = 0;
    double peer_crossover = 0.0;   // peer -> watcher
    double relay_crossover = 0.0;  // relay -> watcher
    double epsilon = 0.01;

    const FieldSpec& field() const noexcept { return own_value.spec(); }
    unsigned n() const noexcept { return own_value.spec().n(); }
};

}  // namespace algwatch
