#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"
#include "algwatch/gf2n.hpp"
#include "algwatch/harness.hpp"
#include "algwatch/hashing.hpp"
#include "algwatch/protocol.hpp"
#include "algwatch/theory.hpp"
#include "algwatch/watchdog.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using algwatch::Word;

algwatch::HashFunction make_hash(unsigned n, const std::vector<Word>& coeffs, unsigned h) {
    const auto& f = algwatch::canonical_spec(n);
    std::vector<algwatch::FieldElement> elems;
    for (Word c : coeffs) elems.emplace_back(f, c);
    return {std::move(elems), h};
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

algwatch::Observation make_observation(unsigned n, const std::vector<Word>& hash_coeffs, unsigned h, Word own_value,
                                       Word own_coeff, Word peer_coeff, Word peer_hash, Word relay_hash,
                                       Word noisy_peer, Word noisy_relay, double peer_p, double relay_p,
                                       double epsilon) {
    const auto& f = algwatch::canonical_spec(n);
    return {make_hash(n, hash_coeffs, h),
            algwatch::FieldElement(f, own_value),
            algwatch::FieldElement(f, own_coeff),
            algwatch::FieldElement(f, peer_coeff),
            {peer_hash, h},
            {relay_hash, h},
            noisy_peer & f.mask(),
            noisy_relay & f.mask(),
            peer_p,
            relay_p,
            epsilon};
}

py::dict verdict_dict(const algwatch::Verdict& v) {
    return py::dict("flagged"_a = v.flagged(), "decision"_a = v.flagged() ? "H1" : "H0",
                    "consistency_score"_a = v.consistency_score, "peer_candidates"_a = v.peer_candidates,
                    "relay_candidates"_a = v.relay_candidates, "surviving"_a = v.surviving);
}

algwatch::TheoryParams params(unsigned n, unsigned h, unsigned r12, unsigned r21, unsigned r31, unsigned r32) {
    return {n, h, r12, r21, r31, r32};
}

}  // namespace

PYBIND11_MODULE(_algwatch, m) {
    m.doc() = "Two-hop algebraic watchdog for wireless network coding";

    // Translators run most-recent first, so the base class goes in first.
    const auto& base = py::register_exception<algwatch::Error>(m, "Error", PyExc_ValueError);
    py::register_exception<algwatch::ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<algwatch::DecodeError>(m, "DecodeError", base.ptr());
    py::register_exception<algwatch::IoError>(m, "IoError", base.ptr());

    // GF(2^n)
    m.def("canonical_poly", [](unsigned n) { return algwatch::canonical_spec(n).reduction_poly(); }, "n"_a);
    m.def("field_add", [](unsigned n, Word a, Word b) {
        const auto& f = algwatch::canonical_spec(n);
        return algwatch::add({f, a}, {f, b}).value();
    }, "n"_a, "a"_a, "b"_a);
    m.def("field_mul", [](unsigned n, Word a, Word b) {
        const auto& f = algwatch::canonical_spec(n);
        return algwatch::mul({f, a}, {f, b}).value();
    }, "n"_a, "a"_a, "b"_a);
    m.def("field_pow", [](unsigned n, Word a, std::uint64_t k) {
        return algwatch::pow({algwatch::canonical_spec(n), a}, k).value();
    }, "n"_a, "a"_a, "k"_a);
    m.def("field_inv", [](unsigned n, Word a) {
        return algwatch::inverse({algwatch::canonical_spec(n), a}).value();
    }, "n"_a, "a"_a);

    // Hashing
    m.def("hash_evaluate", [](unsigned n, const std::vector<Word>& coeffs, unsigned h, Word x) {
        const auto hf = make_hash(n, coeffs, h);
        return algwatch::evaluate(hf, {hf.field(), x}).value;
    }, "n"_a, "coeffs"_a, "h"_a, "x"_a);
    m.def("preimage_set", [](unsigned n, const std::vector<Word>& coeffs, unsigned h, Word target) {
        return algwatch::preimage_set(make_hash(n, coeffs, h), {target, h});
    }, "n"_a, "coeffs"_a, "h"_a, "target"_a);

    // Channel
    m.def("radius_for_epsilon", [](unsigned n, double p, double eps) {
        return algwatch::radius_for_epsilon(n, p, eps).r;
    }, "n"_a, "p"_a, "eps"_a);
    m.def("ball_volume", &algwatch::ball_volume, "n"_a, "r"_a);
    m.def("ball_enumerate", &algwatch::ball_enumerate, "center"_a, "n"_a, "r"_a);
    m.def("log_likelihood", [](double p, Word sent, Word received, unsigned n) {
        return algwatch::log_likelihood(algwatch::BinarySymmetricChannel(p), sent, received, n);
    }, "p"_a, "sent"_a, "received"_a, "n"_a);

    // Watchdog engines
    m.def("algebraic_check",
          [](unsigned n, const std::vector<Word>& hash_coeffs, unsigned h, Word own_value, Word own_coeff,
             Word peer_coeff, Word peer_hash, Word relay_hash, Word noisy_peer, Word noisy_relay, double peer_p,
             double relay_p, double epsilon) {
              return verdict_dict(algwatch::algebraic_check(make_observation(n, hash_coeffs, h, own_value, own_coeff,
                                                                             peer_coeff, peer_hash, relay_hash,
                                                                             noisy_peer, noisy_relay, peer_p,
                                                                             relay_p, epsilon)));
          },
          "n"_a, "hash_coeffs"_a, "h"_a, "own_value"_a, "own_coeff"_a, "peer_coeff"_a, "peer_hash"_a,
          "relay_hash"_a, "noisy_peer"_a, "noisy_relay"_a, "peer_p"_a, "relay_p"_a, "epsilon"_a = 0.01);
    m.def("consistency_probability",
          [](unsigned n, const std::vector<Word>& hash_coeffs, unsigned h, Word own_value, Word own_coeff,
             Word peer_coeff, Word peer_hash, Word relay_hash, Word noisy_peer, Word noisy_relay, double peer_p,
             double relay_p) {
              return algwatch::consistency_probability(algwatch::build_trellis(
                  make_observation(n, hash_coeffs, h, own_value, own_coeff, peer_coeff, peer_hash, relay_hash,
                                   noisy_peer, noisy_relay, peer_p, relay_p, 0.01)));
          },
          "n"_a, "hash_coeffs"_a, "h"_a, "own_value"_a, "own_coeff"_a, "peer_coeff"_a, "peer_hash"_a,
          "relay_hash"_a, "noisy_peer"_a, "noisy_relay"_a, "peer_p"_a, "relay_p"_a);

    // Packets
    m.def("encode_packet",
          [](unsigned n, unsigned h, const std::vector<Word>& coeffs, const std::vector<Word>& neighbor_hashes,
             Word own_hash, Word payload) {
              const auto& f = algwatch::canonical_spec(n);
              algwatch::Packet pkt{{}, {}, {own_hash, h}, {f, payload}};
              for (Word c : coeffs) pkt.coeffs.emplace_back(f, c);
              for (Word hv : neighbor_hashes) pkt.neighbor_hashes.push_back({hv, h});
              const auto bytes = algwatch::encode_packet(pkt);
              return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
          },
          "n"_a, "h"_a, "coeffs"_a, "neighbor_hashes"_a, "own_hash"_a, "payload"_a);
    m.def("decode_packet", [](const py::bytes& data) {
        const std::string raw = data;
        const auto pkt = algwatch::decode_packet(
            std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
        std::vector<Word> coeffs, hashes;
        for (const auto& c : pkt.coeffs) coeffs.push_back(c.value());
        for (const auto& hv : pkt.neighbor_hashes) hashes.push_back(hv.value);
        return py::dict("n"_a = pkt.payload.spec().n(), "h"_a = pkt.own_hash.width, "coeffs"_a = coeffs,
                        "neighbor_hashes"_a = hashes, "own_hash"_a = pkt.own_hash.value,
                        "payload"_a = pkt.payload.value());
    }, "data"_a);

    // Theory
    m.def("gamma_bound", &algwatch::gamma_bound, "eps"_a);
    m.def("misdetection_v1", [](unsigned n, unsigned h, unsigned r12, unsigned r21, unsigned r31, unsigned r32) {
        return algwatch::misdetection_v1(params(n, h, r12, r21, r31, r32));
    }, "n"_a, "h"_a, "r12"_a, "r21"_a, "r31"_a, "r32"_a);
    m.def("misdetection_v2", [](unsigned n, unsigned h, unsigned r12, unsigned r21, unsigned r31, unsigned r32) {
        return algwatch::misdetection_v2(params(n, h, r12, r21, r31, r32));
    }, "n"_a, "h"_a, "r12"_a, "r21"_a, "r31"_a, "r32"_a);
    m.def("predicted_beta", [](unsigned n, unsigned h, unsigned r12, unsigned r21, unsigned r31, unsigned r32) {
        return algwatch::predicted_beta(params(n, h, r12, r21, r31, r32));
    }, "n"_a, "h"_a, "r12"_a, "r21"_a, "r31"_a, "r32"_a);
    m.def("predicted_beta_no_overhear", &algwatch::predicted_beta_no_overhear, "n"_a, "h"_a, "r31"_a, "r32"_a);

    // Harness
    m.def("run_trials", [](const py::object& config, unsigned threads) {
        const auto cfg = algwatch::config_from_json(py_to_json(config));
        algwatch::SimReport rep;
        {
            py::gil_scoped_release release;
            rep = algwatch::run_trials(cfg, {threads, std::nullopt});
        }
        return json_to_py(algwatch::to_json(rep));
    }, "config"_a, "threads"_a = 0, "Run a Monte Carlo experiment; config mirrors the JSON config file.");
    m.def("sweep", [](const py::object& config, const std::string& axis, const std::vector<double>& values,
                      unsigned threads) {
        const auto cfg = algwatch::config_from_json(py_to_json(config));
        std::vector<algwatch::SimReport> reps;
        {
            py::gil_scoped_release release;
            reps = algwatch::sweep(cfg, axis, values, {threads, std::nullopt});
        }
        py::list out;
        for (const auto& r : reps) out.append(json_to_py(algwatch::to_json(r)));
        return out;
    }, "config"_a, "axis"_a, "values"_a, "threads"_a = 0);
}
