#include "algwatch/testing/oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "algwatch/channel.hpp"
#include "algwatch/watchdog.hpp"

namespace algwatch::oracle {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

int deg(std::uint64_t p) {
    int d = -1;
    while (p) {
        p >>= 1;
        ++d;
    }
    return d;
}

std::uint64_t poly_rem(std::uint64_t a, std::uint64_t m) {
    const int dm = deg(m);
    for (int i = deg(a); i >= dm; --i)
        if ((a >> i) & 1) a ^= m << (i - dm);
    return a;
}

cpp_rational exact(double x) {
    int e = 0;
    const double mant = std::frexp(x, &e);
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    cpp_rational r(scaled);
    const int shift = e - 53;
    if (shift >= 0) return r * cpp_rational(cpp_int(1) << shift);
    return r / cpp_rational(cpp_int(1) << -shift);
}

cpp_rational rational_pow(const cpp_rational& base, unsigned k) {
    cpp_rational r(1);
    for (unsigned i = 0; i < k; ++i) r *= base;
    return r;
}

cpp_int choose(unsigned n, unsigned k) {
    cpp_int c = 1;
    for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

cpp_rational exact_cdf(unsigned n, const cpp_rational& p, unsigned r) {
    cpp_rational total(0);
    for (unsigned k = 0; k <= r && k <= n; ++k)
        total += cpp_rational(choose(n, k)) * rational_pow(p, k) * rational_pow(1 - p, n - k);
    return total;
}

unsigned popcount(Word w) {
    unsigned c = 0;
    for (; w; w &= w - 1) ++c;
    return c;
}

double bsc_prob(unsigned n, double p, Word a, Word b) {
    const unsigned k = popcount(a ^ b);
    return std::pow(p, k) * std::pow(1.0 - p, n - k);
}

std::vector<Word> raw_coeffs(const HashFunction& hf) {
    std::vector<Word> out;
    for (const auto& c : hf.coefficients()) out.push_back(c.value());
    return out;
}

}  // namespace

Word field_mul(Word a, Word b, unsigned n, Word poly) {
    std::uint64_t product = 0;
    for (unsigned i = 0; i < n; ++i)
        if ((b >> i) & 1) product ^= std::uint64_t{a} << i;
    return static_cast<Word>(poly_rem(product, poly));
}

bool is_irreducible(std::uint64_t poly) {
    const int d = deg(poly);
    if (d < 1) return false;
    for (std::uint64_t f = 2; deg(f) <= d / 2; ++f)
        if (poly_rem(poly, f) == 0) return false;
    return true;
}

Word smallest_irreducible(unsigned n) {
    for (std::uint64_t p = std::uint64_t{1} << n; p < (std::uint64_t{1} << (n + 1)); ++p)
        if (is_irreducible(p)) return static_cast<Word>(p);
    return 0;
}

Word hash_eval(const std::vector<Word>& coeffs, Word x, unsigned n, Word poly, unsigned h) {
    Word sum = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Word power = 1;
        for (std::size_t j = 0; j < i; ++j) power = field_mul(power, x, n, poly);
        sum ^= field_mul(coeffs[i], power, n, poly);
    }
    return sum & ((Word{1} << h) - 1);
}

unsigned radius(unsigned n, double p, double eps) {
    const cpp_rational ep = exact(p);
    const cpp_rational target = 1 - exact(eps);
    for (unsigned r = 0; r <= n; ++r)
        if (exact_cdf(n, ep, r) >= target) return r;
    return n;
}

double binomial_cdf(unsigned n, double p, unsigned r) { return exact_cdf(n, exact(p), r).convert_to<double>(); }

bool algebraic_accepts(const Observation& obs, unsigned peer_radius, unsigned relay_radius) {
    const unsigned n = obs.n();
    const Word poly = obs.field().reduction_poly();
    const unsigned h = obs.hash.output_width();
    const auto coeffs = raw_coeffs(obs.hash);
    const Word c = field_mul(obs.own_coeff.value(), obs.own_value.value(), n, poly);
    for (Word x = 0; x < (Word{1} << n); ++x) {
        if (popcount(x ^ obs.noisy_peer) > peer_radius) continue;
        if (hash_eval(coeffs, x, n, poly, h) != obs.peer_hash.value) continue;
        const Word z = c ^ field_mul(obs.peer_coeff.value(), x, n, poly);
        if (popcount(z ^ obs.noisy_relay) > relay_radius) continue;
        if (hash_eval(coeffs, z, n, poly, h) == obs.relay_hash.value) return true;
    }
    return false;
}

double path_sum(const Observation& obs) {
    const unsigned n = obs.n();
    const Word poly = obs.field().reduction_poly();
    const unsigned h = obs.hash.output_width();
    const auto coeffs = raw_coeffs(obs.hash);
    const Word c = field_mul(obs.own_coeff.value(), obs.own_value.value(), n, poly);
    double norm = 0.0;
    double mass = 0.0;
    for (Word x = 0; x < (Word{1} << n); ++x) {
        if (hash_eval(coeffs, x, n, poly, h) != obs.peer_hash.value) continue;
        const double enter = bsc_prob(n, obs.peer_crossover, x, obs.noisy_peer);
        norm += enter;
        const Word z = c ^ field_mul(obs.peer_coeff.value(), x, n, poly);
        if (hash_eval(coeffs, z, n, poly, h) != obs.relay_hash.value) continue;
        mass += enter * bsc_prob(n, obs.relay_crossover, z, obs.noisy_relay);
    }
    return norm > 0.0 ? mass / norm : 0.0;
}

std::vector<SuiteResult> run_selftest() {
    std::vector<SuiteResult> results;
    std::mt19937_64 rng(20240601);

    auto fail = [](SuiteResult& s, const std::string& msg) {
        if (s.passed) s.first_failure = msg;
        s.passed = false;
    };

    {
        SuiteResult s{"field-axioms"};
        for (unsigned n = kMinFieldWidth; n <= kMaxFieldWidth; ++n) {
            const FieldSpec& f = canonical_spec(n);
            std::uniform_int_distribution<Word> pick(0, f.mask());
            for (int i = 0; i < 2000; ++i) {
                const FieldElement a(f, pick(rng)), b(f, pick(rng)), c(f, pick(rng));
                ++s.checks;
                if (!(a + a == FieldElement::zero(f)) || !(a * b == b * a) || !((a * b) * c == a * (b * c)) ||
                    !(a * (b + c) == a * b + a * c) || !((a + b) + c == a + (b + c)))
                    fail(s, "axiom violated in GF(2^" + std::to_string(n) + ")");
            }
            if (n <= 8)
                for (Word a = 1; a < f.order(); ++a) {
                    ++s.checks;
                    if (f.mul(a, f.inv(a)) != 1) fail(s, "missing inverse in GF(2^" + std::to_string(n) + ")");
                }
        }
        results.push_back(s);
    }

    {
        SuiteResult s{"oracle-equivalence"};
        for (unsigned n = kMinFieldWidth; n <= kMaxFieldWidth; ++n) {
            const FieldSpec& f = canonical_spec(n);
            ++s.checks;
            if (f.reduction_poly() != smallest_irreducible(n))
                fail(s, "canonical polynomial mismatch at n=" + std::to_string(n));
            std::uniform_int_distribution<Word> pick(0, f.mask());
            for (int i = 0; i < 5000; ++i) {
                const Word a = pick(rng), b = pick(rng);
                ++s.checks;
                if (f.mul(a, b) != field_mul(a, b, n, f.reduction_poly()))
                    fail(s, "mul mismatch at n=" + std::to_string(n));
            }
        }
        // Algebraic engine against the domain scan, and trellis against direct path enumeration.
        const FieldSpec& f = canonical_spec(6);
        std::uniform_int_distribution<Word> pick(0, f.mask());
        std::uniform_int_distribution<Word> nonzero(1, f.mask());
        for (int i = 0; i < 300; ++i) {
            std::vector<FieldElement> coeffs;
            for (int k = 0; k < 4; ++k) coeffs.emplace_back(f, pick(rng));
            HashFunction hf(std::move(coeffs), 3);
            const FieldElement x1(f, pick(rng)), x2(f, pick(rng));
            const HashValue h2 = evaluate(hf, x2);
            const Word relay = pick(rng);
            Observation obs{hf,
                            x1,
                            FieldElement(f, nonzero(rng)),
                            FieldElement(f, nonzero(rng)),
                            h2,
                            {hf.evaluate_word(relay), 3},
                            x2.value() ^ static_cast<Word>(rng() & 0x5),
                            relay ^ static_cast<Word>(rng() & 0x3),
                            0.1,
                            0.1,
                            0.01};
            const unsigned r = radius_for_epsilon(6, 0.1, 0.01).r;
            ++s.checks;
            if (!algebraic_check(obs).flagged() != algebraic_accepts(obs, r, r)) fail(s, "algebraic engine mismatch");
            ++s.checks;
            if (std::abs(consistency_probability(build_trellis(obs)) - path_sum(obs)) > 1e-12)
                fail(s, "trellis path sum mismatch");
        }
        results.push_back(s);
    }

    {
        SuiteResult s{"radius-oracle"};
        for (unsigned n : {4u, 8u, 12u, 16u})
            for (double p : {0.01, 0.05, 0.1, 0.2})
                for (double eps : {0.001, 0.01, 0.05}) {
                    ++s.checks;
                    const unsigned got = radius_for_epsilon(n, p, eps).r;
                    const unsigned want = radius(n, p, eps);
                    if (got != want) {
                        std::ostringstream msg;
                        msg << "n=" << n << " p=" << p << " eps=" << eps << ": got " << got << ", oracle " << want;
                        fail(s, msg.str());
                    }
                }
        results.push_back(s);
    }
    return results;
}

}  // namespace algwatch::oracle
