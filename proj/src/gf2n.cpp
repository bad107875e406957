#include "algwatch/gf2n.hpp"

#include <array>
#include <bit>
#include <memory>
#include <mutex>
#include <string>

#include "algwatch/errors.hpp"

namespace algwatch {

namespace {

unsigned degree(std::uint64_t p) { return p == 0 ? 0 : 63 - static_cast<unsigned>(std::countl_zero(p)); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const unsigned dm = degree(m);
    while (a != 0 && degree(a) >= dm) a ^= m << (degree(a) - dm);
    return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t r = 0;
    a = poly_mod(a, m);
    const std::uint64_t top = std::uint64_t{1} << degree(m);
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= m;
    }
    return r;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Shift-and-add multiply used only while building the log tables.
Word slow_mul(Word a, Word b, unsigned n, Word poly) {
    Word r = 0;
    const Word top = Word{1} << n;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= poly;
    }
    return r;
}

}  // namespace

bool is_irreducible(std::uint64_t poly) {
    const unsigned d = degree(poly);
    if (d == 0 || (poly & 1) == 0) return d == 1;
    // Ben-Or: f is irreducible iff gcd(x^(2^i) - x, f) = 1 for i = 1..d/2.
    std::uint64_t x_pow = 2;  // x^(2^0)
    for (unsigned i = 1; i <= d / 2; ++i) {
        x_pow = poly_mulmod(x_pow, x_pow, poly);
        if (poly_gcd(poly, x_pow ^ 2) != 1) return false;
    }
    return true;
}

FieldSpec::FieldSpec(unsigned n, Word poly) : n_(n), poly_(poly) {
    const Word q = order();
    const Word group = q - 1;
    Word generator = 0;
    for (Word g = 2; g < q && generator == 0; ++g) {
        Word acc = g;
        Word ord = 1;
        while (acc != 1) {
            acc = slow_mul(acc, g, n, poly);
            ++ord;
        }
        if (ord == group) generator = g;
    }

    exp_.resize(2 * static_cast<std::size_t>(group));
    log_.assign(q, 0);
    Word acc = 1;
    for (Word i = 0; i < group; ++i) {
        exp_[i] = static_cast<std::uint16_t>(acc);
        exp_[i + group] = static_cast<std::uint16_t>(acc);
        log_[acc] = i;
        acc = slow_mul(acc, generator, n, poly);
    }
}

Word FieldSpec::inv(Word a) const {
    if (a == 0) throw RangeError("zero has no multiplicative inverse");
    const Word group = order() - 1;
    return exp_[(group - log_[a]) % group];
}

Word FieldSpec::pow(Word a, std::uint64_t k) const noexcept {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const Word group = order() - 1;
    return exp_[static_cast<Word>((static_cast<std::uint64_t>(log_[a]) * (k % group)) % group)];
}

const FieldSpec& canonical_spec(unsigned n) {
    if (n < kMinFieldWidth || n > kMaxFieldWidth)
        throw UnsupportedWidthError("field width " + std::to_string(n) + " outside supported range [2, 16]");

    static std::array<std::once_flag, kMaxFieldWidth + 1> once;
    static std::array<std::unique_ptr<FieldSpec>, kMaxFieldWidth + 1> specs;
    std::call_once(once[n], [n] {
        // Smallest irreducible of degree n; odd candidates only since x | f otherwise.
        for (std::uint64_t p = (std::uint64_t{1} << n) | 1; p < (std::uint64_t{1} << (n + 1)); p += 2) {
            if (is_irreducible(p)) {
                specs[n].reset(new FieldSpec(n, static_cast<Word>(p)));
                return;
            }
        }
    });
    return *specs[n];
}

FieldElement::FieldElement(const FieldSpec& spec, Word value) : spec_(&spec), value_(value) {
    if (value >= spec.order())
        throw RangeError("value " + std::to_string(value) + " does not fit in " + std::to_string(spec.n()) + " bits");
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (&a.spec() != &b.spec())
        throw SpecMismatchError("operands from GF(2^" + std::to_string(a.spec().n()) + ") and GF(2^" +
                                std::to_string(b.spec().n()) + ")");
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.spec(), a.value() ^ b.value()};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.spec(), a.spec().mul(a.value(), b.value())};
}

FieldElement pow(const FieldElement& a, std::uint64_t k) { return {a.spec(), a.spec().pow(a.value(), k)}; }

FieldElement inverse(const FieldElement& a) { return {a.spec(), a.spec().inv(a.value())}; }

}  // namespace algwatch
