#pragma once

#include <cstdint>
#include <vector>

namespace algwatch {

/// Bit representation of a field element or payload; only the low n bits are used.
using Word = std::uint32_t;

inline constexpr unsigned kMinFieldWidth = 2;
inline constexpr unsigned kMaxFieldWidth = 16;

/// GF(2^n) with its canonical reduction polynomial (the lexicographically
/// smallest irreducible of degree n). Instances are only obtainable through
/// canonical_spec() and live for the whole program, so a `const FieldSpec&`
/// is stable and two specs are the same field iff they are the same object.
class FieldSpec {
public:
    FieldSpec(const FieldSpec&) = delete;
    FieldSpec& operator=(const FieldSpec&) = delete;

    unsigned n() const noexcept { return n_; }
    /// Includes the x^n term, i.e. bit n is set.
    Word reduction_poly() const noexcept { return poly_; }
    Word order() const noexcept { return Word{1} << n_; }
    Word mask() const noexcept { return order() - 1; }

    // Word-level arithmetic for hot loops. Arguments must be < order().
    Word mul(Word a, Word b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Word inv(Word a) const;
    Word pow(Word a, std::uint64_t k) const noexcept;

private:
    FieldSpec(unsigned n, Word poly);
    friend const FieldSpec& canonical_spec(unsigned n);

    unsigned n_;
    Word poly_;
    // exp_ holds g^0 .. g^(2(q-1)) for a generator g so that mul needs no modulo.
    std::vector<std::uint16_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// Throws UnsupportedWidthError for n outside [2, 16].
const FieldSpec& canonical_spec(unsigned n);

/// Irreducibility over GF(2) of a polynomial given as a bit mask (Ben-Or test).
bool is_irreducible(std::uint64_t poly);

class FieldElement {
public:
    /// Throws RangeError when value does not fit in spec.n() bits.
    FieldElement(const FieldSpec& spec, Word value);

    static FieldElement zero(const FieldSpec& spec) { return {spec, 0}; }
    static FieldElement one(const FieldSpec& spec) { return {spec, 1}; }

    Word value() const noexcept { return value_; }
    const FieldSpec& spec() const noexcept { return *spec_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.spec_ == b.spec_ && a.value_ == b.value_;
    }

private:
    const FieldSpec* spec_;
    Word value_;
};

// All binary operations throw SpecMismatchError when the operands come from
// different fields.
FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldElement& a, std::uint64_t k);
/// Throws RangeError for zero.
FieldElement inverse(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

}  // namespace algwatch
