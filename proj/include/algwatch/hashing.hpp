#pragma once

#include <vector>

#include "algwatch/gf2n.hpp"
#include "algwatch/random.hpp"

namespace algwatch {

inline constexpr unsigned kDefaultHashDegree = 3;

/// An h-bit header hash value.
struct HashValue {
    Word value = 0;
    unsigned width = 0;

    friend bool operator==(const HashValue&, const HashValue&) = default;
};

/// Polynomial hash h_a(x) = a_0 + a_1 x + ... + a_d x^d over GF(2^n),
/// truncated to its low `output_width` bits.
class HashFunction {
public:
    /// Throws RangeError when coefficients is empty or output_width is not in [1, n],
    /// SpecMismatchError when coefficients come from different fields.
    HashFunction(std::vector<FieldElement> coefficients, unsigned output_width);

    const FieldSpec& field() const noexcept { return coefficients_.front().spec(); }
    unsigned degree() const noexcept { return static_cast<unsigned>(coefficients_.size() - 1); }
    unsigned output_width() const noexcept { return width_; }
    const std::vector<FieldElement>& coefficients() const noexcept { return coefficients_; }

    /// Word-level evaluation (Horner); x must be < 2^n.
    Word evaluate_word(Word x) const noexcept;

    friend bool operator==(const HashFunction& a, const HashFunction& b) {
        return a.width_ == b.width_ && a.coefficients_ == b.coefficients_;
    }

private:
    std::vector<FieldElement> coefficients_;
    std::vector<Word> raw_;  // coefficient values, highest degree first
    unsigned width_;
    Word out_mask_;
};

/// Throws SpecMismatchError when x is not in the hash's field.
HashValue evaluate(const HashFunction& hf, const FieldElement& x);

/// Draws d+1 coefficients uniformly from GF(2^n). Throws RangeError unless 1 <= h <= n.
HashFunction sample_hash(RandomSource& rng, unsigned degree, const FieldSpec& spec, unsigned output_width);

/// Every x in GF(2^n) with evaluate(hf, x) == target, ascending.
std::vector<Word> preimage_set(const HashFunction& hf, HashValue target);

}  // namespace algwatch
