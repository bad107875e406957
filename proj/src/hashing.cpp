#include "algwatch/hashing.hpp"

#include <string>

#include "algwatch/errors.hpp"

namespace algwatch {

HashFunction::HashFunction(std::vector<FieldElement> coefficients, unsigned output_width)
    : coefficients_(std::move(coefficients)), width_(output_width) {
    if (coefficients_.empty()) throw RangeError("hash function needs at least one coefficient");
    const FieldSpec& spec = coefficients_.front().spec();
    for (const auto& c : coefficients_)
        if (&c.spec() != &spec) throw SpecMismatchError("hash coefficients span more than one field");
    if (width_ == 0 || width_ > spec.n())
        throw RangeError("hash width " + std::to_string(width_) + " outside [1, " + std::to_string(spec.n()) + "]");
    out_mask_ = (Word{1} << width_) - 1;
    raw_.reserve(coefficients_.size());
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) raw_.push_back(it->value());
}

Word HashFunction::evaluate_word(Word x) const noexcept {
    const FieldSpec& f = field();
    Word acc = 0;
    for (Word a : raw_) acc = f.mul(acc, x) ^ a;
    return acc & out_mask_;
}

HashValue evaluate(const HashFunction& hf, const FieldElement& x) {
    if (&x.spec() != &hf.field()) throw SpecMismatchError("hash input from a different field");
    return {hf.evaluate_word(x.value()), hf.output_width()};
}

HashFunction sample_hash(RandomSource& rng, unsigned degree, const FieldSpec& spec, unsigned output_width) {
    if (output_width == 0 || output_width > spec.n())
        throw RangeError("hash width " + std::to_string(output_width) + " outside [1, n], n = " +
                         std::to_string(spec.n()));
    std::vector<FieldElement> coeffs;
    coeffs.reserve(degree + 1);
    for (unsigned i = 0; i <= degree; ++i) coeffs.emplace_back(spec, static_cast<Word>(rng.below(spec.order())));
    return {std::move(coeffs), output_width};
}

std::vector<Word> preimage_set(const HashFunction& hf, HashValue target) {
    std::vector<Word> out;
    if (target.width != hf.output_width()) return out;
    const Word q = hf.field().order();
    for (Word x = 0; x < q; ++x)
        if (hf.evaluate_word(x) == target.value) out.push_back(x);
    return out;
}

}  // namespace algwatch
