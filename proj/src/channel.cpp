#include "algwatch/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "algwatch/errors.hpp"

namespace algwatch {

namespace {

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t c = 1;
    for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void check_radius(unsigned n, unsigned r) {
    if (r > n) throw RangeError("radius " + std::to_string(r) + " exceeds width " + std::to_string(n));
}

}  // namespace

BinarySymmetricChannel::BinarySymmetricChannel(double crossover) : p_(crossover) {
    if (!(crossover >= 0.0 && crossover <= 0.5))
        throw RangeError("crossover probability " + std::to_string(crossover) + " outside [0, 0.5]");
}

Word BinarySymmetricChannel::sample_noise(unsigned n, RandomSource& rng) const {
    Word e = 0;
    if (p_ == 0.0) return e;
    for (unsigned bit = 0; bit < n; ++bit)
        if (rng.bernoulli(p_)) e |= Word{1} << bit;
    return e;
}

Radius radius_for_epsilon(unsigned n, double p, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw RangeError("epsilon must lie in (0, 1)");
    if (!(p >= 0.0 && p <= 1.0)) throw RangeError("crossover probability outside [0, 1]");
    // Work with the upper tail directly: 1 - CDF loses everything below
    // machine precision once the CDF is close to one.
    std::vector<long double> mass(n + 1);
    const long double lp = p;
    for (unsigned k = 0; k <= n; ++k)
        mass[k] = static_cast<long double>(binomial(n, k)) * std::pow(lp, static_cast<long double>(k)) *
                  std::pow(1.0L - lp, static_cast<long double>(n - k));
    long double tail = 0.0L;  // P(X > r)
    unsigned r = n;
    while (r > 0) {
        const long double widened = tail + mass[r];  // P(X > r - 1)
        if (widened > static_cast<long double>(eps)) break;
        tail = widened;
        --r;
    }
    return {r, eps};
}

std::uint64_t ball_volume(unsigned n, unsigned r) {
    check_radius(n, r);
    std::uint64_t v = 0;
    for (unsigned k = 0; k <= r; ++k) v += binomial(n, k);
    return v;
}

std::vector<Word> ball_enumerate(Word center, unsigned n, unsigned r) {
    check_radius(n, r);
    std::vector<Word> out;
    out.reserve(ball_volume(n, r));
    out.push_back(center);
    const Word limit = Word{1} << n;
    for (unsigned k = 1; k <= r; ++k) {
        const auto shell_begin = out.size();
        // Gosper's hack walks every n-bit mask of weight k.
        Word mask = (Word{1} << k) - 1;
        while (mask < limit) {
            out.push_back(center ^ mask);
            const Word lowest = mask & (~mask + 1);
            const Word ripple = mask + lowest;
            mask = (((ripple ^ mask) >> 2) / lowest) | ripple;
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(shell_begin), out.end());
    }
    return out;
}

double log_likelihood(const BinarySymmetricChannel& chan, Word sent, Word received, unsigned n) {
    const double p = chan.crossover();
    const unsigned k = hamming_distance(sent, received);
    double ll = 0.0;
    if (k > 0) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        ll += k * std::log(p);
    }
    if (n > k) ll += (n - k) * std::log1p(-p);
    return ll;
}

}  // namespace algwatch
