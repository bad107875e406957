#include "algwatch/theory.hpp"

#include <algorithm>
#include <string>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"

namespace algwatch {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow2(unsigned k) { return cpp_int(1) << k; }

Rational volume(unsigned n, unsigned r) { return Rational(cpp_int(ball_volume(n, r))); }

Rational clamp_one(const Rational& x) { return x > 1 ? Rational(1) : x; }

Rational product(const TheoryParams& tp, unsigned relay_radius) {
    validate(tp);
    const Rational per_source = Rational(1, pow2(tp.h + tp.n));
    return clamp_one(volume(tp.n, tp.r12) * per_source * volume(tp.n, tp.r21) * per_source *
                     volume(tp.n, relay_radius) / Rational(pow2(tp.h)));
}

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw RangeError("epsilon must lie in [0, 1)");
}

}  // namespace

void validate(const TheoryParams& tp) {
    if (tp.h > tp.n) throw RangeError("hash width exceeds field width");
    for (unsigned r : {tp.r12, tp.r21, tp.r31, tp.r32})
        if (r > tp.n) throw RangeError("radius " + std::to_string(r) + " exceeds n = " + std::to_string(tp.n));
}

double gamma_bound(double eps) {
    check_eps(eps);
    return eps;
}

double gamma_bound_per_watcher(double eps) {
    check_eps(eps);
    return std::min(1.0, 2.0 * eps);
}

Rational misdetection_v1_exact(const TheoryParams& tp) { return product(tp, tp.r31); }

Rational misdetection_v2_exact(const TheoryParams& tp) { return product(tp, tp.r32); }

Rational predicted_beta_exact(const TheoryParams& tp) { return product(tp, std::min(tp.r31, tp.r32)); }

Rational predicted_beta_no_overhear_exact(unsigned n, unsigned h, unsigned r31, unsigned r32) {
    if (h > n) throw RangeError("hash width exceeds field width");
    return clamp_one(volume(n, std::min(r31, r32)) / Rational(pow2(3 * h)));
}

double misdetection_v1(const TheoryParams& tp) { return misdetection_v1_exact(tp).convert_to<double>(); }
double misdetection_v2(const TheoryParams& tp) { return misdetection_v2_exact(tp).convert_to<double>(); }
double predicted_beta(const TheoryParams& tp) { return predicted_beta_exact(tp).convert_to<double>(); }
double predicted_beta_no_overhear(unsigned n, unsigned h, unsigned r31, unsigned r32) {
    return predicted_beta_no_overhear_exact(n, h, r31, r32).convert_to<double>();
}

Prediction predict(const TheoryParams& tp, double eps) {
    return {gamma_bound(eps), gamma_bound_per_watcher(eps), predicted_beta(tp), misdetection_v1(tp),
            misdetection_v2(tp)};
}

}  // namespace algwatch
