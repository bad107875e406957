#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace algwatch {

/// Exact rational used for all closed-form predictions; converted to double
/// only at the API edge.
using Rational = boost::multiprecision::cpp_rational;

/// Field/hash widths and the four interference-edge radii.
struct TheoryParams {
    unsigned n = 8;
    unsigned h = 3;
    unsigned r12 = 0;  // v1 -> v2
    unsigned r21 = 0;  // v2 -> v1
    unsigned r31 = 0;  // relay -> v1
    unsigned r32 = 0;  // relay -> v2
};

/// Throws RangeError when h > n or a radius exceeds n.
void validate(const TheoryParams& tp);

/// Bound on false detection from one ball-coverage event: eps itself.
/// Throws RangeError unless 0 <= eps < 1.
double gamma_bound(double eps);
/// Union over the two coverage events a single watcher relies on: min(1, 2 eps).
double gamma_bound_per_watcher(double eps);

/// Probability the corrupted relay passes v1's check:
/// min{1, V(r12)/2^(h+n) * V(r21)/2^(h+n) * V(r31)/2^h} with V(r) the
/// Hamming-ball volume.
Rational misdetection_v1_exact(const TheoryParams& tp);
/// Same with r32 in place of r31.
Rational misdetection_v2_exact(const TheoryParams& tp);
/// The product with r = min(r31, r32); equals min of the two per-watcher values.
Rational predicted_beta_exact(const TheoryParams& tp);
/// Watchers that cannot overhear each other: min{1, V(r)/8^h}, r = min(r31, r32).
Rational predicted_beta_no_overhear_exact(unsigned n, unsigned h, unsigned r31, unsigned r32);

double misdetection_v1(const TheoryParams& tp);
double misdetection_v2(const TheoryParams& tp);
double predicted_beta(const TheoryParams& tp);
double predicted_beta_no_overhear(unsigned n, unsigned h, unsigned r31, unsigned r32);

struct Prediction {
    double gamma_bound = 0.0;
    double gamma_bound_per_watcher = 0.0;
    double beta = 0.0;
    double beta_v1 = 0.0;
    double beta_v2 = 0.0;
};

Prediction predict(const TheoryParams& tp, double eps);

}  // namespace algwatch
