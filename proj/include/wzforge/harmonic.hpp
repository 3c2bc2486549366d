#pragma once

#include <optional>
#include <vector>

#include "wzforge/constants.hpp"
#include "wzforge/series.hpp"

namespace wzforge {

// H_{mult*k + offset}^(order) raised to exp
struct HarmonicFactor {
    long mult = 1;
    long offset = 0;
    int order = 1;
    int exp = 1;
};

// coeff(k) * scalar * prod of harmonic factors
struct WeightMonomial {
    RationalFunction coeff = RationalFunction(1);
    std::optional<ConstantExpr> scalar;
    std::vector<HarmonicFactor> harmonics;
};

using Weight = std::vector<WeightMonomial>;

Weight parse_weight(const Json& j);
Json weight_json(const Weight& w);

BigRational harmonic_number(long n, int order);
// at the working precision of the current PrecisionScope
Real harmonic_real(long n, int order);
Complex eval_weight(const Weight& w, long k, const Precision& prec);

// sum over k >= start of base(0, k) * w(k); base must be geometric in k
SeriesJob weighted_series(const HyperTerm& base, const Weight& w, long start, int digits);

// sum over k >= start of w(k) for a weight decaying like a power of k.
// Direct summation to a cutoff N, then the asymptotic expansion of the
// harmonic numbers in 1/k and log k summed by Euler-Maclaurin. Supports
// H_k and H_k^(2). The error bound is the size of the first omitted orders,
// not a certified remainder.
SeriesResult sum_harmonic_series(const Weight& w, long start, int digits);

}  // namespace wzforge
