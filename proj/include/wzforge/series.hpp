#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "wzforge/hyperterm.hpp"

namespace wzforge {

// uncertifiable tail, precision cap, term limit
struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr long kMaxSeriesTerms = 1000000;

// digit cap for sum_to_tolerance; WZFORGE_PRECISION_CAP overrides the default 100
int precision_cap();

struct SeriesJob {
    // must be reentrant; evaluated under a PrecisionScope of prec.bits()
    std::function<TermValue(long k, const Precision& prec)> term;
    long start = 0;
    int target_digits = 25;
    int guard = 20;
    // t(k+1)/t(k) of the underlying hypergeometric term, a function of k only
    std::optional<RationalFunction> ratio_probe;
    // derivative order of the summand relative to the probe term
    int derivative_order = 0;
};

struct SeriesResult {
    Complex value;
    double error_bound = 0.0;
    long terms_used = 0;
    double tail_bound = 0.0;
    int working_digits = 0;
};

// bound on |sum_{k > K} t(k)|
double tail_bound_geometric(const SeriesJob& job, long K);
SeriesResult sum_to_tolerance(const SeriesJob& job);

// the k-shift quotient of a hypergeometric term at fixed n, as a function of k;
// for var = n the roles are swapped and the result is still written in k
RationalFunction probe_quotient(const HyperTerm& t, Var var, const BigRational& other);

// convenience job for sum over var of the order-m derivative in diff_var
SeriesJob term_series(const HyperTerm& t, Var var, const BigRational& other, long start, int digits,
                      const std::string& diff_var = "", int order = 0);

}  // namespace wzforge
