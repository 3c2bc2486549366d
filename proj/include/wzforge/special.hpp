#pragma once

#include <vector>

#include "wzforge/real.hpp"

namespace wzforge {

constexpr int kMaxDerivativeOrder = 8;

struct Precision {
    int digits = 25;
    int guard = 20;

    int working_digits() const { return digits + guard; }
    mpfr_prec_t bits() const { return digits_to_bits(working_digits()); }
};

// B_0, B_1 = -1/2, B_2, ... computed once and cached
const BigRational& bernoulli(int n);

// All arguments are evaluated at the working precision of the current
// PrecisionScope; prec only selects the certified accuracy target.
Real log_gamma(const Real& x, const Precision& prec);
Real polygamma(int m, const Real& x, const Precision& prec);
// psi^(0)(x), ..., psi^(max_order)(x) from one shared argument shift
std::vector<Real> polygamma_all(int max_order, const Real& x, const Precision& prec);

// values B_0..B_m of the complete Bell polynomials at x_1..x_m
std::vector<Complex> bell_complete(const std::vector<Complex>& x);
// m-th derivative of f = exp(L) given L' .. L^(m) and f itself
Complex derivative_via_bell(const std::vector<Complex>& L_derivs, const Complex& f_value);

}  // namespace wzforge
