#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wzforge/constants.hpp"
#include "wzforge/exact.hpp"
#include "wzforge/jsonio.hpp"
#include "wzforge/special.hpp"

namespace wzforge {

using ParamCoeffs = std::map<std::string, long>;
using ParamValues = std::map<std::string, Real>;

// Gamma(cn*n + ck*k + sum params + offset)^exponent
struct GammaFactor {
    long cn = 0;
    long ck = 0;
    ParamCoeffs params;
    BigRational offset;
    int exponent = 1;

    friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

// base^(exp_n*n + exp_k*k + sum params); base > 0 after canonicalization
struct GeometricFactor {
    BigRational base;
    long exp_n = 0;
    long exp_k = 0;
    ParamCoeffs params;

    friend bool operator==(const GeometricFactor&, const GeometricFactor&) = default;
};

enum class Var { n, k };

struct Domain {
    long n0 = 0;
    long k0 = 0;
    friend bool operator==(const Domain&, const Domain&) = default;
};

struct HyperTerm {
    RationalFunction prefactor = RationalFunction(1);
    int sign_n = 0;
    int sign_k = 0;
    // e^{pi i phase * var}; the schema's "x" is read as k
    BigRational phase;
    Var phase_var = Var::k;
    std::vector<GeometricFactor> geometric;
    std::vector<GammaFactor> gammas;
    std::vector<std::string> params;
    Domain domain;

    static HyperTerm constant(const BigRational& c);
    // sorts and merges factors, folds negative bases into the sign bits
    void canonicalize();
    bool is_zero() const { return prefactor.is_zero(); }
    HyperTerm scaled(const RationalFunction& r) const;

    friend bool operator==(const HyperTerm& a, const HyperTerm& b);
};

struct TermValue {
    Complex value;
    double error_bound = 0.0;
};

HyperTerm parse_term(const Json& doc);
HyperTerm parse_term_text(const std::string& text);
Json serialize_term(const HyperTerm& t);

RationalFunction shift_quotient(const HyperTerm& t, Var var);

// Exact points. Integer and half-integer Gamma arguments are evaluated in
// closed form; nonpositive integer Gamma arguments are resolved by moving the
// pole into the prefactor before evaluation.
TermValue eval_term(const HyperTerm& t, const BigRational& n, const BigRational& k, const Precision& prec);
inline TermValue eval_term(const HyperTerm& t, long n, long k, const Precision& prec) {
    return eval_term(t, BigRational(n), BigRational(k), prec);
}
// High-precision points, optionally with nonzero parameter values.
TermValue eval_term(const HyperTerm& t, const Real& n, const Real& k, const Precision& prec,
                    const ParamValues& params = {});

// t(n, -k-1). Integer poles that do not cancel are an error unless
// regularize is set; then the result is lim eps^b t(n, -k-1-eps) with b the
// net pole order, which is again a WZ pair when t has a mate.
HyperTerm reflect_k(const HyperTerm& t, bool regularize = false);

// differentiation variable: "n", "k", or a parameter name
struct LogDerivativeAt {
    std::vector<Complex> derivs;  // L', ..., L^(m)
    TermValue value;              // t itself at the point
};
LogDerivativeAt param_log_derivative(const HyperTerm& t, const std::string& var, int order, const Real& n,
                                     const Real& k, const Precision& prec);
// m-th derivative of t in var at the point, via complete Bell polynomials
TermValue derivative_value(const HyperTerm& t, const std::string& var, int order, const Real& n, const Real& k,
                           const Precision& prec);

// b / a as a rational function when the Gamma, sign, phase and geometric
// parts agree up to integer Gamma shifts; parameters are taken at the origin
std::optional<RationalFunction> rational_ratio(const HyperTerm& b, const HyperTerm& a);

}  // namespace wzforge
