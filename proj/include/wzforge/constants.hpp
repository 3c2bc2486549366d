#pragma once

#include <string>
#include <vector>

#include "wzforge/jsonio.hpp"
#include "wzforge/special.hpp"

namespace wzforge {

struct ApproxValue {
    Complex value;
    double error_bound = 0.0;
};

// {"re", "im"} as decimal strings with the given significant digits, then error_bound
Json approx_json(const ApproxValue& v, int digits);

// Basic constants at the working precision of the current PrecisionScope,
// memoized per precision.
Real pi();
Real log2_const();
Real euler_gamma();

ApproxValue zeta(int s, const Precision& prec);
// sum_{m >= 0} (a + m)^(-s) for a > 0, s >= 2
ApproxValue hurwitz_zeta(int s, const Real& a, const Precision& prec);
// sum_{k1 > k2 > 0} k1^(-s1) k2^(-s2)
ApproxValue double_zeta(int s1, int s2, const Precision& prec);
ApproxValue dirichlet_L_minus3(int s, const Precision& prec);

enum class AtomKind { Pi, Log2, Zeta, DoubleZeta, LMinus3, I, Sqrt2, Sqrt3 };

struct Atom {
    AtomKind kind;
    std::vector<int> args;  // Pi: {exponent}; Zeta, LMinus3: {s}; DoubleZeta: {s1, s2}
    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct ConstTerm {
    BigRational coeff;
    std::vector<Atom> atoms;  // sorted multiset, at most one Pi atom
};

class ConstantExpr {
public:
    ConstantExpr() = default;
    explicit ConstantExpr(std::vector<ConstTerm> terms);
    static ConstantExpr rational(const BigRational& q);
    static ConstantExpr atom(Atom a);
    // accepts e.g. "1959/2*zeta(6) - 432*zeta(3)^2", "8*pi/(9*sqrt3)", "3*I*pi^3"
    static ConstantExpr parse(const std::string& text);
    static ConstantExpr from_json(const Json& j);
    Json to_json() const;

    const std::vector<ConstTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool has_imaginary() const;

    ConstantExpr operator-() const;
    friend ConstantExpr operator+(const ConstantExpr& a, const ConstantExpr& b);
    friend ConstantExpr operator-(const ConstantExpr& a, const ConstantExpr& b) { return a + (-b); }
    friend ConstantExpr operator*(const ConstantExpr& a, const ConstantExpr& b);
    friend bool operator==(const ConstantExpr& a, const ConstantExpr& b);
    // division by a single monomial built from invertible atoms
    ConstantExpr divide(const ConstantExpr& d) const;

    std::string str() const;

private:
    void normalize();
    std::vector<ConstTerm> terms_;
};

ApproxValue atom_value(const Atom& a, const Precision& prec);
ApproxValue const_expr_eval(const ConstantExpr& e, const Precision& prec);

std::string atom_kind_name(AtomKind k);
AtomKind atom_kind_from_name(const std::string& s);

}  // namespace wzforge
