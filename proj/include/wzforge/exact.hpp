#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wzforge {

using BigInt = mpz_class;
using BigRational = mpq_class;

// mpq_class(p, q) does not reduce; use this for ratios
BigRational make_rational(const BigInt& p, const BigInt& q);
BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& q);

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense univariate polynomial over Q; coefficient i multiplies x^i.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(BigRational c);
    explicit UPoly(std::vector<BigRational> coeffs);
    static UPoly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const BigRational& operator[](std::size_t i) const { return c_[i]; }
    BigRational coeff(int i) const;
    const BigRational& lc() const;
    const std::vector<BigRational>& coeffs() const { return c_; }

    UPoly operator-() const;
    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    UPoly& operator*=(const BigRational& s);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const BigRational& s) { return a *= s; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    BigRational eval(const BigRational& x) const;
    // p(a*x + b)
    UPoly compose_affine(const BigRational& a, const BigRational& b) const;
    UPoly shift(const BigRational& s) const { return compose_affine(1, s); }
    UPoly monic() const;
    UPoly derivative() const;
    std::string str(const std::string& var = "x") const;

    static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
    static UPoly gcd(UPoly a, UPoly b);

private:
    void trim();
    std::vector<BigRational> c_;
};

// Polynomial in (n, k) with rational coefficients, stored densely as
// Q[n][k]: coefficient j is a UPoly in n multiplying k^j.
class Polynomial {
public:
    struct Term {
        int en;
        int ek;
        BigRational coeff;
    };

    Polynomial() = default;
    Polynomial(BigRational c);  // NOLINT: implicit constant
    Polynomial(int c) : Polynomial(BigRational(c)) {}  // NOLINT
    explicit Polynomial(std::vector<UPoly> by_k);
    static Polynomial n();
    static Polynomial k();
    static Polynomial from_upoly_n(const UPoly& p);
    static Polynomial from_upoly_k(const UPoly& p);
    static Polynomial from_terms(const std::vector<Term>& terms);
    static Polynomial parse(const std::string& text);

    bool is_zero() const { return c_.empty(); }
    int deg_k() const { return static_cast<int>(c_.size()) - 1; }
    int deg_n() const;
    int total_degree() const;
    bool is_constant() const;
    bool is_n_free() const;
    const UPoly& coeff_k(int j) const;
    const UPoly& lc_k() const;
    const std::vector<UPoly>& by_k() const { return c_; }

    // terms in descending graded-lex order, variable order (n, k)
    std::vector<Term> terms() const;
    Term leading_term() const;
    std::vector<std::string> variables() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const BigRational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const BigRational& s) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    Polynomial mul_n(const UPoly& p) const;
    Polynomial pow(unsigned e) const;

    BigRational eval(const BigRational& n, const BigRational& k) const;
    UPoly subs_n(const BigRational& n) const;  // univariate in k
    UPoly subs_k(const BigRational& k) const;  // univariate in n
    // p(an*n + bn, ak*k + bk)
    Polynomial compose_affine(const BigRational& an, const BigRational& bn,
                              const BigRational& ak, const BigRational& bk) const;
    Polynomial shift_k(const BigRational& s) const { return compose_affine(1, 0, 1, s); }
    Polynomial shift_n(const BigRational& s) const { return compose_affine(1, s, 1, 0); }
    Polynomial reflect_k() const { return compose_affine(1, 0, -1, -1); }
    Polynomial derivative_k() const;

    UPoly content_k() const;  // monic gcd of the k-coefficients
    Polynomial primitive_k() const;
    Polynomial normalized() const;  // grlex leading coefficient 1

    std::string str() const;

private:
    void trim();
    std::vector<UPoly> c_;
};

struct DivRem {
    Polynomial quo;
    Polynomial rem;
    UPoly scale;  // scale * a = quo * b + rem
};

enum class PolyOp { add, sub, mul, divrem, gcd };

// Division in k over Q(n). When lc_k(b) is n-free the scale is 1;
// otherwise a pseudo-division is performed.
DivRem divrem(const Polynomial& a, const Polynomial& b);
DivRem pseudo_divrem(const Polynomial& a, const Polynomial& b);
// a / b where the division is known to be exact in Q[n][k]
Polynomial exact_div(const Polynomial& a, const Polynomial& b);
// gcd over Q[n,k]: gcd of contents times primitive PRS gcd; monic in k
// when the leading k-coefficient is constant, else grlex-monic.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// dispatcher for the PolyOp set; divrem returns {quo, rem}, the others {result, 0}
std::pair<Polynomial, Polynomial> poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

class RationalFunction {
public:
    RationalFunction() : num_(0), den_(1) {}
    RationalFunction(Polynomial num);  // NOLINT
    RationalFunction(BigRational c) : RationalFunction(Polynomial(std::move(c))) {}  // NOLINT
    RationalFunction(int c) : RationalFunction(Polynomial(c)) {}  // NOLINT
    RationalFunction(Polynomial num, Polynomial den);
    static RationalFunction parse(const std::string& text);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    RationalFunction pow(int e) const;

    BigRational eval(const BigRational& n, const BigRational& k) const;
    bool pole_at(const BigRational& n, const BigRational& k) const;
    RationalFunction compose_affine(const BigRational& an, const BigRational& bn,
                                    const BigRational& ak, const BigRational& bk) const;
    RationalFunction shift_k(const BigRational& s) const { return compose_affine(1, 0, 1, s); }
    RationalFunction shift_n(const BigRational& s) const { return compose_affine(1, s, 1, 0); }
    RationalFunction reflect_k() const { return compose_affine(1, 0, -1, -1); }

    std::string str() const;

private:
    Polynomial num_;
    Polynomial den_;
};

RationalFunction ratfunc_normalize(const Polynomial& num, const Polynomial& den);

}  // namespace wzforge
