#pragma once

#include <mpfr.h>

#include <string>

#include "wzforge/exact.hpp"

namespace wzforge {

// Working precision in bits for newly constructed Reals on this thread.
mpfr_prec_t working_bits();
mpfr_prec_t digits_to_bits(int digits);

class PrecisionScope {
public:
    explicit PrecisionScope(mpfr_prec_t bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

class Real {
public:
    Real();
    Real(long v);  // NOLINT
    Real(int v) : Real(static_cast<long>(v)) {}  // NOLINT
    explicit Real(double v);
    explicit Real(const BigRational& q);
    explicit Real(const BigInt& z);
    static Real with_bits(mpfr_prec_t bits);
    static Real parse(const std::string& s);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    bool is_integer() const { return mpfr_integer_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    // log10 of |x| as a double; -inf for zero
    double log10_abs() const;
    // decimal scientific notation with the given number of significant digits
    std::string str(int digits) const;

private:
    explicit Real(mpfr_prec_t bits, int);
    mpfr_t v_;
};

Real abs(Real x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long e);
Real pow(const Real& x, const Real& e);
Real floor(const Real& x);
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex operator-() const { return {-re, -im}; }
    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Real& s);
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator/(const Complex& a, const Complex& b);
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::string str(int digits) const;
};

Real abs(const Complex& z);
Complex exp(const Complex& z);
// e^{i pi t} with exact values at integer and half-integer multiples
Complex unit_phase(const BigRational& t);
Complex unit_phase(const Real& t);

}  // namespace wzforge
