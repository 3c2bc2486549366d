#include "wzforge/real.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "wzforge/constants.hpp"

namespace wzforge {

namespace {
thread_local mpfr_prec_t g_bits = 128;
}

mpfr_prec_t working_bits() { return g_bits; }

mpfr_prec_t digits_to_bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_bits) { g_bits = bits; }
PrecisionScope::~PrecisionScope() { g_bits = saved_; }

Real::Real(mpfr_prec_t bits, int) { mpfr_init2(v_, bits); }

Real::Real() : Real(g_bits, 0) { mpfr_set_zero(v_, 1); }
Real::Real(long v) : Real(g_bits, 0) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(double v) : Real(g_bits, 0) { mpfr_set_d(v_, v, MPFR_RNDN); }
Real::Real(const BigRational& q) : Real(g_bits, 0) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
Real::Real(const BigInt& z) : Real(g_bits, 0) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }

Real Real::with_bits(mpfr_prec_t bits) {
    Real r(bits, 0);
    mpfr_set_zero(r.v_, 1);
    return r;
}

Real Real::parse(const std::string& s) {
    Real r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) throw MathError("malformed real '" + s + "'");
    return r;
}

Real::Real(const Real& o) : Real(mpfr_get_prec(o.v_), 0) { mpfr_set(v_, o.v_, MPFR_RNDN); }

Real::Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_), 0) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

static void widen(mpfr_ptr a, mpfr_srcptr b) {
    if (mpfr_get_prec(b) > mpfr_get_prec(a)) mpfr_prec_round(a, mpfr_get_prec(b), MPFR_RNDN);
}

Real Real::operator-() const {
    Real r = *this;
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real& Real::operator+=(const Real& o) {
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

double Real::log10_abs() const {
    if (is_zero()) return -HUGE_VAL;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

std::string Real::str(int digits) const {
    if (digits < 1) digits = 1;
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    std::string fmt = "%." + std::to_string(digits - 1) + "Re";
    mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    return std::string(buf.data());
}

Real abs(Real x) {
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    return x;
}

#define WZ_UNARY(name, fn)                         \
    Real name(const Real& x) {                     \
        Real r = Real::with_bits(x.bits());        \
        fn(r.get(), x.get(), MPFR_RNDN);           \
        return r;                                  \
    }

WZ_UNARY(sqrt, mpfr_sqrt)
WZ_UNARY(log, mpfr_log)
WZ_UNARY(exp, mpfr_exp)
WZ_UNARY(sin, mpfr_sin)
WZ_UNARY(cos, mpfr_cos)
#undef WZ_UNARY

Real floor(const Real& x) {
    Real r = Real::with_bits(x.bits());
    mpfr_floor(r.get(), x.get());
    return r;
}

Real pow(const Real& x, long e) {
    Real r = Real::with_bits(x.bits());
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& e) {
    Real r = Real::with_bits(std::max(x.bits(), e.bits()));
    mpfr_pow(r.get(), x.get(), e.get(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real& x, long e) {
    Real r = x;
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    if (o.im.is_zero()) return *this *= o.re;
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
}

Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string Complex::str(int digits) const {
    std::ostringstream os;
    os << re.str(digits);
    if (!im.is_zero()) os << (im.sign() < 0 ? " - " : " + ") << abs(im).str(digits) << "i";
    return os.str();
}

Real abs(const Complex& z) {
    if (z.im.is_zero()) return abs(z.re);
    return sqrt(z.re * z.re + z.im * z.im);
}

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    if (z.im.is_zero()) return Complex(m);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex unit_phase(const BigRational& t) {
    // reduce t modulo 2
    BigInt num = t.get_num(), den = t.get_den();
    BigInt two_den = 2 * den;
    BigInt r = num % two_den;
    if (r < 0) r += two_den;
    BigRational tt = make_rational(r, den);
    if (tt == 0) return Complex(Real(1));
    if (tt == 1) return Complex(Real(-1));
    if (tt == make_rational(1, 2)) return {Real(0), Real(1)};
    if (tt == make_rational(3, 2)) return {Real(0), Real(-1)};
    Real a = pi() * Real(tt);
    return {cos(a), sin(a)};
}

Complex unit_phase(const Real& t) {
    if (t.is_integer() || (ldexp(t, 1)).is_integer()) {
        Real two_t = ldexp(t, 1);
        long q = mpfr_get_si(two_t.get(), MPFR_RNDN);
        return unit_phase(make_rational(q, 2));
    }
    Real a = pi() * t;
    return {cos(a), sin(a)};
}

}  // namespace wzforge
